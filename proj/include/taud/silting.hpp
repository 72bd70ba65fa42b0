#ifndef TAUD_SILTING_HPP
#define TAUD_SILTING_HPP

// (d+1)-term complexes of projectives attached to C-pairs, Hom spaces in the
// homotopy category K^b(proj Lambda), truncated projective resolutions, P-sets
// and reducing sets.
//
// Every Hom space between indecomposable projectives of Lambda(n,l) is at most
// one-dimensional, spanned by the canonical map.  A morphism between direct sums
// of indecomposable projectives is therefore a scalar matrix, with entries
// forced to zero where the Hom space vanishes, and composition is matrix
// multiplication followed by zeroing the entries whose Hom space vanishes.
// All arithmetic is exact over the rationals; the dimensions computed here do
// not depend on the characteristic of the field.

#include "algebra.hpp"
#include "linalg.hpp"
#include "rigid.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace taud {

// ---------------------------------------------------------------------------
// Complexes of projectives
// ---------------------------------------------------------------------------

/// Whether Hom(P(c), P(r)) != 0 in Lambda(n,l).
inline bool proj_hom(const AlgebraContext &ctx, int c, int r) {
  return hom_dim(ctx.projective(c), ctx.projective(r)) != 0;
}

/// Bounded complex of projectives with cohomological grading.
struct ProjComplex {
  /// terms[k]: indices of the indecomposable projective summands in degree k.
  std::map<int, std::vector<int>> terms;
  /// diff[k]: scalar matrix of the differential from degree k to k+1 (rows index
  /// terms[k+1], columns index terms[k]).  Missing entries mean zero.
  std::map<int, Matrix> diff;

  const std::vector<int> &at(int k) const {
    static const std::vector<int> empty;
    auto it = terms.find(k);
    return it == terms.end() ? empty : it->second;
  }
  /// Differential from degree k, as a (|terms[k+1]| x |terms[k]|) matrix.
  Matrix differential(int k) const {
    auto it = diff.find(k);
    if (it != diff.end()) return it->second;
    return Matrix(at(k + 1).size(), at(k).size());
  }
  std::size_t summand_count() const {
    std::size_t c = 0;
    for (const auto &kv : terms) c += kv.second.size();
    return c;
  }
  std::optional<std::pair<int, int>> degree_range() const {
    std::optional<std::pair<int, int>> out;
    for (const auto &kv : terms) {
      if (kv.second.empty()) continue;
      if (!out) out = std::make_pair(kv.first, kv.first);
      out->first = std::min(out->first, kv.first);
      out->second = std::max(out->second, kv.first);
    }
    return out;
  }
};

/// Composite g o f of scalar matrices between sums of projectives (src -> mid -> dst),
/// zeroing entries whose Hom space vanishes.
inline Matrix compose_proj(const AlgebraContext &ctx, const Matrix &g, const Matrix &f, const std::vector<int> &src,
                           const std::vector<int> &dst) {
  Matrix h = g * f;
  for (std::size_t r = 0; r < dst.size(); ++r)
    for (std::size_t c = 0; c < src.size(); ++c)
      if (!proj_hom(ctx, src[c], dst[r])) h(r, c) = 0;
  return h;
}

/// Checks that every differential entry lives on a nonzero Hom space and that
/// d o d = 0; throws ConsistencyError otherwise.
inline void check_complex(const AlgebraContext &ctx, const ProjComplex &c) {
  for (const auto &[k, m] : c.diff) {
    const auto &src = c.at(k), &dst = c.at(k + 1);
    if (m.rows() != dst.size() || m.cols() != src.size())
      throw ConsistencyError("differential in degree " + std::to_string(k) + " has the wrong shape");
    for (std::size_t r = 0; r < dst.size(); ++r)
      for (std::size_t col = 0; col < src.size(); ++col)
        if (!is_zero(m(r, col)) && !proj_hom(ctx, src[col], dst[r]))
          throw ConsistencyError("differential entry on a zero Hom space in degree " + std::to_string(k));
    if (c.diff.count(k + 1) && !compose_proj(ctx, c.differential(k + 1), m, src, c.at(k + 2)).is_zero())
      throw ConsistencyError("d o d != 0 at degree " + std::to_string(k));
  }
}

/// Direct sum of complexes (summands concatenated degreewise in argument order).
inline ProjComplex direct_sum(const std::vector<ProjComplex> &parts) {
  ProjComplex out;
  std::set<int> degrees;
  for (const auto &c : parts)
    for (const auto &kv : c.terms) degrees.insert(kv.first);
  for (int k : degrees)
    for (const auto &c : parts) {
      const auto &t = c.at(k);
      auto &dst = out.terms[k];
      dst.insert(dst.end(), t.begin(), t.end());
    }
  for (int k : degrees) {
    if (!degrees.count(k + 1)) continue;
    Matrix m(out.at(k + 1).size(), out.at(k).size());
    std::size_t r0 = 0, c0 = 0;
    for (const auto &c : parts) {
      const Matrix block = c.differential(k);
      for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t col = 0; col < block.cols(); ++col) m(r0 + r, c0 + col) = block(r, col);
      r0 += c.at(k + 1).size();
      c0 += c.at(k).size();
    }
    out.diff[k] = std::move(m);
  }
  return out;
}

/// Stalk complex of P(B) in the given degree.
inline ProjComplex stalk(const std::vector<int> &indices, int degree) {
  ProjComplex c;
  if (!indices.empty()) c.terms[degree] = indices;
  return c;
}

// ---------------------------------------------------------------------------
// Truncated resolutions and P-sets
// ---------------------------------------------------------------------------

/// Indices of the projectives in the truncated minimal projective resolution of
/// a module, stored increasingly (x_d < ... < x_1 < x_0, restricted to [1,n]).
struct PSet {
  IntervalModule module;
  std::vector<int> indices;
};

/// Closed-form index of the degree -j term: b - (j/2) l for even j and
/// a - ((j-1)/2) l - 1 for odd j; meaningful for nonprojective X while it is >= 1.
inline int resolution_index_formula(const AlgebraContext &ctx, const IntervalModule &x, int j) {
  return (j % 2 == 0) ? x.b - (j / 2) * ctx.l : x.a - ((j - 1) / 2) * ctx.l - 1;
}

/// The complex sigma_{>= -d} P(X) with canonical differentials, and its P-set.
/// The terms come from iterated syzygies and are checked against the closed
/// form; a projective X yields the stalk complex P(top X) in degree 0.
inline std::pair<ProjComplex, PSet> truncated_resolution(const AlgebraContext &ctx, const IntervalModule &x) {
  if (!ctx.valid(x)) throw std::invalid_argument(to_string(x) + " is not a module of the algebra");
  std::vector<int> tops = resolution_tops(ctx, x);
  if (tops.size() > static_cast<std::size_t>(ctx.d) + 1) tops.resize(ctx.d + 1);
  if (!ctx.is_projective(x)) {
    for (int j = 0; j <= ctx.d; ++j) {
      const int f = resolution_index_formula(ctx, x, j);
      const bool present = j < static_cast<int>(tops.size());
      if (present ? tops[j] != f : f >= 1)
        throw ConsistencyError("truncated resolution of " + to_string(x) + " disagrees with the closed form at degree -" +
                               std::to_string(j));
    }
  }
  ProjComplex c;
  for (std::size_t j = 0; j < tops.size(); ++j) c.terms[-static_cast<int>(j)] = {tops[j]};
  for (std::size_t j = 1; j < tops.size(); ++j) {
    Matrix m(1, 1);
    m(0, 0) = 1;
    c.diff[-static_cast<int>(j)] = m;
  }
  PSet ps{x, tops};
  std::sort(ps.indices.begin(), ps.indices.end());
  return {c, ps};
}

inline PSet p_set(const AlgebraContext &ctx, const IntervalModule &x) { return truncated_resolution(ctx, x).second; }

/// The complex P[d] + sigma_{>= -d} P(M) of a C-pair: P(B) in degree -d and the
/// truncated resolutions of the summands of M (in the pair's order).
inline ProjComplex build_pair_complex(const AlgebraContext &ctx, const CPair &pair) {
  std::vector<ProjComplex> parts;
  for (const auto &m : pair.rigid_part) {
    if (!ctx.in_cluster(m)) throw std::invalid_argument(to_string(m) + " is not in C");
    parts.push_back(truncated_resolution(ctx, m).first);
  }
  parts.push_back(stalk(pair.support_part, -ctx.d));
  return direct_sum(parts);
}

// ---------------------------------------------------------------------------
// Hom in the homotopy category
// ---------------------------------------------------------------------------

namespace detail {

/// Coordinates of the degree-s part of the Hom complex Hom(C1, C2): one per
/// (k, source summand in C1^k, target summand in C2^{k+s}) with nonzero Hom.
struct HomCoord {
  int k;
  std::size_t src;
  std::size_t dst;
  friend auto operator<=>(const HomCoord &, const HomCoord &) = default;
};

inline std::vector<HomCoord> hom_coords(const AlgebraContext &ctx, const ProjComplex &c1, const ProjComplex &c2,
                                        int s) {
  std::vector<HomCoord> out;
  for (const auto &[k, src] : c1.terms) {
    const auto &dst = c2.at(k + s);
    for (std::size_t i = 0; i < src.size(); ++i)
      for (std::size_t j = 0; j < dst.size(); ++j)
        if (proj_hom(ctx, src[i], dst[j])) out.push_back({k, i, j});
  }
  return out;
}

/// Matrix of the Hom-complex differential delta(f) = d2 f - (-1)^s f d1 from
/// degree s to degree s+1, in the coordinates of hom_coords.
inline Matrix hom_differential(const AlgebraContext &ctx, const ProjComplex &c1, const ProjComplex &c2, int s) {
  const auto cols = hom_coords(ctx, c1, c2, s);
  const auto rows = hom_coords(ctx, c1, c2, s + 1);
  std::map<HomCoord, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
  Matrix m(rows.size(), cols.size());
  const Rational sign = (s % 2 == 0) ? Rational(-1) : Rational(1);
  for (std::size_t col = 0; col < cols.size(); ++col) {
    const auto [k, i, j] = cols[col];
    // d2 o e: C1^k -> C2^{k+s+1}.
    const Matrix d2 = c2.differential(k + s);
    for (std::size_t r = 0; r < d2.rows(); ++r) {
      if (is_zero(d2(r, j))) continue;
      auto it = row_of.find({k, i, r});
      if (it != row_of.end()) m(it->second, col) += d2(r, j);
    }
    // -(-1)^s e o d1: C1^{k-1} -> C2^{k+s}.
    const Matrix d1 = c1.differential(k - 1);
    for (std::size_t c = 0; c < d1.cols(); ++c) {
      if (is_zero(d1(i, c))) continue;
      auto it = row_of.find({k - 1, c, j});
      if (it != row_of.end()) m(it->second, col) += sign * d1(i, c);
    }
  }
  return m;
}

} // namespace detail

/// dim Hom_{K^b(proj)}(C1, C2[shift]): chain maps modulo null-homotopic maps, i.e.
/// the degree-`shift` cohomology of the Hom complex.
inline std::size_t homotopy_hom_dim(const AlgebraContext &ctx, const ProjComplex &c1, const ProjComplex &c2,
                                    int shift) {
  const std::size_t dim = detail::hom_coords(ctx, c1, c2, shift).size();
  if (dim == 0) return 0;
  const std::size_t out_rank = rank(detail::hom_differential(ctx, c1, c2, shift));
  const std::size_t in_rank = rank(detail::hom_differential(ctx, c1, c2, shift - 1));
  return dim - out_rank - in_rank;
}

/// Whether Hom(C, C[i]) = 0 for i = 1..d.  For complexes supported in [-d, 0]
/// the shifts beyond d vanish for degree reasons.
inline bool is_presilting(const AlgebraContext &ctx, const ProjComplex &c) {
  for (int i = 1; i <= ctx.d; ++i)
    if (homotopy_hom_dim(ctx, c, c, i) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Reducing sets
// ---------------------------------------------------------------------------

/// A finite set Gamma with a family Psi of subsets.
struct ReducingProblem {
  std::vector<int> gamma;            ///< sorted, distinct
  std::vector<std::vector<int>> psi; ///< each sorted; duplicates allowed
};

struct ReducingResult {
  bool reducing = false;
  std::vector<int> order; ///< witness ordering alpha_0, ..., alpha_k when reducing
};

/// Searches for an ordering of Gamma in which each element is, at its turn, the
/// only remaining element of some member of Psi (earlier elements removed).
/// Depth-first search with memoisation of dead ends.
inline ReducingResult is_reducing(const ReducingProblem &problem) {
  std::vector<int> gamma = problem.gamma;
  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
  const std::size_t k = gamma.size();
  if (k > 63) throw std::invalid_argument("is_reducing: Gamma too large");
  auto pos = [&](int x) -> std::optional<std::size_t> {
    auto it = std::lower_bound(gamma.begin(), gamma.end(), x);
    if (it == gamma.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - gamma.begin());
  };
  std::vector<std::uint64_t> sets;
  for (const auto &s : problem.psi) {
    std::uint64_t m = 0;
    for (int x : s) {
      auto p = pos(x);
      if (!p) throw std::invalid_argument("is_reducing: member of Psi is not a subset of Gamma");
      m |= std::uint64_t{1} << *p;
    }
    sets.push_back(m);
  }
  const std::uint64_t full = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  std::set<std::uint64_t> dead;
  std::vector<int> order;
  std::function<bool(std::uint64_t)> dfs = [&](std::uint64_t chosen) -> bool {
    if (chosen == full) return true;
    if (dead.count(chosen)) return false;
    std::uint64_t available = 0;
    for (auto s : sets) {
      const std::uint64_t rest = s & ~chosen;
      if (rest != 0 && (rest & (rest - 1)) == 0) available |= rest;
    }
    for (std::size_t b = 0; b < k; ++b) {
      if (!((available >> b) & 1U)) continue;
      order.push_back(gamma[b]);
      if (dfs(chosen | (std::uint64_t{1} << b))) return true;
      order.pop_back();
    }
    dead.insert(chosen);
    return false;
  };
  ReducingResult res;
  res.reducing = dfs(0);
  if (res.reducing) res.order = order;
  return res;
}

/// P_Gamma(M) = { P(X) cap Gamma : X an indecomposable summand of M }.
inline std::vector<std::vector<int>> p_sets_in(const AlgebraContext &ctx, const std::vector<IntervalModule> &summands,
                                               const std::vector<int> &gamma) {
  std::vector<std::vector<int>> out;
  for (const auto &x : summands) {
    std::vector<int> s;
    for (int i : p_set(ctx, x).indices)
      if (std::binary_search(gamma.begin(), gamma.end(), i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Presilting and silting status of C-pairs
// ---------------------------------------------------------------------------

/// Gamma = [1,n] minus (R cup B) and Psi = P_Gamma of the nonprojective summands of M.
inline ReducingProblem global_reducing_problem(const AlgebraContext &ctx, const CPair &pair) {
  std::set<int> used(pair.support_part.begin(), pair.support_part.end());
  std::vector<IntervalModule> nonproj;
  for (const auto &m : pair.rigid_part) {
    if (ctx.is_projective(m)) used.insert(m.b);
    else nonproj.push_back(m);
  }
  ReducingProblem pb;
  for (int k = 1; k <= ctx.n; ++k)
    if (!used.count(k)) pb.gamma.push_back(k);
  pb.psi = p_sets_in(ctx, nonproj, pb.gamma);
  return pb;
}

struct SiltingStatus {
  bool presilting = false;
  bool silting = false;
  ReducingProblem problem;
  std::optional<std::vector<int>> generation_witness; ///< reducing order when silting
};

/// Presilting via Hom vanishing in the homotopy category (cross-checked against
/// the combinatorial rigidity test; throws ConsistencyError on disagreement);
/// silting as presilting together with a reducing set for Gamma.
inline SiltingStatus silting_status(const AlgebraContext &ctx, const CPair &pair) {
  SiltingStatus st;
  const ProjComplex c = build_pair_complex(ctx, pair);
  check_complex(ctx, c);
  st.presilting = is_presilting(ctx, c);
  if (st.presilting != is_rigid_pair(ctx, pair).rigid)
    throw ConsistencyError("presilting test disagrees with the rigidity test");
  st.problem = global_reducing_problem(ctx, pair);
  if (st.presilting) {
    const ReducingResult r = is_reducing(st.problem);
    st.silting = r.reducing;
    if (r.reducing) st.generation_witness = r.order;
  }
  return st;
}

/// One run [i, i+k] of nonzero diagonals with its local reducing problem
/// Gamma_T = Xi(i, i+k) minus (R cup B), Psi = P_{Gamma_T} of the run's summands.
struct LocalReducing {
  Span run;
  ReducingProblem problem;
  ReducingResult result;
};

inline std::vector<LocalReducing> local_reducing_checks(const AlgebraContext &ctx, const CPair &pair) {
  const PairState st = to_state(ctx, pair);
  const MarkerIntervals mk = markers(ctx, st);
  std::vector<LocalReducing> out;
  for (std::size_t t = 0; t < mk.runs.size(); ++t) {
    LocalReducing lr;
    lr.run = mk.runs[t];
    for (int k = std::max(1, mk.xi[t].lo); k <= std::min(ctx.n, mk.xi[t].hi); ++k)
      if (!has(st.R, k) && !has(st.B, k)) lr.problem.gamma.push_back(k);
    std::vector<IntervalModule> summands;
    for (int i = lr.run.lo; i <= lr.run.hi; ++i)
      for (int x = 1; x <= ctx.l - 1; ++x)
        if (st.X[i] & bit(x)) summands.push_back(ctx.diagonal_module(i, x));
    lr.problem.psi = p_sets_in(ctx, summands, lr.problem.gamma);
    lr.result = is_reducing(lr.problem);
    out.push_back(std::move(lr));
  }
  return out;
}

} // namespace taud

#endif // TAUD_SILTING_HPP
