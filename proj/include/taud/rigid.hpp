#ifndef TAUD_RIGID_HPP
#define TAUD_RIGID_HPP

// C-pairs (M,P), their diagonal profiles and marker intervals, the combinatorial
// rigidity criterion, admissible configurations, well-configured pairs and the
// enumeration of tau_d-rigid / summand-maximal pairs.
//
// Internally a pair is a PairState: bitmasks R (projective summands of M) and
// B (indices of P), plus one bitmask of lengths per diagonal.

#include "algebra.hpp"

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace taud {

using Mask = std::uint64_t;
inline constexpr int max_vertices = 63;

inline Mask bit(int k) { return Mask{1} << (k - 1); }
inline bool has(Mask m, int k) { return k >= 1 && k <= 64 && ((m >> (k - 1)) & 1U); }
inline int popcount(Mask m) { return __builtin_popcountll(m); }

/// Closed integer interval [lo,hi]; empty when lo > hi.
struct Span {
  int lo = 1;
  int hi = 0;

  bool empty() const { return lo > hi; }
  int size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(int k) const { return lo <= k && k <= hi; }

  friend bool operator==(const Span &a, const Span &b) {
    return (a.empty() && b.empty()) || (a.lo == b.lo && a.hi == b.hi);
  }
};

/// Bitmask of the indices of `s` clipped to [1,n].
inline Mask span_mask(const Span &s, int n) {
  Mask m = 0;
  for (int k = std::max(1, s.lo); k <= std::min(n, s.hi); ++k) m |= bit(k);
  return m;
}

inline std::vector<int> mask_to_vector(Mask m) {
  std::vector<int> out;
  for (int k = 1; k <= 64; ++k)
    if (has(m, k)) out.push_back(k);
  return out;
}

/// A basic pair (M, P(B)) with M in C, given by its indecomposable summands.
struct CPair {
  std::vector<IntervalModule> rigid_part; ///< summands of M
  std::vector<int> support_part;          ///< B, with P = P(B)

  void normalize() {
    std::sort(rigid_part.begin(), rigid_part.end());
    rigid_part.erase(std::unique(rigid_part.begin(), rigid_part.end()), rigid_part.end());
    std::sort(support_part.begin(), support_part.end());
    support_part.erase(std::unique(support_part.begin(), support_part.end()), support_part.end());
  }
  std::size_t summand_count() const { return rigid_part.size() + support_part.size(); }

  friend bool operator==(const CPair &, const CPair &) = default;
};

/// Compact internal form of a C-pair.
struct PairState {
  Mask R = 0;
  Mask B = 0;
  std::vector<Mask> X;           ///< X[i]: bit (x-1) set iff the length-x module of D_i is in M

  PairState() = default;
  explicit PairState(const AlgebraContext &ctx) : X(ctx.p + 2, 0) {}

  int diagonal_summands() const {
    int c = 0;
    for (auto x : X) c += popcount(x);
    return c;
  }
  int summand_count() const { return popcount(R) + popcount(B) + diagonal_summands(); }

  friend bool operator==(const PairState &, const PairState &) = default;
};

/// Converts a CPair to its internal form; throws std::invalid_argument when a
/// summand is not in C, an index is out of range or the pair is not basic.
inline PairState to_state(const AlgebraContext &ctx, const CPair &pair) {
  if (ctx.n > max_vertices) throw std::invalid_argument("n exceeds the supported maximum");
  PairState st(ctx);
  for (const auto &m : pair.rigid_part) {
    if (!ctx.in_cluster(m)) throw std::invalid_argument(to_string(m) + " is not in C");
    if (ctx.is_projective(m)) {
      st.R |= bit(m.b);
    } else {
      const auto pos = ctx.diagonal_of(m);
      st.X[pos->diag_index] |= bit(pos->length);
    }
  }
  for (int b : pair.support_part) {
    if (b < 1 || b > ctx.n) throw std::invalid_argument("support index " + std::to_string(b) + " out of range");
    st.B |= bit(b);
  }
  if (st.R & st.B) throw std::invalid_argument("pair is not basic: R and B intersect");
  return st;
}

inline CPair to_cpair(const AlgebraContext &ctx, const PairState &st) {
  CPair pair;
  for (int k : mask_to_vector(st.R)) pair.rigid_part.push_back(ctx.projective(k));
  for (int i = 2; i <= ctx.p; ++i)
    for (int x = 1; x <= ctx.l - 1; ++x)
      if (st.X[i] & bit(x)) pair.rigid_part.push_back(ctx.diagonal_module(i, x));
  pair.support_part = mask_to_vector(st.B);
  pair.normalize();
  return pair;
}

/// Canonical order: per-diagonal length lists (i = 2..p), then R, then B, each lexicographic.
inline std::vector<std::vector<int>> canonical_key(const AlgebraContext &ctx, const PairState &st) {
  std::vector<std::vector<int>> key;
  for (int i = 2; i <= ctx.p; ++i) {
    std::vector<int> lens;
    for (int x = 1; x <= ctx.l - 1; ++x)
      if (st.X[i] & bit(x)) lens.push_back(x);
    key.push_back(std::move(lens));
  }
  key.push_back(mask_to_vector(st.R));
  key.push_back(mask_to_vector(st.B));
  return key;
}

inline void sort_canonical(const AlgebraContext &ctx, std::vector<PairState> &pairs) {
  std::vector<std::pair<std::vector<std::vector<int>>, std::size_t>> keyed;
  keyed.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) keyed.emplace_back(canonical_key(ctx, pairs[i]), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<PairState> out;
  out.reserve(pairs.size());
  for (const auto &kv : keyed) out.push_back(pairs[kv.second]);
  pairs = std::move(out);
}

// ---------------------------------------------------------------------------
// Profile and marker intervals

/// Per-diagonal statistics; out-of-range or empty diagonals read as l_i = l, n_i = m_i = 0.
struct DiagonalProfile {
  int l = 0;
  int p = 0;
  std::vector<Mask> lengths;          ///< X_i as bitmasks, i in [0, p+1]

  bool nonzero(int i) const { return i >= 2 && i <= p && lengths[i] != 0; }
  int min_len(int i) const { return nonzero(i) ? __builtin_ctzll(lengths[i]) + 1 : l; }
  int max_len(int i) const { return nonzero(i) ? 64 - __builtin_clzll(lengths[i]) : 0; }
  int count(int i) const { return nonzero(i) ? popcount(lengths[i]) : 0; }
  bool full(int i) const { return count(i) == max_len(i) - min_len(i) + 1; }
};

inline DiagonalProfile profile(const AlgebraContext &ctx, const PairState &st) {
  DiagonalProfile prof;
  prof.l = ctx.l;
  prof.p = ctx.p;
  prof.lengths = st.X;
  prof.lengths.resize(ctx.p + 2, 0);
  prof.lengths[0] = prof.lengths[1] = 0;
  return prof;
}

/// Profile together with the non-diagonal component (R,B).
struct ProfileResult {
  DiagonalProfile prof;
  std::vector<int> R;
  std::vector<int> B;
};

inline ProfileResult profile(const AlgebraContext &ctx, const CPair &pair) {
  const PairState st = to_state(ctx, pair);
  return {profile(ctx, st), mask_to_vector(st.R), mask_to_vector(st.B)};
}

/// Marker intervals of a pair: forbidden-index intervals per diagonal, the
/// diagonal partition into runs, the neighbourhood of each run and the gaps.
struct MarkerIntervals {
  std::vector<Span> notred;  ///< indices that may not lie in R, per diagonal i in [2,p]
  std::vector<Span> notblue; ///< indices that may not lie in B, per diagonal
  std::vector<Span> zone;    ///< neighbourhood minus the two forbidden intervals, per diagonal
  std::vector<Span> runs;    ///< maximal runs [i, i+k] of nonzero diagonals (T_1..T_k)
  std::vector<Span> xi;      ///< neighbourhood interval of each run
  std::vector<Span> theta;   ///< gaps Theta_0..Theta_k
  Mask union_notred = 0;
  Mask union_notblue = 0;
};

inline Span notblue_of(const AlgebraContext &ctx, const DiagonalProfile &pr, int i) {
  const int si = ctx.s_at(i), ni = pr.max_len(i);
  return (i % 2 != 0) ? Span{si, si + ni - 1} : Span{si - ni + 1, si};
}

inline Span notred_of(const AlgebraContext &ctx, const DiagonalProfile &pr, int i) {
  const int sp = ctx.s_at(i - 1), gap = ctx.l - pr.min_len(i);
  return (i % 2 != 0) ? Span{sp - gap + 1, sp} : Span{sp, sp + gap - 1};
}

/// Neighbourhood of a run [i, i+k]: from the start of the first forbidden-R
/// interval to the end of the last forbidden-B interval.
inline Span xi_of(const AlgebraContext &ctx, const DiagonalProfile &pr, int i, int j) {
  const int start = (i % 2 != 0) ? ctx.s_at(i - 1) - (ctx.l - pr.min_len(i)) + 1 : ctx.s_at(i - 1);
  const int end = (j % 2 != 0) ? ctx.s_at(j) + pr.max_len(j) - 1 : ctx.s_at(j);
  return {start, end};
}

inline Span zone_of(const AlgebraContext &ctx, const DiagonalProfile &pr, int i) {
  if (i % 2 != 0) return {ctx.s_at(i - 1) + 1, ctx.s_at(i) - 1};
  return {ctx.s_at(i - 1) + (ctx.l - pr.min_len(i)), ctx.s_at(i) - pr.max_len(i)};
}

inline MarkerIntervals markers(const AlgebraContext &ctx, const DiagonalProfile &pr) {
  MarkerIntervals mk;
  mk.notred.assign(ctx.p + 1, Span{});
  mk.notblue.assign(ctx.p + 1, Span{});
  mk.zone.assign(ctx.p + 1, Span{});
  for (int i = 2; i <= ctx.p; ++i) {
    mk.notred[i] = notred_of(ctx, pr, i);
    mk.notblue[i] = notblue_of(ctx, pr, i);
    mk.zone[i] = zone_of(ctx, pr, i);
    mk.union_notred |= span_mask(mk.notred[i], ctx.n);
    mk.union_notblue |= span_mask(mk.notblue[i], ctx.n);
  }
  for (int i = 2; i <= ctx.p; ++i) {
    if (!pr.nonzero(i) || pr.nonzero(i - 1)) continue;
    int j = i;
    while (pr.nonzero(j + 1)) ++j;
    mk.runs.push_back({i, j});
    mk.xi.push_back(xi_of(ctx, pr, i, j));
  }
  if (mk.runs.empty()) {
    mk.theta.push_back({1, ctx.n});
  } else {
    mk.theta.push_back({1, mk.xi.front().lo - 1});
    for (std::size_t j = 0; j + 1 < mk.xi.size(); ++j) mk.theta.push_back({mk.xi[j].hi + 1, mk.xi[j + 1].lo - 1});
    mk.theta.push_back({mk.xi.back().hi + 1, ctx.n});
  }
  return mk;
}

inline MarkerIntervals markers(const AlgebraContext &ctx, const PairState &st) {
  return markers(ctx, profile(ctx, st));
}

inline MarkerIntervals markers(const AlgebraContext &ctx, const CPair &pair) {
  return markers(ctx, to_state(ctx, pair));
}

// ---------------------------------------------------------------------------
// Interval kinds

/// Classification of an index interval against (R,B).  Several flags can be set
/// only for the empty interval, which is both support and rigid.
struct IntervalKind {
  bool support = false;
  bool rigid = false;
  std::optional<int> support_to_rigid; ///< split point x
  std::optional<int> rigid_to_support; ///< split point x

  bool other() const { return !support && !rigid && !support_to_rigid && !rigid_to_support; }
};

inline IntervalKind interval_kind(const AlgebraContext &ctx, const PairState &st, const MarkerIntervals &mk,
                                  const Span &iv) {
  IntervalKind kind;
  const Mask I = span_mask(iv, ctx.n);
  const Mask RI = st.R & I, BI = st.B & I;
  kind.support = RI == 0 && BI == (I & ~mk.union_notblue);
  kind.rigid = BI == 0 && RI == (I & ~mk.union_notred);
  if (I == 0) return kind;
  auto below = [&](int x) { return x >= 64 ? I : (I & ((Mask{1} << std::max(0, x)) - 1)); }; // y <= x
  if (BI != 0 && RI != 0) {
    const int x = 64 - __builtin_clzll(BI); // max(B cap I)
    if (BI == below(x) && RI == (I & ~below(x + ctx.l - 1))) kind.support_to_rigid = x;
  }
  if (RI != 0 && BI != 0) {
    const int x = 64 - __builtin_clzll(RI); // max(R cap I)
    if (RI == below(x) && BI == (I & ~below(x))) kind.rigid_to_support = x;
  }
  return kind;
}

// ---------------------------------------------------------------------------
// Rigidity

struct Violation {
  std::string clause; ///< (a), (b1), (b2) or (b3)
  std::string detail;
};

struct RigidityReport {
  bool rigid = true;
  std::vector<Violation> violations;
  explicit operator bool() const { return rigid; }
};

/// Combinatorial rigidity test on (R,B) and the diagonal profile.  When
/// `stop_early` is set the report holds at most one violation.
inline RigidityReport is_rigid_pair(const AlgebraContext &ctx, const PairState &st, bool stop_early = false) {
  RigidityReport rep;
  auto fail = [&](const char *clause, std::string detail) {
    rep.rigid = false;
    rep.violations.push_back({clause, std::move(detail)});
    return stop_early;
  };
  const int n = ctx.n, l = ctx.l;
  // (a): between x in B and a later y in R lies a window of l-1 indices free of R and B.
  const Mask used = st.R | st.B;
  for (int x = 1; x <= n; ++x) {
    if (!has(st.B, x)) continue;
    int run = 0, best = 0;
    for (int y = x + 1; y <= n; ++y) {
      if (has(st.R, y) && best < l - 1) {
        if (fail("(a)", "B index " + std::to_string(x) + " and R index " + std::to_string(y) +
                            " are not separated by " + std::to_string(l - 1) + " free indices"))
          return rep;
      }
      run = has(used, y) ? 0 : run + 1;
      best = std::max(best, run);
    }
  }
  const DiagonalProfile pr = profile(ctx, st);
  auto L = [&](int i) { return pr.min_len(i); };
  auto N = [&](int i) { return pr.max_len(i); };
  for (int i = 2; i <= ctx.p; ++i) {
    const std::string at = " at i=" + std::to_string(i);
    if (i % 2 != 0) {
      if (N(i - 1) + N(i) > l - 1 && fail("(b1)", "n_{i-1}+n_i = " + std::to_string(N(i - 1) + N(i)) + " > l-1" + at))
        return rep;
      if (L(i) + L(i + 1) < l + 1 && fail("(b1)", "l_i+l_{i+1} = " + std::to_string(L(i) + L(i + 1)) + " < l+1" + at))
        return rep;
      if (ctx.d == 2) {
        if (N(i) > L(i + 2) + 1 && fail("(b1)", "n_i > l_{i+2}+1" + at)) return rep;
        if (N(i - 2) > L(i) + 1 && fail("(b1)", "n_{i-2} > l_i+1" + at)) return rep;
      }
    } else {
      if (N(i) + N(i + 1) > l - 1 && fail("(b2)", "n_i+n_{i+1} = " + std::to_string(N(i) + N(i + 1)) + " > l-1" + at))
        return rep;
      if (L(i - 1) + L(i) < l + 1 && fail("(b2)", "l_{i-1}+l_i = " + std::to_string(L(i - 1) + L(i)) + " < l+1" + at))
        return rep;
    }
    if ((st.R & span_mask(notred_of(ctx, pr, i), n)) && fail("(b3)", "R meets the forbidden-R interval" + at))
      return rep;
    if ((st.B & span_mask(notblue_of(ctx, pr, i), n)) && fail("(b3)", "B meets the forbidden-B interval" + at))
      return rep;
  }
  return rep;
}

inline RigidityReport is_rigid_pair(const AlgebraContext &ctx, const CPair &pair) {
  return is_rigid_pair(ctx, to_state(ctx, pair));
}

/// Direct Hom-vanishing test: Hom(X, tau_d Y) = 0 for all summands X, Y of M and
/// Hom(P(b), X) = 0 for b in B.
inline bool is_rigid_pair_oracle(const AlgebraContext &ctx, const CPair &pair) {
  for (const auto &x : pair.rigid_part)
    if (!ctx.in_cluster(x)) return false;
  for (const auto &x : pair.rigid_part)
    for (const auto &y : pair.rigid_part) {
      const auto ty = tau_d(ctx, y);
      if (ty && hom_dim(x, *ty)) return false;
    }
  for (int b : pair.support_part)
    for (const auto &x : pair.rigid_part)
      if (hom_dim(ctx.projective(b), x)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Admissible configurations

enum class AdmissibleTag { none, I, II, III, IV, V, VI, VII, VIII };

inline const char *to_string(AdmissibleTag t) {
  static const char *names[] = {"none", "I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
  return names[static_cast<int>(t)];
}

/// Kind of the run neighbourhood used to match an admissible type.
enum class XiKind { support, rigid, support_to_rigid, other };

struct AdmissibleType {
  AdmissibleTag tag = AdmissibleTag::none;
  bool full = false;
  XiKind xi_kind = XiKind::other;
  std::optional<int> anchor; ///< split point when the neighbourhood is support to rigid
};

inline AdmissibleType classify_admissible(const AlgebraContext &ctx, const PairState &st, const MarkerIntervals &mk,
                                          const Span &run) {
  const DiagonalProfile pr = profile(ctx, st);
  const int i = run.lo, k = run.hi - run.lo, l = ctx.l;
  const Span xi = xi_of(ctx, pr, run.lo, run.hi);
  const IntervalKind kind = interval_kind(ctx, st, mk, xi);
  AdmissibleType out;
  out.xi_kind = kind.support ? XiKind::support
                : kind.rigid ? XiKind::rigid
                : kind.support_to_rigid ? XiKind::support_to_rigid
                                        : XiKind::other;
  if (kind.support_to_rigid) out.anchor = kind.support_to_rigid;
  auto L = [&](int j) { return pr.min_len(j); };
  auto N = [&](int j) { return pr.max_len(j); };
  auto Mc = [&](int j) { return pr.count(j); };
  auto sr_in = [&](int lo, int hi) { return kind.support_to_rigid && lo <= *kind.support_to_rigid && *kind.support_to_rigid <= hi; };
  const int si = ctx.s_at(i);
  AdmissibleTag tag = AdmissibleTag::none;
  if (k == 0) {
    if (L(i) == 1 && N(i) < l - 1 && kind.support) tag = AdmissibleTag::I;
    else if (L(i) > 1 && N(i) == l - 1 && kind.rigid) tag = AdmissibleTag::II;
    else if (L(i) == 1 && N(i) == l - 1) {
      const Span nb = notblue_of(ctx, pr, i);
      const bool sr_ok = kind.support_to_rigid && !nb.contains(*kind.support_to_rigid);
      if (kind.support || kind.rigid || sr_ok) tag = AdmissibleTag::III;
    }
  } else if (k == 1) {
    const int msum = Mc(i) + Mc(i + 1);
    if (i % 2 != 0 && N(i) == l - 1 && N(i + 1) == l - 1) {
      if (msum < l - 1 && kind.rigid) tag = AdmissibleTag::IV;
      else if (msum == l - 1 && (kind.rigid || sr_in(si - (l - Mc(i + 1)), si - 1))) tag = AdmissibleTag::VI;
    } else if (i % 2 == 0 && L(i) == 1 && L(i + 1) == 1) {
      if (msum < l - 1 && kind.support) tag = AdmissibleTag::V;
      else if (msum == l - 1 && (kind.support || sr_in(si - (l - 1), si - Mc(i)))) tag = AdmissibleTag::VII;
    }
  } else if (k == 2) {
    if (ctx.d == 2 && i % 2 == 0 && L(i) == 1 && L(i + 1) == l - L(i + 2) + 1 && N(i + 1) == l - N(i) - 1 &&
        N(i + 2) == l - 1 && sr_in(ctx.s_at(i + 1) - L(i + 2), si - N(i)))
      tag = AdmissibleTag::VIII;
  }
  out.tag = tag;
  out.full = true;
  for (int j = run.lo; j <= run.hi; ++j) out.full = out.full && pr.full(j);
  return out;
}

// ---------------------------------------------------------------------------
// Well-configured pairs

struct WellConfiguredReport {
  bool well_configured = false;
  std::string clause; ///< "(a)" when accepted by clause (a); otherwise the first failing clause
  std::string detail;
  std::vector<AdmissibleType> types; ///< one per run
  explicit operator bool() const { return well_configured; }
};

inline WellConfiguredReport is_well_configured(const AlgebraContext &ctx, const PairState &st) {
  WellConfiguredReport rep;
  const MarkerIntervals mk = markers(ctx, st);
  const int n = ctx.n;
  if (mk.runs.empty()) {
    // (a): R = [1,x], B = [x+1,n]
    const int x = popcount(st.R);
    const Mask all = span_mask({1, n}, n);
    const Mask r = span_mask({1, x}, n);
    rep.well_configured = st.R == r && st.B == (all & ~r);
    rep.clause = "(a)";
    if (!rep.well_configured) rep.detail = "no diagonal summands and (R,B) is not of the form ([1,x],[x+1,n])";
    return rep;
  }
  auto fail = [&](const char *clause, std::string detail) {
    rep.well_configured = false;
    rep.clause = clause;
    rep.detail = std::move(detail);
    return rep;
  };
  const int k = static_cast<int>(mk.runs.size());
  for (int j = 0; j < k; ++j) rep.types.push_back(classify_admissible(ctx, st, mk, mk.runs[j]));
  for (int j = 0; j < k; ++j) {
    const auto &t = rep.types[j];
    if (t.tag == AdmissibleTag::none || !t.full)
      return fail("(b)(i)", "run starting at diagonal " + std::to_string(mk.runs[j].lo) +
                                " is not a full admissible configuration");
  }
  for (int j = 0; j + 1 < k; ++j)
    if (mk.xi[j].hi >= mk.xi[j + 1].lo)
      return fail("(b)(ii)", "neighbourhoods of runs " + std::to_string(j + 1) + " and " + std::to_string(j + 2) +
                                 " intersect");
  std::vector<IntervalKind> theta_kind;
  for (int j = 0; j <= k; ++j) {
    theta_kind.push_back(interval_kind(ctx, st, mk, mk.theta[j]));
    const auto &tk = theta_kind.back();
    if (!(tk.rigid || tk.support || tk.rigid_to_support))
      return fail("(b)(iii)", "gap " + std::to_string(j) + " is neither rigid, support nor rigid to support");
  }
  for (int j = 0; j < k; ++j) {
    const IntervalKind xk = interval_kind(ctx, st, mk, mk.xi[j]);
    const bool type3 = rep.types[j].tag == AdmissibleTag::III;
    if (xk.rigid && !theta_kind[j].rigid && !type3)
      return fail("(b)(iv)", "run " + std::to_string(j + 1) + " has rigid neighbourhood but the preceding gap is not rigid");
    if (xk.support && !theta_kind[j + 1].support && !type3)
      return fail("(b)(v)",
                  "run " + std::to_string(j + 1) + " has support neighbourhood but the following gap is not support");
  }
  rep.well_configured = true;
  rep.clause = "(b)";
  return rep;
}

inline WellConfiguredReport is_well_configured(const AlgebraContext &ctx, const CPair &pair) {
  return is_well_configured(ctx, to_state(ctx, pair));
}

// ---------------------------------------------------------------------------
// Enumeration

/// Pairwise compatibility of the building blocks of C-pairs.  Items are
/// R-indices 1..n (ids 0..n-1), B-indices (ids n..2n-1) and diagonal modules of
/// D_2..D_p (ids from 2n).  A set of items is a basic tau_d-rigid pair iff it is
/// pairwise compatible (including each item with itself).
class CompatibilityTable {
public:
  static constexpr std::size_t max_items = 256;

  explicit CompatibilityTable(const AlgebraContext &ctx) : ctx_(ctx) {
    const int n = ctx.n;
    for (int k = 1; k <= n; ++k) modules_.push_back(ctx.projective(k));
    for (int k = 1; k <= n; ++k) modules_.push_back(ctx.projective(k));
    for (int i = 2; i <= ctx.p; ++i)
      for (int x = 1; x <= ctx.l - 1; ++x) {
        modules_.push_back(ctx.diagonal_module(i, x));
        diag_pos_.push_back({i, x});
      }
    if (modules_.size() > max_items) throw std::invalid_argument("context too large for enumeration");
    compat_.resize(modules_.size());
    for (std::size_t a = 0; a < modules_.size(); ++a)
      for (std::size_t b = 0; b < modules_.size(); ++b) compat_[a][b] = compatible(a, b);
  }

  std::size_t size() const { return modules_.size(); }
  int r_item(int k) const { return k - 1; }
  int b_item(int k) const { return ctx_.n + k - 1; }
  int diag_item(int i, int x) const { return 2 * ctx_.n + (i - 2) * (ctx_.l - 1) + (x - 1); }
  DiagonalPosition diag_position(int item) const { return diag_pos_[item - 2 * ctx_.n]; }
  const std::bitset<max_items> &row(int item) const { return compat_[item]; }
  bool ok(int a, int b) const { return compat_[a][b]; }

private:
  bool is_support(std::size_t a) const { return a >= static_cast<std::size_t>(ctx_.n) && a < 2u * ctx_.n; }

  bool compatible(std::size_t a, std::size_t b) const {
    const bool sa = is_support(a), sb = is_support(b);
    if (sa && sb) return true;
    if (sa) return hom_dim(modules_[a], modules_[b]) == 0;
    if (sb) return hom_dim(modules_[b], modules_[a]) == 0;
    auto no_hom_to_tau = [&](const IntervalModule &x, const IntervalModule &y) {
      const auto ty = tau_d(ctx_, y);
      return !ty || hom_dim(x, *ty) == 0;
    };
    return no_hom_to_tau(modules_[a], modules_[b]) && no_hom_to_tau(modules_[b], modules_[a]);
  }

  AlgebraContext ctx_;
  std::vector<IntervalModule> modules_;
  std::vector<DiagonalPosition> diag_pos_;
  std::vector<std::bitset<max_items>> compat_;
};

using ItemSet = std::bitset<CompatibilityTable::max_items>;

/// Depth-first walk over C-pairs.  Positions are the diagonal modules (present
/// or absent) followed by the indices 1..n (absent, in R, or in B).  `accept` is
/// called each time an item is added, with the item id (CompatibilityTable
/// numbering) and the set of present items; the subtree below is explored only
/// if it returns true, so any hereditary predicate can be used for pruning.
/// `leaf` is called once for every complete assignment reached; returning false
/// stops the walk.  Subtrees that cannot reach `min_size` summands are skipped.
/// Returns false if the walk was stopped.
inline bool walk_cpairs(const AlgebraContext &ctx, const CompatibilityTable &table,
                        const std::function<bool(const PairState &, const ItemSet &, int)> &accept,
                        const std::function<bool(const PairState &)> &leaf, int min_size = 0) {
  const int n = ctx.n, l = ctx.l;
  struct Pos {
    int diag = 0, len = 0, index = 0;
  };
  std::vector<Pos> pos;
  for (int i = 2; i <= ctx.p; ++i)
    for (int x = 1; x <= l - 1; ++x) pos.push_back({i, x, 0});
  for (int k = 1; k <= n; ++k) pos.push_back({0, 0, k});
  PairState st(ctx);
  ItemSet present;
  int size = 0;
  bool stopped = false;
  std::function<void(std::size_t)> rec = [&](std::size_t at) {
    if (stopped) return;
    if (size + static_cast<int>(pos.size() - at) < min_size) return;
    if (at == pos.size()) {
      if (!leaf(st)) stopped = true;
      return;
    }
    rec(at + 1);
    const Pos &q = pos[at];
    auto try_item = [&](int item, auto &&set, auto &&unset) {
      if (stopped) return;
      set();
      present.set(item);
      ++size;
      if (accept(st, present, item)) rec(at + 1);
      --size;
      present.reset(item);
      unset();
    };
    if (q.index == 0) {
      const Mask b = bit(q.len);
      try_item(table.diag_item(q.diag, q.len), [&] { st.X[q.diag] |= b; }, [&] { st.X[q.diag] &= ~b; });
    } else {
      const Mask b = bit(q.index);
      try_item(table.r_item(q.index), [&] { st.R |= b; }, [&] { st.R &= ~b; });
      try_item(table.b_item(q.index), [&] { st.B |= b; }, [&] { st.B &= ~b; });
    }
  };
  rec(0);
  return !stopped;
}

/// Thrown when an enumeration exceeds a caller-provided limit.
struct LimitExceeded : std::runtime_error {
  std::size_t count_so_far;
  LimitExceeded(const std::string &what, std::size_t count) : std::runtime_error(what), count_so_far(count) {}
};

/// Every basic tau_d-rigid pair with at least `min_size` summands, found by
/// clique search in the compatibility table, in canonical order.  Throws
/// LimitExceeded when more than `limit` pairs are found.
inline std::vector<PairState> enumerate_rigid_states(const AlgebraContext &ctx, int min_size = 0,
                                                     std::size_t limit = static_cast<std::size_t>(-1)) {
  const CompatibilityTable table(ctx);
  std::vector<PairState> out;
  auto accept = [&](const PairState &, const ItemSet &present, int item) {
    return (present & ~table.row(item)).none();
  };
  auto leaf = [&](const PairState &st) {
    if (st.summand_count() >= min_size) {
      if (out.size() == limit) throw LimitExceeded("rigid pair enumeration limit exceeded", out.size());
      out.push_back(st);
    }
    return true;
  };
  walk_cpairs(ctx, table, accept, leaf, min_size);
  sort_canonical(ctx, out);
  return out;
}

inline std::vector<CPair> enumerate_rigid(const AlgebraContext &ctx, std::size_t limit = static_cast<std::size_t>(-1)) {
  std::vector<CPair> out;
  for (const auto &st : enumerate_rigid_states(ctx, 0, limit)) out.push_back(to_cpair(ctx, st));
  return out;
}

/// Whether some tau_d-rigid pair has at least `target` summands.
inline bool exists_rigid_with(const AlgebraContext &ctx, const CompatibilityTable &table, int target) {
  bool found = false;
  walk_cpairs(
      ctx, table, [&](const PairState &, const ItemSet &present, int item) { return (present & ~table.row(item)).none(); },
      [&](const PairState &st) {
        found = st.summand_count() >= target;
        return !found;
      },
      target);
  return found;
}

/// Largest summand count of a tau_d-rigid pair, by exhaustive bounded search.
inline int max_rigid_summands(const AlgebraContext &ctx) {
  const CompatibilityTable table(ctx);
  int t = 0;
  while (exists_rigid_with(ctx, table, t + 1)) ++t;
  return t;
}

// ---------------------------------------------------------------------------
// Summand-maximal pairs

namespace detail {

/// All R/B fillings of an interval according to one interval kind.
struct Filling {
  Mask R = 0, B = 0;
};

inline void fill_support(const AlgebraContext &ctx, const MarkerIntervals &mk, const Span &iv, Filling &f) {
  f.B |= span_mask(iv, ctx.n) & ~mk.union_notblue;
}
inline void fill_rigid(const AlgebraContext &ctx, const MarkerIntervals &mk, const Span &iv, Filling &f) {
  f.R |= span_mask(iv, ctx.n) & ~mk.union_notred;
}

} // namespace detail

/// Generates well-configured pairs directly from their description: full
/// diagonal runs, a kind for every run neighbourhood (support, rigid, support to
/// rigid at x) and for every gap (rigid, support, rigid to support at x).  Every
/// candidate is confirmed by is_well_configured.  Canonical order.
inline std::vector<PairState> generate_well_configured(const AlgebraContext &ctx) {
  const int n = ctx.n, l = ctx.l;
  std::set<std::vector<std::vector<int>>> seen;
  std::vector<PairState> out;
  auto emit = [&](const PairState &st) {
    if (!is_well_configured(ctx, st)) return;
    if (seen.insert(canonical_key(ctx, st)).second) out.push_back(st);
  };
  // Clause (a).
  for (int x = 0; x <= n; ++x) {
    PairState st(ctx);
    st.R = span_mask({1, x}, n);
    st.B = span_mask({x + 1, n}, n);
    emit(st);
  }
  // Full diagonal choices: each X_i is empty or a contiguous range of lengths.
  std::vector<Mask> choices{0};
  for (int lo = 1; lo <= l - 1; ++lo)
    for (int hi = lo; hi <= l - 1; ++hi) {
      Mask m = 0;
      for (int x = lo; x <= hi; ++x) m |= bit(x);
      choices.push_back(m);
    }
  PairState base(ctx);
  std::function<void(int)> choose = [&](int i) {
    if (i <= ctx.p) {
      for (auto c : choices) {
        base.X[i] = c;
        // Prune with the length inequalities between neighbouring diagonals.
        const DiagonalProfile pr = profile(ctx, base);
        bool ok = true;
        if (c != 0 && i - 1 >= 2 && base.X[i - 1] != 0) {
          if ((i - 1) % 2 == 0) ok = pr.max_len(i - 1) + pr.max_len(i) <= l - 1;
          else ok = pr.min_len(i - 1) + pr.min_len(i) >= l + 1;
        }
        if (ok) choose(i + 1);
      }
      base.X[i] = 0;
      return;
    }
    const MarkerIntervals mk = markers(ctx, base);
    if (mk.runs.empty()) return;
    for (std::size_t j = 0; j + 1 < mk.xi.size(); ++j)
      if (mk.xi[j].hi >= mk.xi[j + 1].lo) return;
    // Option lists: code -2 = support, -1 = rigid, x >= 0 split point.
    std::vector<Span> parts;
    std::vector<bool> is_xi;
    for (std::size_t j = 0; j < mk.theta.size(); ++j) {
      parts.push_back(mk.theta[j]);
      is_xi.push_back(false);
      if (j < mk.xi.size()) {
        parts.push_back(mk.xi[j]);
        is_xi.push_back(true);
      }
    }
    detail::Filling fill;
    std::function<void(std::size_t)> pick = [&](std::size_t t) {
      if (t == parts.size()) {
        PairState st = base;
        st.R = fill.R;
        st.B = fill.B;
        if (!(st.R & st.B)) emit(st);
        return;
      }
      const Span iv = parts[t];
      const detail::Filling saved = fill;
      detail::fill_support(ctx, mk, iv, fill);
      pick(t + 1);
      fill = saved;
      detail::fill_rigid(ctx, mk, iv, fill);
      pick(t + 1);
      fill = saved;
      if (iv.empty()) return;
      for (int x = iv.lo; x <= iv.hi; ++x) {
        if (is_xi[t]) {
          fill.B |= span_mask({iv.lo, x}, n);
          fill.R |= span_mask({x + l, iv.hi}, n);
        } else {
          fill.R |= span_mask({iv.lo, x}, n);
          fill.B |= span_mask({x + 1, iv.hi}, n);
        }
        pick(t + 1);
        fill = saved;
      }
    };
    pick(0);
  };
  choose(2);
  sort_canonical(ctx, out);
  return out;
}

/// Summand-maximal pairs, generated from the well-configured description and,
/// when `cross_check` is set, compared against the exhaustive search for rigid
/// pairs with n summands.  Canonical order.
inline std::vector<PairState> enumerate_summand_maximal_states(const AlgebraContext &ctx, bool cross_check = true) {
  auto generated = generate_well_configured(ctx);
  if (cross_check) {
    const auto searched = enumerate_rigid_states(ctx, ctx.n);
    if (searched != generated)
      throw ConsistencyError("well-configured generation (" + std::to_string(generated.size()) +
                             " pairs) disagrees with rigid-pair search (" + std::to_string(searched.size()) + ")");
  }
  return generated;
}

inline std::vector<CPair> enumerate_summand_maximal(const AlgebraContext &ctx, bool cross_check = true) {
  std::vector<CPair> out;
  for (const auto &st : enumerate_summand_maximal_states(ctx, cross_check)) out.push_back(to_cpair(ctx, st));
  return out;
}

// ---------------------------------------------------------------------------
// Maximal pairs

/// Whether a tau_d-rigid pair is maximal: every N in C compatible with (M,P) is
/// already a summand of M, and the projectives Q with Hom(Q,M) = 0 are exactly
/// the summands of P.
inline bool is_maximal_rigid(const AlgebraContext &ctx, const CPair &pair) {
  std::set<IntervalModule> in_m(pair.rigid_part.begin(), pair.rigid_part.end());
  std::set<int> in_p(pair.support_part.begin(), pair.support_part.end());
  for (const auto &nmod : cluster_indecomposables(ctx)) {
    bool compatible = true;
    const auto tn = tau_d(ctx, nmod);
    for (const auto &m : pair.rigid_part) {
      if (tn && hom_dim(m, *tn)) compatible = false;
      const auto tm = tau_d(ctx, m);
      if (tm && hom_dim(nmod, *tm)) compatible = false;
    }
    for (int b : pair.support_part)
      if (hom_dim(ctx.projective(b), nmod)) compatible = false;
    if (compatible != (in_m.count(nmod) > 0)) return false;
  }
  for (int q = 1; q <= ctx.n; ++q) {
    bool vanishes = true;
    for (const auto &m : pair.rigid_part)
      if (hom_dim(ctx.projective(q), m)) vanishes = false;
    if (vanishes != (in_p.count(q) > 0)) return false;
  }
  return true;
}

/// Greedy completion of a rigid module: adds every compatible indecomposable of
/// C in canonical order, then takes P to be all projectives with Hom(Q,M) = 0.
inline CPair greedy_completion(const AlgebraContext &ctx, const std::vector<IntervalModule> &seed) {
  CPair pair;
  pair.rigid_part = seed;
  for (const auto &nmod : cluster_indecomposables(ctx)) {
    CPair trial = pair;
    trial.rigid_part.push_back(nmod);
    trial.normalize();
    if (trial.rigid_part.size() > pair.rigid_part.size() && is_rigid_pair_oracle(ctx, trial)) pair = trial;
  }
  for (int q = 1; q <= ctx.n; ++q) {
    bool vanishes = true;
    for (const auto &m : pair.rigid_part)
      if (hom_dim(ctx.projective(q), m)) vanishes = false;
    if (vanishes) pair.support_part.push_back(q);
  }
  pair.normalize();
  return pair;
}

} // namespace taud

#endif // TAUD_RIGID_HPP
