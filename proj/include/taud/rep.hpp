#ifndef TAUD_REP_HPP
#define TAUD_REP_HPP

// Explicit quiver representations of Lambda(n,l) over the rationals.  This is
// the independent "matrix" side used to check the combinatorial formulas:
// Hom dimensions, cokernels and decompositions into interval modules.

#include "algebra.hpp"
#include "linalg.hpp"

#include <map>
#include <vector>

namespace taud {

/// Representation of the linearly oriented A_n quiver (arrows k+1 -> k).
struct Representation {
  int n = 0;
  std::vector<std::size_t> dims; ///< dims[k] for k = 1..n (index 0 unused)
  std::vector<Matrix> maps;      ///< maps[k]: V_{k+1} -> V_k for k = 1..n-1

  explicit Representation(int n_ = 0) : n(n_), dims(n_ + 1, 0), maps(n_ + 1) {
    for (int k = 1; k < n; ++k) maps[k] = Matrix(0, 0);
  }
};

/// Morphism of representations given by one matrix per vertex (W_k x V_k).
struct RepMorphism {
  std::vector<Matrix> comps; ///< comps[k] for k = 1..n
};

inline Representation interval_rep(int n, const IntervalModule &m) {
  Representation r(n);
  for (int k = m.a; k <= m.b; ++k) r.dims[k] = 1;
  for (int k = 1; k < n; ++k) {
    r.maps[k] = Matrix(r.dims[k], r.dims[k + 1]);
    if (r.dims[k] == 1 && r.dims[k + 1] == 1) r.maps[k](0, 0) = 1;
  }
  return r;
}

inline Representation direct_sum(const std::vector<Representation> &parts, int n) {
  Representation r(n);
  for (const auto &x : parts)
    for (int k = 1; k <= n; ++k) r.dims[k] += x.dims[k];
  for (int k = 1; k < n; ++k) {
    r.maps[k] = Matrix(r.dims[k], r.dims[k + 1]);
    std::size_t ro = 0, co = 0;
    for (const auto &x : parts) {
      for (std::size_t i = 0; i < x.dims[k]; ++i)
        for (std::size_t j = 0; j < x.dims[k + 1]; ++j) r.maps[k](ro + i, co + j) = x.maps[k](i, j);
      ro += x.dims[k];
      co += x.dims[k + 1];
    }
  }
  return r;
}

inline Representation direct_sum_of_intervals(int n, const std::vector<IntervalModule> &ms) {
  std::vector<Representation> parts;
  for (const auto &m : ms) parts.push_back(interval_rep(n, m));
  return direct_sum(parts, n);
}

/// Whether the family of per-vertex maps commutes with the structure maps.
inline bool is_morphism(const Representation &v, const Representation &w, const RepMorphism &f) {
  for (int k = 1; k < v.n; ++k)
    if (!(w.maps[k] * f.comps[k + 1] == f.comps[k] * v.maps[k])) return false;
  return true;
}

/// Basis of Hom(V,W) computed by solving the commutativity equations.
inline std::vector<RepMorphism> hom_basis(const Representation &v, const Representation &w) {
  const int n = v.n;
  std::vector<std::size_t> offset(n + 2, 0);
  for (int k = 1; k <= n; ++k) offset[k + 1] = offset[k] + w.dims[k] * v.dims[k];
  const std::size_t unknowns = offset[n + 1];
  // variable (k, i, j) is entry (i,j) of f_k
  auto var = [&](int k, std::size_t i, std::size_t j) { return offset[k] + i * v.dims[k] + j; };
  std::size_t eqs = 0;
  for (int k = 1; k < n; ++k) eqs += w.dims[k] * v.dims[k + 1];
  Matrix sys(eqs, unknowns);
  std::size_t row = 0;
  for (int k = 1; k < n; ++k) {
    // (W_k f_{k+1} - f_k V_k)(i,j) = 0 for i < w.dims[k], j < v.dims[k+1]
    for (std::size_t i = 0; i < w.dims[k]; ++i)
      for (std::size_t j = 0; j < v.dims[k + 1]; ++j, ++row) {
        for (std::size_t t = 0; t < w.dims[k + 1]; ++t)
          if (!is_zero(w.maps[k](i, t))) sys(row, var(k + 1, t, j)) += w.maps[k](i, t);
        for (std::size_t t = 0; t < v.dims[k]; ++t)
          if (!is_zero(v.maps[k](t, j))) sys(row, var(k, i, t)) -= v.maps[k](t, j);
      }
  }
  const Matrix ns = null_space(sys);
  std::vector<RepMorphism> out;
  for (std::size_t c = 0; c < ns.cols(); ++c) {
    RepMorphism f;
    f.comps.resize(n + 1);
    for (int k = 1; k <= n; ++k) {
      f.comps[k] = Matrix(w.dims[k], v.dims[k]);
      for (std::size_t i = 0; i < w.dims[k]; ++i)
        for (std::size_t j = 0; j < v.dims[k]; ++j) f.comps[k](i, j) = ns(var(k, i, j), c);
    }
    out.push_back(std::move(f));
  }
  return out;
}

inline std::size_t hom_dim_oracle(int n, const IntervalModule &x, const IntervalModule &y) {
  return hom_basis(interval_rep(n, x), interval_rep(n, y)).size();
}

/// The canonical map X -> Y between interval modules (identity on the overlap),
/// or the zero map when Hom(X,Y) = 0.
inline RepMorphism canonical_map(int n, const IntervalModule &x, const IntervalModule &y) {
  RepMorphism f;
  f.comps.resize(n + 1);
  const bool nonzero = hom_dim(x, y) == 1;
  for (int k = 1; k <= n; ++k) {
    f.comps[k] = Matrix(y.contains(k) ? 1 : 0, x.contains(k) ? 1 : 0);
    if (nonzero && x.contains(k) && y.contains(k)) f.comps[k](0, 0) = 1;
  }
  return f;
}

inline RepMorphism compose(const RepMorphism &g, const RepMorphism &f) {
  RepMorphism h;
  h.comps.resize(f.comps.size());
  for (std::size_t k = 1; k < f.comps.size(); ++k) h.comps[k] = g.comps[k] * f.comps[k];
  return h;
}

/// Map from an interval module into a direct sum of interval modules whose
/// components are the canonical maps (zero where Hom vanishes).
inline RepMorphism canonical_map_into_sum(int n, const IntervalModule &x,
                                          const std::vector<IntervalModule> &targets) {
  RepMorphism f;
  f.comps.resize(n + 1);
  for (int k = 1; k <= n; ++k) {
    std::size_t rows = 0;
    for (const auto &t : targets) rows += t.contains(k) ? 1 : 0;
    f.comps[k] = Matrix(rows, x.contains(k) ? 1 : 0);
    std::size_t r = 0;
    for (const auto &t : targets) {
      if (!t.contains(k)) continue;
      if (x.contains(k) && hom_dim(x, t) == 1) f.comps[k](r, 0) = 1;
      ++r;
    }
  }
  return f;
}

/// Map from a direct sum of interval modules into one interval module whose
/// components are the canonical maps (zero where Hom vanishes).
inline RepMorphism canonical_map_from_sum(int n, const std::vector<IntervalModule> &sources,
                                          const IntervalModule &y) {
  RepMorphism f;
  f.comps.resize(n + 1);
  for (int k = 1; k <= n; ++k) {
    std::size_t cols = 0;
    for (const auto &t : sources) cols += t.contains(k) ? 1 : 0;
    f.comps[k] = Matrix(y.contains(k) ? 1 : 0, cols);
    std::size_t c = 0;
    for (const auto &t : sources) {
      if (!t.contains(k)) continue;
      if (y.contains(k) && hom_dim(t, y) == 1) f.comps[k](0, c) = 1;
      ++c;
    }
  }
  return f;
}

/// Total dimension of the image of a morphism.
inline std::size_t image_dim(const RepMorphism &f) {
  std::size_t total = 0;
  for (std::size_t k = 1; k < f.comps.size(); ++k) total += rank(f.comps[k]);
  return total;
}

/// Cokernel of f: V -> W as a representation (the quotient morphism is not kept).
inline Representation cokernel(const Representation &w, const RepMorphism &f) {
  const int n = w.n;
  Representation c(n);
  std::vector<Matrix> q(n + 1), sect(n + 1);
  for (int k = 1; k <= n; ++k) {
    q[k] = quotient_map(f.comps[k], w.dims[k]);
    c.dims[k] = q[k].rows();
    sect[k] = c.dims[k] ? right_inverse(q[k]) : Matrix(w.dims[k], 0);
  }
  for (int k = 1; k < n; ++k) c.maps[k] = q[k] * w.maps[k] * sect[k + 1];
  return c;
}

/// Rank of the composite structure map V_b -> V_a (a <= b).
inline std::size_t composite_rank(const Representation &r, int a, int b) {
  if (a < 1 || b > r.n || a > b) return 0;
  Matrix m = Matrix::identity(r.dims[b]);
  for (int k = b - 1; k >= a; --k) m = r.maps[k] * m;
  return rank(m);
}

/// Decomposition into interval modules (sorted, with multiplicity), computed
/// from the rank function of composite structure maps.
inline std::vector<IntervalModule> decompose(const Representation &r) {
  const int n = r.n;
  std::map<std::pair<int, int>, long long> rk;
  auto get = [&](int a, int b) -> long long {
    if (a < 1 || b > n) return 0;
    auto it = rk.find({a, b});
    if (it != rk.end()) return it->second;
    const long long v = static_cast<long long>(composite_rank(r, a, b));
    rk[{a, b}] = v;
    return v;
  };
  std::vector<IntervalModule> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b) {
      const long long mult = get(a, b) - get(a - 1, b) - get(a, b + 1) + get(a - 1, b + 1);
      for (long long t = 0; t < mult; ++t) out.push_back({a, b});
    }
  return out;
}

} // namespace taud

#endif // TAUD_REP_HPP
