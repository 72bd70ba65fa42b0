#ifndef TAUD_ALGEBRA_HPP
#define TAUD_ALGEBRA_HPP

// Truncated linear Nakayama algebras Lambda(n,l) = k A_n / R^l, their interval
// modules, Hom spaces, projectives/injectives, the d-cluster tilting
// subcategory C and the higher translates tau_d / tau_d^-.
//
// Conventions: the quiver has vertices 1..n with arrows k+1 -> k.  The
// indecomposable M(a,b) has socle S(a) and top S(b).  The zero module is never
// represented by a degenerate interval; functions that may produce zero return
// std::optional.

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace taud {

/// Raised when two independent computations that must agree do not.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Indecomposable module M(a,b) of Lambda(n,l) with support [a,b].
struct IntervalModule {
  int a = 1; ///< socle position
  int b = 1; ///< top position

  int length() const { return b - a + 1; }
  bool contains(int k) const { return a <= k && k <= b; }

  friend auto operator<=>(const IntervalModule &, const IntervalModule &) = default;
  friend bool operator==(const IntervalModule &, const IntervalModule &) = default;
};

inline std::string to_string(const IntervalModule &m) {
  return "M(" + std::to_string(m.a) + "," + std::to_string(m.b) + ")";
}

/// A non-projective-injective member of C addressed by diagonal and length.
struct DiagonalPosition {
  int diag_index = 1; ///< in [1,p]
  int length = 1;     ///< in [1,l-1]

  friend auto operator<=>(const DiagonalPosition &, const DiagonalPosition &) = default;
  friend bool operator==(const DiagonalPosition &, const DiagonalPosition &) = default;
};

/// 1 iff Hom(X,Y) != 0, i.e. top(X) lies in supp(Y) and socle(Y) lies in supp(X).
inline int hom_dim(const IntervalModule &x, const IntervalModule &y) {
  return (y.contains(x.b) && x.contains(y.a)) ? 1 : 0;
}

/// Result of projective_injective_of.
struct ProjInj {
  IntervalModule projective;
  IntervalModule injective;
  bool is_proj_inj = false;
};

/// Validated parameters (n, l, d, p) with the positions s_1..s_p of the simples in C.
class AlgebraContext {
public:
  int n = 0;
  int l = 0;
  int d = 0;
  int p = 0;
  std::vector<int> s; ///< s[0..p-1] holds s_1..s_p

  /// Position formula s_i extended to every integer i (used for i = 0 and i = p+1
  /// at the boundary of marker intervals).
  int s_at(int i) const {
    // Twice the value keeps every intermediate quantity integral.
    const long long two = (i % 2 != 0) ? (static_cast<long long>(i - 1) * (d - 1) * l + 2LL * i)
                                       : (static_cast<long long>(i - 1) * ((d - 1) * l + 2) + l);
    return static_cast<int>(two / 2);
  }

  /// dl/2, the gap s_{i+1} - s_i for odd i.
  int half_dl() const { return d * l / 2; }
  /// (d-2)l/2 + 2, the gap s_{i+1} - s_i for even i.
  int even_gap() const { return (d - 2) * l / 2 + 2; }

  bool valid(const IntervalModule &m) const {
    return 1 <= m.a && m.a <= m.b && m.b <= n && m.length() <= l;
  }

  IntervalModule projective(int k) const {
    check_index(k);
    return {std::max(1, k - l + 1), k};
  }
  IntervalModule injective(int k) const {
    check_index(k);
    return {k, std::min(n, k + l - 1)};
  }
  bool is_projective(const IntervalModule &m) const { return m.a == std::max(1, m.b - l + 1); }
  bool is_injective(const IntervalModule &m) const { return m.b == std::min(n, m.a + l - 1); }
  bool is_proj_inj(const IntervalModule &m) const { return m.length() == l; }

  /// The module of diagonal i with the given length.
  IntervalModule diagonal_module(int i, int length) const {
    if (i < 1 || i > p || length < 1 || length > l - 1)
      throw std::out_of_range("diagonal_module: position outside C");
    const int si = s[i - 1];
    return (i % 2 != 0) ? IntervalModule{si, si + length - 1} : IntervalModule{si - length + 1, si};
  }
  IntervalModule diagonal_module(const DiagonalPosition &pos) const {
    return diagonal_module(pos.diag_index, pos.length);
  }

  /// Diagonal address of X, or none if X is projective-injective or not in C.
  std::optional<DiagonalPosition> diagonal_of(const IntervalModule &m) const {
    if (!valid(m) || m.length() >= l) return std::nullopt;
    // Odd diagonals share the socle, even diagonals share the top.
    for (int i = 1; i <= p; ++i) {
      if (i % 2 != 0 && s[i - 1] == m.a) return DiagonalPosition{i, m.length()};
      if (i % 2 == 0 && s[i - 1] == m.b) return DiagonalPosition{i, m.length()};
    }
    return std::nullopt;
  }

  bool in_cluster(const IntervalModule &m) const {
    return valid(m) && (m.length() == l || diagonal_of(m).has_value());
  }

  /// Positions of the projective-injective indices q with I(q) = M(q, q+l-1).
  int proj_inj_count() const { return n - l + 1; }

private:
  void check_index(int k) const {
    if (k < 1 || k > n) throw std::out_of_range("vertex index " + std::to_string(k) + " out of range");
  }
};

/// Returns the context for Lambda(n,l) with d-cluster tilting subcategory, or
/// none when no admissible number p of diagonals exists.  Only d >= 2 and p >= 2
/// are considered.
inline std::optional<AlgebraContext> resolve_params(int n, int l, int d) {
  if (n < 1 || l < 2 || d < 2) return std::nullopt;
  if (l > n) return std::nullopt;
  // 2n = (p-1)((d-1)l + 2) + l
  const long long denom = static_cast<long long>(d - 1) * l + 2;
  const long long num = 2LL * n - l;
  if (num <= 0 || num % denom != 0) return std::nullopt;
  const long long p = 1 + num / denom;
  if (p < 2) return std::nullopt;
  if (l > 2 && (d % 2 != 0 || p % 2 != 0)) return std::nullopt;
  AlgebraContext ctx;
  ctx.n = n;
  ctx.l = l;
  ctx.d = d;
  ctx.p = static_cast<int>(p);
  for (int i = 1; i <= ctx.p; ++i) ctx.s.push_back(ctx.s_at(i));
  return ctx;
}

/// Resolves parameters or throws std::invalid_argument.
inline AlgebraContext make_context(int n, int l, int d) {
  auto ctx = resolve_params(n, l, d);
  if (!ctx)
    throw std::invalid_argument("Lambda(" + std::to_string(n) + "," + std::to_string(l) +
                                ") admits no " + std::to_string(d) + "-cluster tilting subcategory");
  return *ctx;
}

inline ProjInj projective_injective_of(const AlgebraContext &ctx, int k) {
  ProjInj r;
  r.projective = ctx.projective(k);
  r.injective = ctx.injective(k);
  r.is_proj_inj = r.projective.length() == ctx.l;
  return r;
}

/// All indecomposables of C, each listed once, sorted by (a,b).
inline std::vector<IntervalModule> cluster_indecomposables(const AlgebraContext &ctx) {
  std::vector<IntervalModule> out;
  for (int k = ctx.l; k <= ctx.n; ++k) out.push_back(ctx.projective(k));
  for (int i = 1; i <= ctx.p; ++i)
    for (int x = 1; x <= ctx.l - 1; ++x) out.push_back(ctx.diagonal_module(i, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

enum class Direction { forward, inverse };

/// Closed-form tau_d (forward) or tau_d^- (inverse) on C; none on projectives
/// (forward) or injectives (inverse).  Throws when X is not in C.
inline std::optional<IntervalModule> tau_d(const AlgebraContext &ctx, const IntervalModule &x,
                                           Direction dir = Direction::forward) {
  if (!ctx.in_cluster(x)) throw std::invalid_argument(to_string(x) + " is not in C");
  if (dir == Direction::forward) {
    if (ctx.is_projective(x)) return std::nullopt;
    return IntervalModule{x.b - ctx.half_dl(), x.a - ctx.even_gap()};
  }
  if (ctx.is_injective(x)) return std::nullopt;
  return IntervalModule{x.b + ctx.even_gap(), x.a + ctx.half_dl()};
}

/// First syzygy: kernel of the projective cover P(b) -> M(a,b); none if projective.
inline std::optional<IntervalModule> syzygy(const AlgebraContext &ctx, const IntervalModule &x) {
  const int start = std::max(1, x.b - ctx.l + 1);
  if (x.a == start) return std::nullopt;
  return IntervalModule{start, x.a - 1};
}

/// Classical Auslander-Reiten translate of a nonprojective interval module.
inline std::optional<IntervalModule> tau_classical(const AlgebraContext &ctx, const IntervalModule &x) {
  if (ctx.is_projective(x)) return std::nullopt;
  return IntervalModule{x.a - 1, x.b - 1};
}

/// tau_d computed independently as tau composed with d-1 syzygies.
inline std::optional<IntervalModule> tau_d_oracle(const AlgebraContext &ctx, const IntervalModule &x) {
  if (ctx.is_projective(x)) throw std::invalid_argument(to_string(x) + " is projective");
  std::optional<IntervalModule> cur = x;
  for (int k = 0; k < ctx.d - 1 && cur; ++k) cur = syzygy(ctx, *cur);
  if (!cur) return std::nullopt;
  return tau_classical(ctx, *cur);
}

/// Tops t_0, t_1, ... of the minimal projective resolution ... -> P(t_1) -> P(t_0) -> X.
inline std::vector<int> resolution_tops(const AlgebraContext &ctx, const IntervalModule &x) {
  std::vector<int> tops;
  std::optional<IntervalModule> cur = x;
  while (cur) {
    tops.push_back(cur->b);
    cur = syzygy(ctx, *cur);
  }
  return tops;
}

/// dim Ext^k(X,Y), computed as cohomology of Hom(P_bullet(X), Y).  Each
/// Hom(P(t),Y) is at most one-dimensional and the induced map between
/// consecutive terms is nonzero iff both tops lie in the support of Y.
inline int ext_dim(const AlgebraContext &ctx, const IntervalModule &x, const IntervalModule &y, int k) {
  if (k < 0) return 0;
  const auto tops = resolution_tops(ctx, x);
  auto h = [&](int j) -> int {
    return (j >= 0 && j < static_cast<int>(tops.size()) && y.contains(tops[j])) ? 1 : 0;
  };
  auto delta = [&](int j) -> int { return h(j) * h(j + 1); };
  return h(k) - delta(k) - delta(k - 1);
}

} // namespace taud

#endif // TAUD_ALGEBRA_HPP
