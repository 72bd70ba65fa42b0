#ifndef TAUD_COUNTING_HPP
#define TAUD_COUNTING_HPP

// Closed-form counts of summand-maximal tau_d-rigid pairs and d-torsion classes,
// with the parameter ranges in which they are claimed.  Outside those ranges the
// functions return std::nullopt instead of extrapolating.

#include "algebra.hpp"

#include <optional>

namespace taud {

/// Whether the p = 4 polynomials are claimed: (d > 2 and l > 2) or (d = 2 and l = 3).
inline bool p4_formula_applies(const AlgebraContext &ctx) {
  return ctx.p == 4 && ((ctx.d > 2 && ctx.l > 2) || (ctx.d == 2 && ctx.l == 3));
}

namespace detail {
/// Exact division for the polynomial formulas; none if the numerator is not divisible.
inline std::optional<long long> exact_quotient(long long num, long long den) {
  if (num % den != 0) return std::nullopt;
  return num / den;
}
} // namespace detail

/// Number of summand-maximal pairs: 2n + l - 1 when p = 2, and
/// (-19l^3 + 18l^2 n + 144l^2 - 6ln^2 - 36ln - 126l + 2n^3 + 36n^2 + 72n - 135) / 27
/// in the p = 4 range.
inline std::optional<long long> summand_maximal_formula(const AlgebraContext &ctx) {
  const long long n = ctx.n, l = ctx.l;
  if (ctx.p == 2) return 2 * n + l - 1;
  if (!p4_formula_applies(ctx)) return std::nullopt;
  const long long num = -19 * l * l * l + 18 * l * l * n + 144 * l * l - 6 * l * n * n - 36 * l * n - 126 * l +
                        2 * n * n * n + 36 * n * n + 72 * n - 135;
  return detail::exact_quotient(num, 27);
}

/// Number of d-torsion classes: n + l + 1 when p = 2, and
/// (17l^2 + 10ln + 57l + 2n^2 + 30n + 18) / 18 in the p = 4 range.
inline std::optional<long long> torsion_formula(const AlgebraContext &ctx) {
  const long long n = ctx.n, l = ctx.l;
  if (ctx.p == 2) return n + l + 1;
  if (!p4_formula_applies(ctx)) return std::nullopt;
  return detail::exact_quotient(17 * l * l + 10 * l * n + 57 * l + 2 * n * n + 30 * n + 18, 18);
}

/// Number of d-torsion classes when l = 2, by a transfer matrix on the two-vertex
/// graph: adjacency rows (1, d+1) and (1, 1), raised to the power p - 1, sum of
/// the entries.  Independent of the path enumeration.
inline std::optional<unsigned long long> torsion_transfer_count(const AlgebraContext &ctx) {
  if (ctx.l != 2) return std::nullopt;
  using U = unsigned long long;
  const U a[2][2] = {{1, static_cast<U>(ctx.d) + 1}, {1, 1}};
  U m[2][2] = {{1, 0}, {0, 1}};
  for (int k = 0; k < ctx.p - 1; ++k) {
    U t[2][2] = {{0, 0}, {0, 0}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int r = 0; r < 2; ++r) t[i][j] += m[i][r] * a[r][j];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i][j] = t[i][j];
  }
  return m[0][0] + m[0][1] + m[1][0] + m[1][1];
}

} // namespace taud

#endif // TAUD_COUNTING_HPP
