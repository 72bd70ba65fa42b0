#ifndef TAUD_TORSION_HPP
#define TAUD_TORSION_HPP

// d-torsion classes of the d-cluster tilting subcategory C.
//
// A subcategory U of C is stored as one shape per diagonal together with the
// set Q of indices q with I(q) in U.  The classification multigraph G has the
// possible shapes as vertices; paths of length p-1 are in bijection with the
// d-torsion classes.  Independently, TorsionOracle decides closure under
// d-quotients and minimal d-extensions from explicit representations.

#include "algebra.hpp"
#include "rep.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace taud {

// ---------------------------------------------------------------------------
// Shapes and classes
// ---------------------------------------------------------------------------

/// Which modules of a diagonal lie in U: none, lengths <= h, lengths >= h, or all.
enum class ShapeKind { zero, down, up, full };

/// Normalised diagonal shape: down(h) has 1 <= h <= l-2, up(h) has 2 <= h <= l-1,
/// and the degenerate values map to zero or full.
struct DiagonalShape {
  ShapeKind kind = ShapeKind::zero;
  int h = 0;

  bool contains_length(int x, int l) const {
    switch (kind) {
    case ShapeKind::zero: return false;
    case ShapeKind::down: return 1 <= x && x <= h;
    case ShapeKind::up: return h <= x && x <= l - 1;
    case ShapeKind::full: return 1 <= x && x <= l - 1;
    }
    return false;
  }

  friend auto operator<=>(const DiagonalShape &, const DiagonalShape &) = default;
  friend bool operator==(const DiagonalShape &, const DiagonalShape &) = default;
};

inline DiagonalShape shape_zero() { return {ShapeKind::zero, 0}; }
inline DiagonalShape shape_full() { return {ShapeKind::full, 0}; }
/// Lengths 1..h of a diagonal.
inline DiagonalShape shape_down(int h, int l) {
  if (h <= 0) return shape_zero();
  if (h >= l - 1) return shape_full();
  return {ShapeKind::down, h};
}
/// Lengths h..l-1 of a diagonal.
inline DiagonalShape shape_up(int h, int l) {
  if (h <= 1) return shape_full();
  if (h > l - 1) return shape_zero();
  return {ShapeKind::up, h};
}

inline std::string to_string(const DiagonalShape &s) {
  switch (s.kind) {
  case ShapeKind::zero: return "zero";
  case ShapeKind::down: return "down(" + std::to_string(s.h) + ")";
  case ShapeKind::up: return "up(" + std::to_string(s.h) + ")";
  case ShapeKind::full: return "full";
  }
  return "?";
}

inline std::string kind_name(ShapeKind k) {
  switch (k) {
  case ShapeKind::zero: return "zero";
  case ShapeKind::down: return "down";
  case ShapeKind::up: return "up";
  case ShapeKind::full: return "full";
  }
  return "?";
}

/// A subcategory of C given by per-diagonal shapes and the projective-injective indices Q.
struct TorsionClass {
  std::vector<DiagonalShape> shapes; ///< shapes[i-1] describes U cap D_i
  std::vector<int> q_set;            ///< sorted q with I(q) in U

  friend auto operator<=>(const TorsionClass &, const TorsionClass &) = default;
  friend bool operator==(const TorsionClass &, const TorsionClass &) = default;
};

/// Indecomposables of the class, sorted.
inline std::vector<IntervalModule> members(const AlgebraContext &ctx, const TorsionClass &cls) {
  std::vector<IntervalModule> out;
  for (int i = 1; i <= ctx.p; ++i)
    for (int x = 1; x <= ctx.l - 1; ++x)
      if (cls.shapes[i - 1].contains_length(x, ctx.l)) out.push_back(ctx.diagonal_module(i, x));
  for (int q : cls.q_set) out.push_back(ctx.injective(q));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The slice F_i of [1, n-l+1]: [s_i, s_{i+1}-(l-1)] for odd i and
/// [s_i-(l-2), s_{i+1}-1] for even i (both read [s_i, s_{i+1}-1] when l = 2).
inline std::pair<int, int> q_slice(const AlgebraContext &ctx, int i) {
  const int si = ctx.s_at(i), next = ctx.s_at(i + 1);
  if (i % 2 != 0) return {si, next - (ctx.l - 1)};
  return {si - (ctx.l - 2), next - 1};
}

// ---------------------------------------------------------------------------
// Classification multigraph
// ---------------------------------------------------------------------------

/// How an arrow chi_i prescribes Q cap F_i.
enum class QRule {
  none,       ///< empty
  whole,      ///< all of F_i
  tail,       ///< the last y indices of F_i
  from_start, ///< [s_i - h - (y-1), s_{i+1} - 1]
};

struct TorsionArrow {
  std::string label;   ///< e.g. "beta_3", "zeta_2,1", "mu^2_1,0"
  bool odd_source = true; ///< the source is an odd-side vertex (always true when l = 2)
  DiagonalShape source;
  DiagonalShape target;
  QRule rule = QRule::none;
  int h = 0; ///< parameter of from_start
  int y = 0; ///< number of indices for tail / offset for from_start
};

struct TorsionGraph {
  bool parity_split = true; ///< false when l = 2 (a single vertex set)
  std::vector<TorsionArrow> arrows;

  std::vector<std::size_t> arrows_from(bool odd_side, const DiagonalShape &v) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < arrows.size(); ++k)
      if (arrows[k].source == v && (!parity_split || arrows[k].odd_source == odd_side)) out.push_back(k);
    return out;
  }
  std::optional<std::size_t> find(const std::string &label, bool odd_side) const {
    for (std::size_t k = 0; k < arrows.size(); ++k)
      if (arrows[k].label == label && (!parity_split || arrows[k].odd_source == odd_side)) return k;
    return std::nullopt;
  }
  /// Vertices on one side, in a fixed order.
  std::vector<DiagonalShape> vertices(bool odd_side) const {
    std::set<DiagonalShape> vs;
    for (const auto &a : arrows)
      if (!parity_split || a.odd_source == odd_side) vs.insert(a.source);
    return {vs.begin(), vs.end()};
  }
};

/// Builds G.  For l > 2, odd-side arrows realise the pairs (U_i, U_{i+1}) allowed
/// for odd i and even-side arrows those for even i, one arrow per admissible Q
/// slice; for l = 2 the two vertices zero/full carry gamma, delta_y, beta, epsilon.
inline TorsionGraph torsion_graph(const AlgebraContext &ctx) {
  const int l = ctx.l, d = ctx.d;
  TorsionGraph g;
  auto add = [&](std::string label, bool odd, DiagonalShape s, DiagonalShape t, QRule r, int h = 0, int y = 0) {
    g.arrows.push_back({std::move(label), odd, s, t, r, h, y});
  };
  const std::string us = "_";
  if (l == 2) {
    g.parity_split = false;
    add("gamma", true, shape_zero(), shape_zero(), QRule::none);
    for (int y = 0; y <= d; ++y) add("delta_" + std::to_string(y), true, shape_zero(), shape_full(), QRule::tail, 0, y);
    add("beta", true, shape_full(), shape_zero(), QRule::none);
    add("epsilon", true, shape_full(), shape_full(), QRule::whole);
    return g;
  }
  // Odd side: source U_i for odd i, target U_{i+1}.
  add("gamma", true, shape_zero(), shape_zero(), QRule::none);
  for (int h = 1; h <= l - 2; ++h)
    add("delta_" + std::to_string(h), true, shape_zero(), shape_down(h, l), QRule::none);
  add("eta", true, shape_down(1, l), shape_zero(), QRule::none);
  for (int y = 0; y <= ctx.even_gap(); ++y)
    add("beta_" + std::to_string(y), true, shape_zero(), shape_full(), QRule::tail, 0, y);
  add("iota", true, shape_full(), shape_full(), QRule::whole);
  for (int h = 2; h <= l - 1; ++h)
    add("epsilon_" + std::to_string(h), true, shape_up(h, l), shape_full(), QRule::whole);
  // Even side: source U_i for even i, target U_{i+1}.
  for (int h = 0; h <= l - 1; ++h)
    add("omega_" + std::to_string(h), false, shape_down(h, l), shape_zero(), QRule::none);
  for (int h = 0; h <= l - 2; ++h)
    add("theta_" + std::to_string(h), false, shape_down(h, l), shape_down(1, l), QRule::none);
  for (int h = 2; h <= l - 1; ++h)
    for (int y = 0; y <= l - h; ++y)
      add("zeta_" + std::to_string(h) + "," + std::to_string(y), false, shape_zero(), shape_up(h, l), QRule::tail, 0,
          y);
  for (int y = 0; y <= ctx.half_dl(); ++y)
    add("kappa_" + std::to_string(y), false, shape_zero(), shape_full(), QRule::tail, 0, y);
  for (int h = 1; h <= l - 2; ++h)
    for (int y = 0; y <= l - h - 1; ++y)
      add("lambda_" + std::to_string(h) + "," + std::to_string(y), false, shape_down(h, l), shape_full(),
          QRule::from_start, h, y);
  add("iota-", false, shape_full(), shape_full(), QRule::whole);
  if (d == 2)
    for (int h = 1; h <= l - 3; ++h)
      for (int u = 2; u <= l - h - 1; ++u)
        for (int y = 0; y <= l - (h + u) - 1; ++y)
          add("mu^" + std::to_string(u) + us + std::to_string(h) + "," + std::to_string(y), false, shape_down(h, l),
              shape_up(u, l), QRule::from_start, h, y);
  return g;
}

/// Q cap F_i prescribed by arrow `a` placed at position i.
inline std::vector<int> q_slice_for(const AlgebraContext &ctx, int i, const TorsionArrow &a) {
  const auto [lo, hi] = q_slice(ctx, i);
  int from = hi + 1, to = hi;
  switch (a.rule) {
  case QRule::none: break;
  case QRule::whole: from = lo; break;
  case QRule::tail: from = hi - a.y + 1; break;
  case QRule::from_start: from = ctx.s_at(i) - a.h - (a.y - 1); break;
  }
  if (from <= to && (from < lo || to > hi))
    throw ConsistencyError("arrow " + a.label + " prescribes indices outside F_" + std::to_string(i));
  std::vector<int> out;
  for (int q = from; q <= to; ++q) out.push_back(q);
  return out;
}

/// U(chi) for a path chi_1 ... chi_{p-1} given by arrow indices into `g`.
/// Throws std::invalid_argument when the path is malformed.
inline TorsionClass path_to_class(const AlgebraContext &ctx, const TorsionGraph &g,
                                  const std::vector<std::size_t> &path) {
  if (static_cast<int>(path.size()) != ctx.p - 1)
    throw std::invalid_argument("path must have length p-1 = " + std::to_string(ctx.p - 1));
  TorsionClass cls;
  cls.shapes.resize(ctx.p);
  for (int i = 1; i <= ctx.p - 1; ++i) {
    const std::size_t k = path[i - 1];
    if (k >= g.arrows.size()) throw std::invalid_argument("unknown arrow index");
    const TorsionArrow &a = g.arrows[k];
    if (g.parity_split && a.odd_source != (i % 2 != 0))
      throw std::invalid_argument("arrow " + a.label + " does not start on the side of position " +
                                  std::to_string(i));
    if (i > 1 && g.arrows[path[i - 2]].target != a.source)
      throw std::invalid_argument("arrows " + g.arrows[path[i - 2]].label + " and " + a.label +
                                  " are not composable");
    cls.shapes[i - 1] = a.source;
    if (i == ctx.p - 1) cls.shapes[i] = a.target;
    const auto qs = q_slice_for(ctx, i, a);
    cls.q_set.insert(cls.q_set.end(), qs.begin(), qs.end());
  }
  std::sort(cls.q_set.begin(), cls.q_set.end());
  return cls;
}

/// Parses whitespace-separated arrow labels into a path, checking that
/// consecutive arrows compose.  The labels are read in path order
/// chi_1 chi_2 ...; pass `right_to_left` for the composition-order notation in
/// which chi_1 is written last.
inline std::vector<std::size_t> parse_path(const TorsionGraph &g, const std::string &text,
                                           bool right_to_left = false) {
  std::istringstream in(text);
  std::vector<std::string> labels;
  for (std::string w; in >> w;) labels.push_back(w);
  if (right_to_left) std::reverse(labels.begin(), labels.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool odd = (i % 2 == 0); // position i+1
    auto k = g.find(labels[i], odd);
    if (!k) throw std::invalid_argument("unknown arrow label '" + labels[i] + "' at position " + std::to_string(i + 1));
    if (!out.empty() && g.arrows[out.back()].target != g.arrows[*k].source)
      throw std::invalid_argument("arrow '" + labels[i] + "' at position " + std::to_string(i + 1) +
                                  " does not start where the previous arrow ends");
    out.push_back(*k);
  }
  return out;
}

/// Calls visit(path) for every path of length p-1 starting on the odd side.
inline void for_each_torsion_path(const AlgebraContext &ctx, const TorsionGraph &g,
                                  const std::function<void(const std::vector<std::size_t> &)> &visit) {
  std::vector<std::size_t> path;
  std::function<void(int)> rec = [&](int i) {
    if (i == ctx.p) {
      visit(path);
      return;
    }
    const bool odd = (i % 2 != 0);
    for (std::size_t k = 0; k < g.arrows.size(); ++k) {
      const auto &a = g.arrows[k];
      if (g.parity_split && a.odd_source != odd) continue;
      if (i > 1 && g.arrows[path.back()].target != a.source) continue;
      path.push_back(k);
      rec(i + 1);
      path.pop_back();
    }
  };
  rec(1);
}

/// Number of paths of length p-1 starting on the odd side (dynamic programming).
inline unsigned long long count_torsion_paths(const AlgebraContext &ctx, const TorsionGraph &g) {
  // ways[v]: number of partial paths ending at vertex v on the current side.
  std::map<DiagonalShape, unsigned long long> ways;
  for (const auto &v : g.vertices(true)) ways[v] = 1;
  for (int i = 1; i <= ctx.p - 1; ++i) {
    std::map<DiagonalShape, unsigned long long> next;
    const bool odd = (i % 2 != 0);
    for (const auto &a : g.arrows) {
      if (g.parity_split && a.odd_source != odd) continue;
      auto it = ways.find(a.source);
      if (it != ways.end()) next[a.target] += it->second;
    }
    ways = std::move(next);
  }
  unsigned long long total = 0;
  for (const auto &[v, w] : ways) total += w;
  return total;
}

/// All d-torsion classes U(chi), sorted.  Throws ConsistencyError if two paths
/// give the same class.
inline std::vector<TorsionClass> enumerate_torsion(const AlgebraContext &ctx) {
  const TorsionGraph g = torsion_graph(ctx);
  std::vector<TorsionClass> out;
  for_each_torsion_path(ctx, g, [&](const std::vector<std::size_t> &path) { out.push_back(path_to_class(ctx, g, path)); });
  const std::size_t paths = out.size();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != paths)
    throw ConsistencyError("path_to_class is not injective: " + std::to_string(paths) + " paths give " +
                           std::to_string(out.size()) + " classes");
  return out;
}

// ---------------------------------------------------------------------------
// Indexing C and module sets
// ---------------------------------------------------------------------------

using ModuleBits = boost::dynamic_bitset<>;

/// Fixed numbering of the indecomposables of C (sorted by (a,b)).
class ClusterIndex {
public:
  explicit ClusterIndex(const AlgebraContext &ctx) : modules_(cluster_indecomposables(ctx)) {}

  const std::vector<IntervalModule> &modules() const { return modules_; }
  std::size_t size() const { return modules_.size(); }

  std::optional<std::size_t> index_of(const IntervalModule &m) const {
    auto it = std::lower_bound(modules_.begin(), modules_.end(), m);
    if (it == modules_.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - modules_.begin());
  }
  /// Bitset of a list of members of C; throws std::invalid_argument for modules outside C.
  ModuleBits to_bits(const std::vector<IntervalModule> &ms) const {
    ModuleBits bits(size());
    for (const auto &m : ms) {
      auto k = index_of(m);
      if (!k) throw std::invalid_argument(to_string(m) + " is not in C");
      bits.set(*k);
    }
    return bits;
  }
  std::vector<IntervalModule> from_bits(const ModuleBits &bits) const {
    std::vector<IntervalModule> out;
    for (auto k = bits.find_first(); k != ModuleBits::npos; k = bits.find_next(k)) out.push_back(modules_[k]);
    return out;
  }

private:
  std::vector<IntervalModule> modules_;
};

// ---------------------------------------------------------------------------
// Approximations, weak cokernels and d-extensions
// ---------------------------------------------------------------------------

/// Which case of the approximation rule applies to an indecomposable X.
enum class ApproxCase {
  in_cluster,           ///< X in C: the identity
  injective_envelope,   ///< no diagonal receives a map from X: X -> I(a)
  injective_and_diagonal, ///< first such diagonal odd: X -> I(a) + M(s_i, b)
  diagonal_extension,   ///< first such diagonal even and M(a, s_i) in it: X -> M(a, s_i)
  injective_only_even,  ///< first such diagonal even otherwise: X -> I(a)
};

struct LeftApproximation {
  ApproxCase which = ApproxCase::in_cluster;
  std::vector<IntervalModule> targets; ///< components; every component map is canonical
};

/// Minimal left C-approximation of an indecomposable X = M(a,b), decided by the
/// first diagonal D_i with Hom(X, D_i) != 0 and its parity.
inline LeftApproximation min_left_approx(const AlgebraContext &ctx, const IntervalModule &x) {
  if (!ctx.valid(x)) throw std::invalid_argument(to_string(x) + " is not a module");
  if (ctx.in_cluster(x)) return {ApproxCase::in_cluster, {x}};
  const IntervalModule env = ctx.injective(x.a);
  int first = 0;
  for (int i = 1; i <= ctx.p && first == 0; ++i)
    for (int len = 1; len <= ctx.l - 1; ++len)
      if (hom_dim(x, ctx.diagonal_module(i, len)) != 0) {
        first = i;
        break;
      }
  if (first == 0) return {ApproxCase::injective_envelope, {env}};
  const int si = ctx.s_at(first);
  if (first % 2 != 0) return {ApproxCase::injective_and_diagonal, {env, IntervalModule{si, x.b}}};
  const IntervalModule ext{x.a, si};
  const auto pos = ctx.diagonal_of(ext);
  if (ctx.valid(ext) && pos && pos->diag_index == first) return {ApproxCase::diagonal_extension, {ext}};
  return {ApproxCase::injective_only_even, {env}};
}

/// Independent minimal left C-approximation: among all Y in C with Hom(X,Y) != 0,
/// keep those whose canonical map from X does not factor through another such Y'
/// (factorisation tested by composing explicit representation morphisms).
inline std::vector<IntervalModule> min_left_approx_scan(const AlgebraContext &ctx, const IntervalModule &x) {
  std::vector<IntervalModule> hit;
  for (const auto &y : cluster_indecomposables(ctx))
    if (hom_dim(x, y) != 0) hit.push_back(y);
  std::vector<IntervalModule> out;
  for (const auto &y : hit) {
    bool factors = false;
    for (const auto &mid : hit) {
      if (mid == y || hom_dim(mid, y) == 0) continue;
      const RepMorphism h = compose(canonical_map(ctx.n, mid, y), canonical_map(ctx.n, x, mid));
      for (int k = 1; k <= ctx.n && !factors; ++k)
        if (!h.comps[k].is_zero()) factors = true;
      if (factors) break;
    }
    if (!factors) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Cokernel of the canonical map X -> T_1 + ... + T_r, decomposed into
/// indecomposables.  Throws ConsistencyError when the map is not injective and
/// `require_mono` is set.
inline std::vector<IntervalModule> cokernel_of_canonical(const AlgebraContext &ctx, const IntervalModule &x,
                                                         const std::vector<IntervalModule> &targets,
                                                         bool require_mono) {
  const Representation w = direct_sum_of_intervals(ctx.n, targets);
  const Representation c = cokernel(w, canonical_map_into_sum(ctx.n, x, targets));
  if (require_mono) {
    std::size_t dim_w = 0, dim_c = 0;
    for (int k = 1; k <= ctx.n; ++k) {
      dim_w += w.dims[k];
      dim_c += c.dims[k];
    }
    if (dim_w - dim_c != static_cast<std::size_t>(x.length()))
      throw ConsistencyError("map from " + to_string(x) + " is not a monomorphism");
  }
  return decompose(c);
}

/// The two explicit families of minimal d-extensions between consecutive diagonals.
struct DExtension {
  IntervalModule left;                               ///< M
  std::vector<std::vector<IntervalModule>> middle;   ///< C_1 .. C_d (each sorted)
  std::vector<IntervalModule> right;                 ///< N (a single module for the explicit family)
};

inline void sort_terms(DExtension &e) {
  for (auto &t : e.middle) std::sort(t.begin(), t.end());
  std::sort(e.right.begin(), e.right.end());
}

/// Range of the parameter j for M in D_i (i <= p-1); empty optional if M is not
/// on such a diagonal.
inline std::optional<std::pair<int, int>> d_extension_j_range(const AlgebraContext &ctx, const IntervalModule &m) {
  const auto pos = ctx.diagonal_of(m);
  if (!pos || pos->diag_index > ctx.p - 1) return std::nullopt;
  const int si = ctx.s_at(pos->diag_index);
  if (pos->diag_index % 2 == 0) return std::make_pair(1, si - m.a + 1);
  return std::make_pair(1, ctx.l - 1 + si - m.b);
}

/// Closed-form minimal d-extension 0 -> M -> C_1 -> ... -> C_d -> N -> 0 for M
/// on diagonal i <= p-1 and parameter j.  For j = 1 the right end is tau_d^-(M).
inline DExtension minimal_d_extension(const AlgebraContext &ctx, const IntervalModule &m, int j) {
  const auto range = d_extension_j_range(ctx, m);
  if (!range) throw std::invalid_argument(to_string(m) + " is not on a diagonal D_i with i <= p-1");
  if (j < range->first || j > range->second)
    throw std::invalid_argument("j = " + std::to_string(j) + " outside [" + std::to_string(range->first) + "," +
                                std::to_string(range->second) + "]");
  const int i = ctx.diagonal_of(m)->diag_index;
  const int si = ctx.s_at(i), next = ctx.s_at(i + 1);
  const int l = ctx.l, d = ctx.d;
  DExtension e;
  e.left = m;
  e.middle.resize(d);
  auto inj = [&](int q) { return ctx.injective(q); };
  if (i % 2 == 0) {
    const int a = m.a;
    e.middle[0].push_back(inj(a));
    if (a + j <= si) e.middle[0].push_back({a + j, si});
    for (int k = 2; k <= d; ++k) e.middle[k - 1].push_back(inj(a + ((k - 1) / 2) * l + (k % 2 == 0 ? j : 0)));
    if (next <= a + ctx.half_dl() - 1) e.middle[d - 1].push_back({next, a + ctx.half_dl() - 1});
    e.right.push_back({next, a + ctx.half_dl() - 1 + j});
  } else {
    const int b = m.b;
    e.middle[0].push_back({si, b + j});
    for (int k = 2; k <= d - 1; ++k) e.middle[k - 1].push_back(inj(b + 1 + ((k - 2) / 2) * l + (k % 2 != 0 ? j : 0)));
    e.middle[d - 1].push_back({b + (d - 2) * l / 2 + 1, si + ctx.half_dl()});
    e.right.push_back({b + (d - 2) * l / 2 + 1 + j, si + ctx.half_dl()});
  }
  sort_terms(e);
  return e;
}

/// Memoised C-approximations and cokernels used by the oracle; all results come
/// from min_left_approx_scan and explicit representations.
class ApproximationCache {
public:
  explicit ApproximationCache(const AlgebraContext &ctx) : ctx_(ctx) {}

  /// (targets of the minimal left C-approximation of K, cokernel of K -> targets).
  const std::pair<std::vector<IntervalModule>, std::vector<IntervalModule>> &step(const IntervalModule &k) {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    auto targets = min_left_approx_scan(ctx_, k);
    auto coker = cokernel_of_canonical(ctx_, k, targets, true);
    return cache_.emplace(k, std::make_pair(std::move(targets), std::move(coker))).first->second;
  }

  /// One weak-cokernel step applied summandwise: returns (A(K), coker(K -> A(K))).
  std::pair<std::vector<IntervalModule>, std::vector<IntervalModule>> step_sum(const std::vector<IntervalModule> &ks) {
    std::vector<IntervalModule> approx, coker;
    for (const auto &k : ks) {
      const auto &s = step(k);
      approx.insert(approx.end(), s.first.begin(), s.first.end());
      coker.insert(coker.end(), s.second.begin(), s.second.end());
    }
    std::sort(approx.begin(), approx.end());
    std::sort(coker.begin(), coker.end());
    return {approx, coker};
  }

private:
  AlgebraContext ctx_;
  std::map<IntervalModule, std::pair<std::vector<IntervalModule>, std::vector<IntervalModule>>> cache_;
};

/// Terms U_1..U_d of the d-cokernel of the canonical map f: M -> U, built by
/// iterating cokernel-then-minimal-left-approximation.  Throws ConsistencyError
/// if the iteration does not stop after d steps.
inline std::vector<std::vector<IntervalModule>> d_cokernel_terms(const AlgebraContext &ctx, ApproximationCache &cache,
                                                                 const IntervalModule &m, const IntervalModule &u) {
  std::vector<IntervalModule> k = cokernel_of_canonical(ctx, m, {u}, false);
  std::vector<std::vector<IntervalModule>> terms;
  for (int step = 1; step <= ctx.d; ++step) {
    auto [approx, coker] = cache.step_sum(k);
    terms.push_back(std::move(approx));
    k = std::move(coker);
  }
  if (!k.empty())
    throw ConsistencyError("d-cokernel of " + to_string(m) + " -> " + to_string(u) + " has more than d terms");
  return terms;
}

/// The d-extension determined by its first map M -> C_1 (canonical components):
/// C_{k+1} is the minimal left C-approximation of coker(C_{k-1} -> C_k) and N is the
/// final cokernel.
inline DExtension d_extension_from_first_term(const AlgebraContext &ctx, ApproximationCache &cache,
                                              const IntervalModule &m, const std::vector<IntervalModule> &c1) {
  DExtension e;
  e.left = m;
  e.middle.push_back(c1);
  std::vector<IntervalModule> k = cokernel_of_canonical(ctx, m, c1, true);
  for (int step = 2; step <= ctx.d; ++step) {
    auto [approx, coker] = cache.step_sum(k);
    e.middle.push_back(std::move(approx));
    k = std::move(coker);
  }
  e.right = k;
  sort_terms(e);
  return e;
}

// ---------------------------------------------------------------------------
// Closure oracle
// ---------------------------------------------------------------------------

struct TorsionReport {
  bool torsion = true;
  std::vector<std::string> violations;
};

/// Decides closure of a subset of C under d-quotients of canonical maps between
/// indecomposables and under the explicit minimal d-extensions between
/// consecutive diagonals.  All tables are computed once per context.
class TorsionOracle {
public:
  struct QuotientCheck {
    IntervalModule source, target;
    std::vector<std::vector<IntervalModule>> terms;
    ModuleBits required;
  };
  struct ExtensionCheck {
    DExtension ext;
    int j = 0;
    std::size_t left = 0, right = 0;
    ModuleBits required;
  };

  explicit TorsionOracle(const AlgebraContext &ctx) : ctx_(ctx), index_(ctx), cache_(ctx) {
    const auto &cs = index_.modules();
    for (const auto &u : cs)
      for (const auto &m : cs) {
        if (m == u || hom_dim(m, u) == 0) continue;
        QuotientCheck q{m, u, d_cokernel_terms(ctx, cache_, m, u), ModuleBits(index_.size())};
        for (const auto &t : q.terms) q.required |= index_.to_bits(t);
        quotients_.push_back(std::move(q));
      }
    for (const auto &m : cs) {
      const auto range = d_extension_j_range(ctx, m);
      if (!range) continue;
      for (int j = range->first; j <= range->second; ++j) {
        const DExtension closed = minimal_d_extension(ctx, m, j);
        DExtension e = d_extension_from_first_term(ctx, cache_, m, closed.middle[0]);
        if (e.right.size() != 1)
          throw ConsistencyError("d-extension from " + to_string(m) + " does not end in an indecomposable");
        ExtensionCheck c{e, j, *index_.index_of(m), 0, ModuleBits(index_.size())};
        auto r = index_.index_of(e.right[0]);
        if (!r) throw ConsistencyError(to_string(e.right[0]) + " ends a d-extension but is not in C");
        c.right = *r;
        for (const auto &t : e.middle) c.required |= index_.to_bits(t);
        extensions_.push_back(std::move(c));
      }
    }
  }

  const AlgebraContext &context() const { return ctx_; }
  const ClusterIndex &index() const { return index_; }
  const std::vector<QuotientCheck> &quotients() const { return quotients_; }
  const std::vector<ExtensionCheck> &extensions() const { return extensions_; }

  TorsionReport check(const ModuleBits &u, bool stop_early = false) const {
    TorsionReport rep;
    auto fail = [&](std::string msg) {
      rep.torsion = false;
      rep.violations.push_back(std::move(msg));
    };
    for (const auto &q : quotients_) {
      if (!u.test(*index_.index_of(q.target)) || q.required.is_subset_of(u)) continue;
      fail("d-quotient: the d-cokernel of " + to_string(q.source) + " -> " + to_string(q.target) + " needs " +
           first_missing(q.required, u));
      if (stop_early) return rep;
    }
    for (const auto &c : extensions_) {
      if (!u.test(c.left) || !u.test(c.right) || c.required.is_subset_of(u)) continue;
      fail("d-extension: " + to_string(c.ext.left) + " ~> " + to_string(c.ext.right[0]) + " (j=" +
           std::to_string(c.j) + ") needs " + first_missing(c.required, u));
      if (stop_early) return rep;
    }
    return rep;
  }

  TorsionReport check(const std::vector<IntervalModule> &u, bool stop_early = false) const {
    for (const auto &m : u)
      if (!index_.index_of(m)) return {false, {to_string(m) + " is not in C"}};
    return check(index_.to_bits(u), stop_early);
  }

private:
  std::string first_missing(const ModuleBits &need, const ModuleBits &have) const {
    const ModuleBits miss = need - have;
    return to_string(index_.modules()[miss.find_first()]);
  }

  AlgebraContext ctx_;
  ClusterIndex index_;
  ApproximationCache cache_;
  std::vector<QuotientCheck> quotients_;
  std::vector<ExtensionCheck> extensions_;
};

/// Decides the defining property of a d-torsion class directly: every
/// indecomposable C of C admits a d-extension 0 -> U -> C -> C_1 -> ... -> C_d -> 0
/// with U in the subcategory and Hom(U', C_1 -> ... -> C_d) exact for all U' in it.
/// Such a U -> C is necessarily the minimal right approximation (which must then be
/// a monomorphism) and C -> C_1 -> ... its d-cokernel.  Exactness of Hom(U', -) is
/// read off the short exact pieces 0 -> K_k -> C_k -> K_{k+1} -> 0: it holds iff
/// Hom(U', K_1) = 0 and dim Hom(U', C_k) = dim Hom(U', K_k) + dim Hom(U', K_{k+1}).
class DefinitionOracle {
public:
  explicit DefinitionOracle(const AlgebraContext &ctx) : ctx_(ctx), index_(ctx), cache_(ctx) {}

  const ClusterIndex &index() const { return index_; }

  TorsionReport check(const ModuleBits &u, bool stop_early = false) const {
    TorsionReport rep;
    const auto &cs = index_.modules();
    const std::vector<IntervalModule> sub = index_.from_bits(u);
    auto hom_into = [&](const IntervalModule &x, const std::vector<IntervalModule> &ys) {
      int total = 0;
      for (const auto &y : ys) total += hom_dim(x, y);
      return total;
    };
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
      if (u.test(ci)) continue;
      const IntervalModule c = cs[ci];
      std::string problem = sequence_problem(c, sub, hom_into);
      if (problem.empty()) continue;
      rep.torsion = false;
      rep.violations.push_back(to_string(c) + ": " + problem);
      if (stop_early) break;
    }
    return rep;
  }

  TorsionReport check(const std::vector<IntervalModule> &u, bool stop_early = false) const {
    for (const auto &m : u)
      if (!index_.index_of(m)) return {false, {to_string(m) + " is not in C"}};
    return check(index_.to_bits(u), stop_early);
  }

private:
  template <class HomInto>
  std::string sequence_problem(const IntervalModule &c, const std::vector<IntervalModule> &sub,
                               const HomInto &hom_into) const {
    const int n = ctx_.n;
    // Minimal right approximation of c by the subcategory.
    std::vector<IntervalModule> cands, approx;
    for (const auto &y : sub)
      if (hom_dim(y, c) != 0) cands.push_back(y);
    for (const auto &y : cands) {
      bool factors = false;
      for (const auto &mid : cands) {
        if (mid == y || hom_dim(y, mid) == 0) continue;
        if (image_dim(compose(canonical_map(n, mid, c), canonical_map(n, y, mid))) != 0) {
          factors = true;
          break;
        }
      }
      if (!factors) approx.push_back(y);
    }
    std::size_t dim_u = 0;
    for (const auto &y : approx) dim_u += static_cast<std::size_t>(y.length());
    const RepMorphism f = canonical_map_from_sum(n, approx, c);
    if (image_dim(f) != dim_u) return "the right approximation is not a monomorphism";
    std::vector<IntervalModule> k = decompose(cokernel(interval_rep(n, c), f));
    for (const auto &y : sub)
      if (hom_into(y, k) != 0) return "Hom(" + to_string(y) + ", coker) != 0";
    for (int step = 1; step <= ctx_.d; ++step) {
      auto [term, next] = cache_.step_sum(k);
      for (const auto &y : sub)
        if (hom_into(y, term) != hom_into(y, k) + hom_into(y, next))
          return "Hom(" + to_string(y) + ", -) is not exact at term " + std::to_string(step);
      k = std::move(next);
    }
    if (!k.empty()) throw ConsistencyError("d-cokernel of the approximation of " + to_string(c) + " is too long");
    return {};
  }

  AlgebraContext ctx_;
  ClusterIndex index_;
  mutable ApproximationCache cache_;
};

/// Convenience wrapper building a fresh oracle.
inline TorsionReport is_torsion_oracle(const AlgebraContext &ctx, const std::vector<IntervalModule> &u) {
  return TorsionOracle(ctx).check(u);
}

// ---------------------------------------------------------------------------
// Lattice
// ---------------------------------------------------------------------------

struct TorsionLattice {
  std::vector<TorsionClass> classes;
  std::vector<ModuleBits> bits;                          ///< member sets, parallel to classes
  std::vector<std::pair<std::size_t, std::size_t>> hasse; ///< (lower, upper) covering pairs
};

/// Containment order on the classes and its covering relation.
inline TorsionLattice torsion_lattice(const AlgebraContext &ctx, std::vector<TorsionClass> classes) {
  const ClusterIndex index(ctx);
  TorsionLattice lat;
  lat.classes = std::move(classes);
  for (const auto &c : lat.classes) lat.bits.push_back(index.to_bits(members(ctx, c)));
  const std::size_t n = lat.classes.size();
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::make_pair(lat.bits[x].count(), x) < std::make_pair(lat.bits[y].count(), y);
  });
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<std::size_t> covers;
    for (std::size_t v : order) {
      if (v == u || !lat.bits[u].is_proper_subset_of(lat.bits[v])) continue;
      bool above_cover = false;
      for (std::size_t c : covers)
        if (lat.bits[c].is_proper_subset_of(lat.bits[v])) {
          above_cover = true;
          break;
        }
      if (!above_cover) covers.push_back(v);
    }
    for (std::size_t v : covers) lat.hasse.emplace_back(u, v);
  }
  std::sort(lat.hasse.begin(), lat.hasse.end());
  return lat;
}

/// Index of the smallest class containing every module in `ms` (the intersection of
/// all classes containing them).  Throws ConsistencyError if that intersection is
/// not itself one of the classes.
inline std::size_t smallest_containing(const AlgebraContext &ctx, const TorsionLattice &lat,
                                       const std::vector<IntervalModule> &ms) {
  const ClusterIndex index(ctx);
  const ModuleBits need = index.to_bits(ms);
  ModuleBits meet(index.size());
  meet.set();
  for (const auto &b : lat.bits)
    if (need.is_subset_of(b)) meet &= b;
  for (std::size_t k = 0; k < lat.bits.size(); ++k)
    if (lat.bits[k] == meet) return k;
  throw ConsistencyError("intersection of torsion classes is not a torsion class");
}

} // namespace taud

#endif // TAUD_TORSION_HPP
