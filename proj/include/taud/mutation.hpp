#ifndef TAUD_MUTATION_HPP
#define TAUD_MUTATION_HPP

// The mutation graph of summand-maximal tau_d-rigid pairs, its statistics, and
// the comparison between summand-maximal pairs and d-torsion classes via
// Ext^d-projectives.

#include "algebra.hpp"
#include "rigid.hpp"
#include "torsion.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace taud {

/// A summand of a C-pair: a module of M (is_support = false) or an index of P.
struct PairSummand {
  bool is_support = false;
  IntervalModule module{};
  int index = 0;

  friend auto operator<=>(const PairSummand &, const PairSummand &) = default;
  friend bool operator==(const PairSummand &, const PairSummand &) = default;
};

inline std::vector<PairSummand> summands_of(const CPair &pair) {
  std::vector<PairSummand> out;
  for (const auto &m : pair.rigid_part) out.push_back({false, m, 0});
  for (int b : pair.support_part) out.push_back({true, {}, b});
  std::sort(out.begin(), out.end());
  return out;
}

struct MutationGraph {
  std::vector<CPair> vertices;                            ///< summand-maximal pairs, canonical order
  std::vector<std::pair<std::size_t, std::size_t>> edges; ///< (u, v) with u < v, sorted
  /// For every almost complete pair (one summand removed from a vertex), the
  /// number of vertices completing it; keyed by the sorted remaining summands.
  std::map<std::vector<PairSummand>, std::size_t> completions;

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertices.size());
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }
};

/// Vertices are the summand-maximal pairs; two are joined iff they share n-1
/// summands, i.e. differ in exactly one summand.
inline MutationGraph build_mutation_graph(const AlgebraContext &ctx) {
  MutationGraph g;
  g.vertices = enumerate_summand_maximal(ctx);
  std::map<std::vector<PairSummand>, std::vector<std::size_t>> buckets;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto all = summands_of(g.vertices[v]);
    for (std::size_t drop = 0; drop < all.size(); ++drop) {
      std::vector<PairSummand> rest;
      for (std::size_t k = 0; k < all.size(); ++k)
        if (k != drop) rest.push_back(all[k]);
      buckets[rest].push_back(v);
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto &[key, vs] : buckets) {
    g.completions[key] = vs.size();
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) edges.insert(std::minmax(vs[a], vs[b]));
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

/// Diagonal partition and admissible types of a vertex.
struct VertexAnnotation {
  std::size_t vertex = 0;
  std::size_t degree = 0;
  std::vector<Span> runs;           ///< the diagonal partition T_1, ..., T_k
  std::vector<AdmissibleTag> types; ///< admissible type per run
};

inline VertexAnnotation annotate_vertex(const AlgebraContext &ctx, const MutationGraph &g, std::size_t v,
                                        std::size_t degree) {
  VertexAnnotation a;
  a.vertex = v;
  a.degree = degree;
  const PairState st = to_state(ctx, g.vertices[v]);
  a.runs = markers(ctx, st).runs;
  for (const auto &t : is_well_configured(ctx, st).types) a.types.push_back(t.tag);
  return a;
}

struct GraphStats {
  bool connected = true;
  std::map<std::size_t, std::size_t> degree_histogram; ///< degree -> number of vertices
  std::vector<VertexAnnotation> max_degree_vertices;
  std::map<std::size_t, std::size_t> completion_histogram; ///< completions per almost complete pair -> count
};

inline GraphStats graph_stats(const AlgebraContext &ctx, const MutationGraph &g) {
  GraphStats s;
  const auto adj = g.adjacency();
  const std::size_t nv = g.vertices.size();
  if (nv > 0) {
    std::vector<bool> seen(nv, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
    }
    s.connected = reached == nv;
  }
  std::size_t max_deg = 0;
  for (const auto &a : adj) {
    ++s.degree_histogram[a.size()];
    max_deg = std::max(max_deg, a.size());
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (adj[v].size() == max_deg) s.max_degree_vertices.push_back(annotate_vertex(ctx, g, v, max_deg));
  for (const auto &kv : g.completions) ++s.completion_histogram[kv.second];
  return s;
}

/// Whether the graph is one cycle through all vertices.
inline bool is_single_cycle(const MutationGraph &g) {
  const auto adj = g.adjacency();
  if (g.vertices.size() < 3) return false;
  for (const auto &a : adj)
    if (a.size() != 2) return false;
  std::size_t prev = g.vertices.size(), cur = 0, steps = 0;
  do {
    const std::size_t next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
    ++steps;
  } while (cur != 0 && steps <= g.vertices.size());
  return cur == 0 && steps == g.vertices.size();
}

// ---------------------------------------------------------------------------
// Comparison with d-torsion classes
// ---------------------------------------------------------------------------

/// The pair attached to a subcategory U of C: M = the Ext^d-projectives of U
/// (X in U with Ext^d(X, U) = 0) and P = the projectives P(k) with Hom(P(k), U) = 0.
inline CPair ext_projective_pair(const AlgebraContext &ctx, const std::vector<IntervalModule> &u) {
  CPair pair;
  for (const auto &x : u) {
    bool ext_proj = true;
    for (const auto &y : u)
      if (ext_dim(ctx, x, y, ctx.d) != 0) {
        ext_proj = false;
        break;
      }
    if (ext_proj) pair.rigid_part.push_back(x);
  }
  for (int k = 1; k <= ctx.n; ++k) {
    bool vanishes = true;
    for (const auto &y : u)
      if (hom_dim(ctx.projective(k), y) != 0) vanishes = false;
    if (vanishes) pair.support_part.push_back(k);
  }
  pair.normalize();
  return pair;
}

/// The vertices (P([1,x]), P([x+1,n])) with 2 <= x <= n-1.
inline bool is_split_projective_vertex(const AlgebraContext &ctx, const CPair &pair) {
  const int x = static_cast<int>(pair.rigid_part.size());
  if (x < 2 || x > ctx.n - 1 || pair.summand_count() != static_cast<std::size_t>(ctx.n)) return false;
  for (int k = 1; k <= x; ++k)
    if (pair.rigid_part[k - 1] != ctx.projective(k)) return false;
  for (int k = x + 1; k <= ctx.n; ++k)
    if (pair.support_part[k - x - 1] != k) return false;
  return true;
}

/// Summary of the map from summand-maximal pairs to d-torsion classes given by
/// (M, P) -> smallest class containing M.
struct LatticeComparison {
  std::size_t vertices = 0;
  std::size_t classes = 0;
  std::size_t removed = 0;            ///< split-projective vertices set aside
  std::size_t image_size = 0;         ///< distinct classes reached by the remaining vertices
  bool injective_on_remaining = false;
  std::size_t ext_projective_agree = 0; ///< classes U whose Ext^d-projective pair is a vertex recovering U
};

inline LatticeComparison compare_with_torsion(const AlgebraContext &ctx, const MutationGraph &g,
                                              const TorsionLattice &lat) {
  LatticeComparison cmp;
  cmp.vertices = g.vertices.size();
  cmp.classes = lat.classes.size();
  std::map<std::size_t, std::size_t> hits;
  for (const auto &v : g.vertices) {
    if (is_split_projective_vertex(ctx, v)) {
      ++cmp.removed;
      continue;
    }
    ++hits[smallest_containing(ctx, lat, v.rigid_part)];
  }
  cmp.image_size = hits.size();
  cmp.injective_on_remaining = true;
  for (const auto &kv : hits)
    if (kv.second != 1) cmp.injective_on_remaining = false;
  std::set<std::vector<PairSummand>> vertex_keys;
  for (const auto &v : g.vertices) vertex_keys.insert(summands_of(v));
  for (std::size_t c = 0; c < lat.classes.size(); ++c) {
    const CPair pair = ext_projective_pair(ctx, members(ctx, lat.classes[c]));
    if (!vertex_keys.count(summands_of(pair))) continue;
    if (smallest_containing(ctx, lat, pair.rigid_part) == c) ++cmp.ext_projective_agree;
  }
  return cmp;
}

} // namespace taud

#endif // TAUD_MUTATION_HPP
