// Walk-through of the library on Lambda(9,3) with d = 2: the d-cluster tilting
// subcategory, a rigidity check, the summand-maximal pairs, the d-torsion
// classes and the silting test for one pair.

#include "taud/counting.hpp"
#include "taud/io.hpp"
#include "taud/mutation.hpp"
#include "taud/rigid.hpp"
#include "taud/silting.hpp"
#include "taud/torsion.hpp"

#include <iostream>

int main() {
  using namespace taud;
  const AlgebraContext ctx = make_context(9, 3, 2);
  std::cout << "Lambda(9,3), d=2: p = " << ctx.p << " diagonals, |C| = " << cluster_indecomposables(ctx).size()
            << "\n";

  const auto tau = tau_d(ctx, {6, 7});
  std::cout << "tau_2 M(6,7) = " << (tau ? to_string(*tau) : "0") << "\n";

  CPair pair{{ctx.projective(1), {6, 6}}, {9}};
  pair.normalize();
  const RigidityReport rigid = is_rigid_pair(ctx, pair);
  std::cout << pair_signature(pair) << " is " << (rigid.rigid ? "" : "not ") << "tau_2-rigid\n";

  const auto maximal = enumerate_summand_maximal(ctx);
  std::cout << maximal.size() << " summand-maximal pairs (closed form " << *summand_maximal_formula(ctx) << ")\n";

  const auto classes = enumerate_torsion(ctx);
  std::cout << classes.size() << " d-torsion classes\n";

  const CPair &first = maximal.front();
  const SiltingStatus st = silting_status(ctx, first);
  std::cout << pair_signature(first) << ": presilting " << st.presilting << ", silting " << st.silting << "\n";

  const auto g = build_mutation_graph(ctx);
  std::cout << "mutation graph: " << g.vertices.size() << " vertices, " << g.edges.size() << " edges, connected "
            << graph_stats(ctx, g).connected << "\n";
  return rigid.rigid && st.silting && maximal.size() == 160 ? 0 : 1;
}
