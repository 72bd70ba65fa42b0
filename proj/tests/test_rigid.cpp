#include "taud/counting.hpp"
#include "taud/rigid.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace taud;
using taud::testing::contexts_up_to;
using taud::testing::label;

namespace {

/// Contexts small enough for exhaustive walks over all rigid pairs.
std::vector<AlgebraContext> walkable_contexts() {
  std::vector<AlgebraContext> out;
  for (const auto &ctx : contexts_up_to(13))
    if (CompatibilityTable(ctx).size() <= 40) out.push_back(ctx);
  return out;
}

CPair random_pair(const AlgebraContext &ctx, std::mt19937 &rng) {
  CPair pair;
  const auto cs = cluster_indecomposables(ctx);
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<std::size_t> pick(0, cs.size() - 1);
  std::uniform_int_distribution<int> index(1, ctx.n);
  for (int k = count(rng); k > 0; --k) pair.rigid_part.push_back(cs[pick(rng)]);
  pair.normalize();
  for (int k = count(rng); k > 0; --k) {
    const int b = index(rng);
    if (!std::binary_search(pair.rigid_part.begin(), pair.rigid_part.end(), ctx.projective(b)))
      pair.support_part.push_back(b);
  }
  pair.normalize();
  return pair;
}

} // namespace

TEST(Rigidity, CriterionAgreesWithTableAndHomVanishingEverywhere) {
  // Every rigid pair and every one-summand extension of one is classified
  // identically by the combinatorial criterion, the pairwise table and the
  // direct Hom-vanishing test.
  for (const auto &ctx : walkable_contexts()) {
    SCOPED_TRACE(label(ctx));
    const CompatibilityTable table(ctx);
    std::size_t leaves = 0;
    bool ok = true;
    walk_cpairs(
        ctx, table,
        [&](const PairState &st, const ItemSet &present, int item) {
          const bool by_table = (present & ~table.row(item)).none();
          const bool by_criterion = is_rigid_pair(ctx, st).rigid;
          const bool by_hom = is_rigid_pair_oracle(ctx, to_cpair(ctx, st));
          if (by_table != by_criterion || by_table != by_hom) {
            ADD_FAILURE() << "disagreement at item " << item << " (table " << by_table << ", criterion "
                          << by_criterion << ", Hom vanishing " << by_hom << ")";
            ok = false;
          }
          return by_table && ok;
        },
        [&](const PairState &) {
          ++leaves;
          return ok;
        });
    EXPECT_EQ(leaves, enumerate_rigid_states(ctx).size());
  }
}

TEST(Rigidity, RandomPairsAgreeWithHomVanishing) {
  std::mt19937 rng(20240611);
  for (const auto &ctx : contexts_up_to(40)) {
    SCOPED_TRACE(label(ctx));
    for (int trial = 0; trial < 400; ++trial) {
      const CPair pair = random_pair(ctx, rng);
      const auto rep = is_rigid_pair(ctx, pair);
      ASSERT_EQ(rep.rigid, is_rigid_pair_oracle(ctx, pair));
      ASSERT_EQ(rep.rigid, rep.violations.empty());
    }
  }
}

TEST(Rigidity, HereditaryUnderRemovingSummands) {
  std::mt19937 rng(7);
  for (const auto &ctx : contexts_up_to(30)) {
    for (int trial = 0; trial < 100; ++trial) {
      CPair pair = random_pair(ctx, rng);
      if (!is_rigid_pair(ctx, pair).rigid) continue;
      while (!pair.rigid_part.empty()) {
        pair.rigid_part.pop_back();
        ASSERT_TRUE(is_rigid_pair(ctx, pair).rigid);
      }
    }
  }
}

TEST(Rigidity, WorkedConstructionOnFourDiagonals) {
  const auto ctx = make_context(23, 4, 4);
  // A length-2 summand on D_3 bounds the lengths on D_2 by 1.
  const CPair bad{{{8, 9}, {15, 16}}, {}};
  const auto rep = is_rigid_pair(ctx, bad);
  ASSERT_FALSE(rep.rigid);
  bool b1 = false;
  for (const auto &v : rep.violations) b1 = b1 || v.clause == "(b1)";
  EXPECT_TRUE(b1);
  EXPECT_FALSE(is_rigid_pair_oracle(ctx, bad));

  const CPair good{{{9, 9}, {15, 16}, {21, 23}}, {}};
  EXPECT_TRUE(is_rigid_pair(ctx, good).rigid);
  EXPECT_TRUE(is_rigid_pair_oracle(ctx, good));
}

TEST(Rigidity, NaiveCompletionFailsForThreeConsecutiveDiagonals) {
  // With summands on three consecutive diagonals and d > 2 no completion reaches
  // |Lambda| = 23 summands; 22 is the best possible.
  const auto ctx = make_context(23, 4, 4);
  const std::vector<IntervalModule> seed{{9, 9}, {15, 16}, {21, 23}};
  const CPair greedy = greedy_completion(ctx, seed);
  EXPECT_TRUE(is_rigid_pair_oracle(ctx, greedy));
  EXPECT_TRUE(is_maximal_rigid(ctx, greedy));
  EXPECT_LT(greedy.summand_count(), 23u);

  // Filling the indices with projective summands only, or with support only,
  // reaches 20 summands each.
  CPair all_rigid{seed, {}}, all_support{seed, {}};
  for (int k = 1; k <= ctx.n; ++k) {
    CPair trial = all_rigid;
    trial.rigid_part.push_back(ctx.projective(k));
    if (is_rigid_pair_oracle(ctx, trial)) all_rigid = trial;
    trial = all_support;
    trial.support_part.push_back(k);
    if (is_rigid_pair_oracle(ctx, trial)) all_support = trial;
  }
  EXPECT_EQ(all_rigid.summand_count(), 20u);
  EXPECT_EQ(all_support.summand_count(), 20u);

  const CompatibilityTable table(ctx);
  ItemSet seed_items;
  for (const auto &m : seed) {
    const auto pos = ctx.diagonal_of(m);
    seed_items.set(table.diag_item(pos->diag_index, pos->length));
  }
  auto best_with_seed = [&](int min_size) {
    int best = -1;
    walk_cpairs(
        ctx, table,
        [&](const PairState &, const ItemSet &present, int item) {
          return (present & ~table.row(item)).none() && (seed_items & ~table.row(item)).none();
        },
        [&](const PairState &st) {
          bool contains = true;
          for (const auto &m : seed) {
            const auto pos = ctx.diagonal_of(m);
            contains = contains && has(st.X[pos->diag_index], pos->length);
          }
          if (contains) best = std::max(best, st.summand_count());
          return true;
        },
        min_size);
    return best;
  };
  EXPECT_EQ(best_with_seed(22), 22);
  EXPECT_EQ(best_with_seed(23), -1);
}

TEST(Rigidity, InvalidInputIsRejected) {
  const auto ctx = make_context(23, 4, 4);
  EXPECT_THROW(to_state(ctx, CPair{{{2, 3}}, {}}), std::invalid_argument); // not in C
  EXPECT_THROW(to_state(ctx, CPair{{}, {24}}), std::invalid_argument);
  EXPECT_THROW(to_state(ctx, CPair{{ctx.projective(5)}, {5}}), std::invalid_argument);
  EXPECT_FALSE(is_rigid_pair_oracle(ctx, CPair{{{2, 3}}, {}}));
}

TEST(SummandMaximal, GenerationSearchAndBoundAgree) {
  // The well-configured description, the exhaustive search for rigid pairs with
  // n summands and the maximum summand count all agree.
  for (const auto &ctx : contexts_up_to(18)) {
    if (ctx.n == 18 && ctx.l == 3) continue; // exercised separately below
    SCOPED_TRACE(label(ctx));
    const auto generated = generate_well_configured(ctx);
    const auto searched = enumerate_rigid_states(ctx, ctx.n);
    EXPECT_EQ(generated, searched);
    EXPECT_EQ(max_rigid_summands(ctx), ctx.n);
    for (const auto &st : generated) {
      const CPair pair = to_cpair(ctx, st);
      ASSERT_EQ(pair.summand_count(), static_cast<std::size_t>(ctx.n));
      ASSERT_TRUE(is_rigid_pair_oracle(ctx, pair));
      ASSERT_TRUE(is_maximal_rigid(ctx, pair));
      ASSERT_TRUE(is_well_configured(ctx, st).well_configured);
    }
  }
}

TEST(SummandMaximal, WellConfiguredIffSummandMaximalOnRigidPairs) {
  for (const auto &ctx : walkable_contexts()) {
    SCOPED_TRACE(label(ctx));
    for (const auto &st : enumerate_rigid_states(ctx))
      ASSERT_EQ(is_well_configured(ctx, st).well_configured, st.summand_count() == ctx.n);
  }
}

TEST(SummandMaximal, Counts) {
  EXPECT_EQ(enumerate_summand_maximal(make_context(4, 3, 2)).size(), 10u);
  EXPECT_EQ(enumerate_summand_maximal(make_context(9, 3, 2)).size(), 160u);
  EXPECT_EQ(enumerate_summand_maximal(make_context(13, 5, 2)).size(), 398u);
  EXPECT_EQ(enumerate_summand_maximal(make_context(18, 3, 4)).size(), 742u);
}

TEST(SummandMaximal, ClosedFormsWhereClaimed) {
  for (const auto &ctx : contexts_up_to(20)) {
    const auto formula = summand_maximal_formula(ctx);
    if (!formula) continue;
    SCOPED_TRACE(label(ctx));
    EXPECT_EQ(static_cast<long long>(generate_well_configured(ctx).size()), *formula);
  }
}

TEST(SummandMaximal, SmallestExampleTypes) {
  const auto ctx = make_context(4, 3, 2);
  std::map<std::string, int> tags;
  for (const auto &st : generate_well_configured(ctx)) {
    const auto rep = is_well_configured(ctx, st);
    if (rep.types.empty()) ++tags["(a)"];
    for (const auto &t : rep.types) ++tags[to_string(t.tag)];
  }
  EXPECT_EQ(tags, (std::map<std::string, int>{{"(a)", 5}, {"I", 1}, {"II", 1}, {"III", 3}}));
}

TEST(SummandMaximal, TypeThreeSupportToRigid) {
  const auto ctx = make_context(23, 4, 4);
  CPair pair{{{15, 15}, {15, 16}, {15, 17}}, {}};
  for (int k = 16; k <= 23; ++k) pair.rigid_part.push_back(ctx.projective(k));
  for (int k = 1; k <= 12; ++k) pair.support_part.push_back(k);
  pair.normalize();
  ASSERT_EQ(pair.summand_count(), 23u);
  EXPECT_TRUE(is_rigid_pair_oracle(ctx, pair));
  const auto rep = is_well_configured(ctx, pair);
  ASSERT_TRUE(rep.well_configured) << rep.clause << " " << rep.detail;
  ASSERT_EQ(rep.types.size(), 1u);
  EXPECT_EQ(rep.types[0].tag, AdmissibleTag::III);
  const auto mk = markers(ctx, pair);
  ASSERT_EQ(mk.runs.size(), 1u);
  EXPECT_EQ(mk.runs[0], (Span{3, 3}));
  EXPECT_EQ(mk.xi[0], (Span{7, 17}));
}

TEST(Enumeration, LimitIsEnforced) {
  EXPECT_THROW(enumerate_rigid(make_context(9, 3, 2), 100), LimitExceeded);
  EXPECT_EQ(enumerate_rigid(make_context(4, 3, 2)).size(), 81u);
}
