#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "simon/error.hpp"
#include "simon/hsp.hpp"
#include "support.hpp"

using namespace simon;
using namespace simon::test;

namespace {

std::vector<std::vector<int>> all_tuples(int order, int n) {
  std::vector<std::vector<int>> out;
  for_each_label(n, order, [&](const ProductLabel& l) { out.push_back(l); });
  return out;
}

}  // namespace

TEST(Instance, RejectsMalformedInput) {
  EXPECT_THROW(instance("S3", 2, "(123)"), ValidationError);       // mu not an involution
  EXPECT_THROW(instance("S3", 2, "(12)", "(12)"), ValidationError);  // wrong arity
  EXPECT_THROW(instance("S3", 2, "(12)", "(12),(123)"), ValidationError);
  EXPECT_THROW(instance("S3", 2, "(12)", "e,e"), ValidationError);  // H = 1 must be given as trivial
  EXPECT_NO_THROW(instance("S3", 2, "(12)", "(23),e"));
  EXPECT_THROW(instance("Z3", 1, "a"), ValidationError);
}

TEST(Oracle, TrivialHiddenIsInjective) {
  for (const char* name : {"Z2", "Z4", "S3"}) {
    const auto inst = instance(name, 2, group(name).name(involutions(group(name)).front()));
    std::set<std::uint64_t> seen;
    for (const auto& g : all_tuples(group(name).order(), 2)) EXPECT_TRUE(seen.insert(oracle_eval(inst, g)).second);
  }
}

TEST(Oracle, ConstantOnCosets) {
  const auto inst = instance("S3", 2, "(12)", "(13),(23)");
  const auto& g = inst.group();
  std::set<std::uint64_t> values;
  for (const auto& x : all_tuples(6, 2)) {
    std::vector<int> xm{g.mul(x[0], inst.m(0)), g.mul(x[1], inst.m(1))};
    EXPECT_EQ(oracle_eval(inst, x), oracle_eval(inst, xm));
    values.insert(oracle_eval(inst, x));
  }
  EXPECT_EQ(values.size(), 18u);
}

TEST(Oracle, KleinCosets) {
  const auto inst = instance("Z2", 2, "a", "a,a");
  EXPECT_EQ(oracle_eval(inst, std::vector<int>{0, 0}), oracle_eval(inst, std::vector<int>{1, 1}));
  EXPECT_EQ(oracle_eval(inst, std::vector<int>{0, 1}), oracle_eval(inst, std::vector<int>{1, 0}));
  EXPECT_NE(oracle_eval(inst, std::vector<int>{0, 0}), oracle_eval(inst, std::vector<int>{0, 1}));
  EXPECT_EQ(h_perp(inst).size(), 2u);
}

TEST(ModifiedOracle, Examples) {
  const auto inst = instance("S3", 3, "(12)", "(13),e,(23)");
  EXPECT_FALSE(modified_oracle(inst, 0, elem("S3", "(13)")).trivial());
  EXPECT_EQ(modified_oracle(inst, 0, elem("S3", "(13)")).m(), inst.m());
  EXPECT_TRUE(modified_oracle(inst, 0, elem("S3", "(12)")).trivial());
  EXPECT_TRUE(modified_oracle(inst, 0, elem("S3", "(23)")).trivial());
  // m_i = 1 lies in {1, b}, so a trivial coordinate keeps H for every candidate
  for (int b : conjugacy_class_of(inst.group(), inst.mu())) EXPECT_EQ(modified_oracle(inst, 1, b).m(), inst.m());
  const auto triv = instance("S3", 3, "(12)");
  for (int i = 0; i < 3; ++i)
    for (int b : conjugacy_class_of(triv.group(), triv.mu())) EXPECT_TRUE(modified_oracle(triv, i, b).trivial());
}

TEST(ModifiedOracle, LiteralPairOracleHasTheSameLevelSets) {
  const auto inst = instance("S3", 2, "(12)", "(13),(23)");
  for (int i = 0; i < 2; ++i)
    for (int b : conjugacy_class_of(inst.group(), inst.mu())) {
      const auto eff = modified_oracle(inst, i, b);
      const auto tuples = all_tuples(6, 2);
      for (const auto& x : tuples)
        for (const auto& y : tuples) {
          const bool lit = modified_oracle_literal(inst, i, b, x) == modified_oracle_literal(inst, i, b, y);
          EXPECT_EQ(lit, oracle_eval(eff, x) == oracle_eval(eff, y));
        }
    }
}

TEST(Oracle, GuardsAgainstOverflow) {
  const auto inst = instance("S4", 14, "(12)");
  EXPECT_THROW(oracle_eval(inst, std::vector<int>(14, 0)), GuardExceeded);
}

TEST(ProjectorH, Examples) {
  const auto triv = instance("S3", 1, "(12)");
  EXPECT_LT(max_abs(projector_H(triv, {kStd}) - Matrix::Identity(2, 2)), 1e-15);
  const auto inst = instance("S3", 1, "(12)", "(12)");
  EXPECT_LT(max_abs(projector_H(inst, {kSign})), 1e-15);
  EXPECT_EQ(projector_rank(inst, {kSign}), 0);
  const Matrix p = projector_H(inst, {kStd});
  EXPECT_EQ(hermitian_rank(p), 1);
  EXPECT_EQ(projector_rank(inst, {kStd}), 1);
  EXPECT_LT(max_abs(p * p - p), 1e-12);
  const auto two = instance("S3", 2, "(12)", "(12),(13)");
  for_each_label(2, 3, [&](const ProductLabel& l) {
    EXPECT_EQ(hermitian_rank(projector_H(two, l)), projector_rank(two, l));
  });
}

TEST(WeakDistribution, Plancherel) {
  const auto p = plancherel_distribution(cache("S3")->catalog(), 1);
  EXPECT_NEAR(p({kTriv}), 1.0 / 6, 1e-15);
  EXPECT_NEAR(p({kSign}), 1.0 / 6, 1e-15);
  EXPECT_NEAR(p({kStd}), 2.0 / 3, 1e-15);
}

TEST(WeakDistribution, SymmetricThreeTransposition) {
  const auto w = weak_distribution(instance("S3", 1, "(12)", "(12)"));
  EXPECT_NEAR(w({kTriv}), 1.0 / 3, 1e-12);
  EXPECT_EQ(w({kSign}), 0.0);
  EXPECT_NEAR(w({kStd}), 2.0 / 3, 1e-12);
}

TEST(WeakDistribution, CyclicTwoAnnihilatesSign) {
  const auto w = weak_distribution(instance("Z2", 1, "a", "a"));
  EXPECT_NEAR(w({0}), 1, 1e-15);
  EXPECT_EQ(w({1}), 0.0);
}

TEST(WeakDistribution, NormalizedAndGuarded) {
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(weak_distribution(uniform_instance("S3", n, "(12)")).total(), 1, 1e-12);
  EXPECT_THROW(weak_distribution(instance("S3", 14, "(12)"), 1000), GuardExceeded);
}

TEST(TVDistance, Examples) {
  const auto& cat = cache("S3")->catalog();
  const auto p1 = plancherel_distribution(cat, 1);
  EXPECT_EQ(tv_distance(p1, p1), 0.0);
  EXPECT_EQ(tv_distance(weak_distribution(instance("S3", 3, "(12)")), plancherel_distribution(cat, 3)), 0.0);
  EXPECT_NEAR(tv_distance(weak_distribution(instance("S3", 1, "(12)", "(12)")), p1), 1.0 / 6, 1e-12);
  const double two = tv_distance(weak_distribution(uniform_instance("S3", 2, "(12)")), plancherel_distribution(cat, 2));
  EXPECT_LE(two, 0.5);
  // all-transposition S3 instances: TV = (1/2) 3^-n, frozen from the n = 1..4 enumeration
  for (int n = 1; n <= 6; ++n)
    EXPECT_NEAR(tv_distance(weak_distribution(uniform_instance("S3", n, "(12)")), plancherel_distribution(cat, n)),
                0.5 * std::pow(3.0, -n), 1e-12);
}

TEST(HPerp, Examples) {
  const auto triv = instance("S3", 2, "(12)");
  EXPECT_EQ(h_perp(triv).size(), 4u);
  for (int n = 1; n <= 5; ++n) {
    const auto inst = uniform_instance("Z2", n, "a");
    const auto hp = h_perp(inst);
    EXPECT_EQ(hp.size(), std::size_t{1} << (n - 1));
    for (const auto& l : hp) {
      int ones = 0;
      for (auto x : l) ones += x;
      EXPECT_EQ(ones % 2, 0);
    }
  }
  const auto inst = instance("S3", 2, "(12)", "(12),e");
  const auto hp = h_perp(inst);
  EXPECT_EQ(hp, (std::vector<ProductLabel>{{kTriv, kTriv}, {kTriv, kSign}}));
}

TEST(MissingHarmonic, Examples) {
  const auto triv = instance("S3", 2, "(12)");
  for_each_label(2, 3, [&](const ProductLabel& l) { EXPECT_FALSE(is_missing_harmonic(triv, l)); });
  const auto inst = uniform_instance("S3", 2, "(12)");
  EXPECT_TRUE(is_missing_harmonic(inst, {kSign, kTriv}));
  EXPECT_FALSE(is_missing_harmonic(inst, {kSign, kSign}));
  EXPECT_FALSE(is_missing_harmonic(inst, {kStd, kSign}));
  // Q8: the 2-dim irrep is -I at -1, so (2-dim) alone is a missing harmonic
  const auto q = instance("Q8", 1, "-1", "-1");
  EXPECT_TRUE(is_missing_harmonic(q, {4}));
  for_each_label(2, 3, [&](const ProductLabel& l) {
    EXPECT_EQ(is_missing_harmonic(inst, l), projector_rank(inst, l) == 0);
  });
}

TEST(BaseCondition, Examples) {
  const auto& z2 = cache("Z2")->catalog();
  EXPECT_EQ(check_base_condition(z2, 1), IrrepLabel{1});
  const auto& q8 = cache("Q8")->catalog();
  const auto w = check_base_condition(q8, elem("Q8", "-1"));
  ASSERT_TRUE(w);
  EXPECT_EQ(q8.dim(*w), 2);
  EXPECT_LT(max_abs(q8[*w](elem("Q8", "-1")) + Matrix::Identity(2, 2)), 1e-9);
  EXPECT_EQ(check_base_condition(cache("S3")->catalog(), elem("S3", "(12)")), kSign);
}

TEST(NormalCondition, Examples) {
  const auto n = check_normal_condition(group("Z4"), elem("Z4", "a^2"));
  ASSERT_TRUE(n);
  EXPECT_EQ(n->order(), 1);
  const auto a3 = check_normal_condition(group("S3"), elem("S3", "(12)"));
  ASSERT_TRUE(a3);
  EXPECT_EQ(*a3, commutator_subgroup(group("S3")));
}

TEST(BaseCondition, EquivalentToNormalConditionEverywhere) {
  for (const auto& name : catalog_group_names()) {
    const auto& cat = cache(name)->catalog();
    for (int mu : involutions(cat.group()))
      EXPECT_EQ(check_base_condition(cat, mu).has_value(), check_normal_condition(cat.group(), mu).has_value())
          << name << " " << cat.group().name(mu);
  }
}

TEST(ProjectiveKernel, Examples) {
  const auto& s3 = cache("S3")->catalog();
  EXPECT_EQ(projective_kernel(s3, kSign).kernel.order(), 6);
  EXPECT_EQ(projective_kernel(s3, kStd).kernel.order(), 1);
  const auto& q8 = cache("Q8")->catalog();
  const auto k = projective_kernel(q8, 4);
  ASSERT_EQ(k.kernel.order(), 2);
  const int m1 = elem("Q8", "-1");
  for (std::size_t i = 0; i < k.kernel.elements.size(); ++i)
    if (k.kernel.elements[i] == m1) {
      EXPECT_NEAR(std::abs(k.chi[i] + 1.0), 0, 1e-9);
    }
}

TEST(Labels, EnumerationIsLexicographic) {
  std::vector<ProductLabel> seen;
  for_each_label(2, 3, [&](const ProductLabel& l) { seen.push_back(l); });
  ASSERT_EQ(seen.size(), 9u);
  EXPECT_EQ(seen[1], (ProductLabel{0, 1}));
  EXPECT_EQ(seen[3], (ProductLabel{1, 0}));
  EXPECT_EQ(checked_power(3, 4, 100), 81);
  EXPECT_EQ(checked_power(3, 5, 100), -1);
}
