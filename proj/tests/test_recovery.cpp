#include <gtest/gtest.h>

#include <algorithm>

#include "simon/recovery.hpp"
#include "support.hpp"

using namespace simon;
using namespace simon::test;

namespace {

RecoverConfig recover_config(int n, int pool, std::uint64_t seed) {
  RecoverConfig rc;
  rc.sieve = SieveConfig::defaults(n);
  rc.sieve.pool_size = pool;
  rc.sieve.seed = seed;
  return rc;
}

}  // namespace

TEST(Identify, SingletonClassHasOneCandidate) {
  const auto inst = instance("Z2", 4, "a", "a,e,a,e");
  SieveConfig cfg = SieveConfig::defaults(4);
  cfg.pool_size = 32;
  const auto id = identify_coordinate(inst, 0, BitVector::from_string("1010"), cfg, 1);
  ASSERT_EQ(id.verdicts.size(), 1u);
  ASSERT_TRUE(id.element);
  EXPECT_EQ(*id.element, elem("Z2", "a"));
}

TEST(Identify, ExactlyOneTranspositionSurvives) {
  const auto inst = instance("S3", 6, "(12)", "(13),e,(12),e,e,(23)");
  SieveConfig cfg = SieveConfig::defaults(6);
  cfg.pool_size = 512;
  const auto support = BitVector::from_string("101001");
  for (int i : {0, 2, 5}) {
    const auto id = identify_coordinate(inst, i, support, cfg, 2);
    ASSERT_EQ(id.verdicts.size(), 3u);
    int nontrivial = 0;
    for (const auto& v : id.verdicts) {
      nontrivial += v.decision == Decision::Nontrivial;
      if (v.candidate != inst.m(i)) {
        EXPECT_EQ(v.decision, Decision::Trivial);
      }
    }
    EXPECT_EQ(nontrivial, 1);
    ASSERT_TRUE(id.element);
    EXPECT_EQ(*id.element, inst.m(i));
  }
}

TEST(Recover, TrivialGroundTruth) {
  const auto inst = instance("S3", 6, "(12)");
  Rng rng = make_rng(3, 0);
  const auto rep = recover(inst, recover_config(6, 1024, 3), rng);
  EXPECT_EQ(rep.kind, RecoveryKind::TrivialVerdict);
  EXPECT_EQ(rep.rank, 6);
}

TEST(Recover, SymmetricThreeSixWithThreeHiddenCoordinates) {
  const auto inv = involutions(group("S3"));
  Rng pick = make_rng(4, 0);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<int> m(6, 0);
    std::vector<int> coords{0, 1, 2, 3, 4, 5};
    std::shuffle(coords.begin(), coords.end(), pick);
    for (int k = 0; k < 3; ++k) m[static_cast<std::size_t>(coords[static_cast<std::size_t>(k)])] = inv[pick() % 3];
    const auto inst = HSPInstance::make(cache("S3"), 6, inv[0], m);
    Rng rng = make_rng(5, static_cast<std::uint64_t>(trial));
    const auto rep = recover(inst, recover_config(6, 512, 5 + static_cast<std::uint64_t>(trial)), rng);
    ASSERT_EQ(rep.kind, RecoveryKind::Recovered) << rep.failure;
    EXPECT_EQ(rep.m, m);
    EXPECT_TRUE(rep.confirmed);
    EXPECT_EQ(rep.spot_checks_passed, 100);
    EXPECT_EQ(rep.confirmation, Decision::Nontrivial);
  }
}

TEST(Recover, CyclicTwoIsTextbookSimon) {
  const auto inst = instance("Z2", 8, "a", "a,e,e,a,a,e,a,e");
  Rng rng = make_rng(6, 0);
  const auto rep = recover(inst, recover_config(8, 64, 6), rng);
  ASSERT_EQ(rep.kind, RecoveryKind::Recovered) << rep.failure;
  EXPECT_EQ(rep.m, inst.m());
  EXPECT_EQ(rep.rank, 7);
  EXPECT_EQ(rep.support.to_string(), "10011010");
}

TEST(Recover, UnderpoweredSieveReportsFailure) {
  const auto inst = instance("S3", 6, "(12)", "(12),e,e,e,e,e");
  RecoverConfig rc = recover_config(6, 2, 7);
  rc.max_batches = 2;
  Rng rng = make_rng(7, 0);
  const auto rep = recover(inst, rc, rng);
  EXPECT_EQ(rep.kind, RecoveryKind::Failure);
  EXPECT_FALSE(rep.failure.empty());
  EXPECT_LE(rep.batches, 2);
}
