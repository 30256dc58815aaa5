#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "simon/error.hpp"
#include "simon/register.hpp"
#include "support.hpp"

using namespace simon;
using namespace simon::test;

namespace {

RegisterState mixed(const IrrepCatalog& cat, const ProductLabel& label) {
  RegisterState r;
  r.label = label;
  for (IrrepLabel l : label) {
    const int d = cat.dim(l);
    r.factors.push_back(Matrix::Identity(d, d) / static_cast<double>(d));
  }
  return r;
}

std::map<ProductLabel, double> outcome_map(const std::vector<CombineOutcome>& v) {
  std::map<ProductLabel, double> m;
  for (const auto& o : v) m[o.child_label] += o.probability;
  return m;
}

// Pearson statistic of observed counts against expected probabilities.
double chi_square(const std::map<ProductLabel, int>& counts, const WeakDistribution& p, int draws) {
  double stat = 0;
  for (const auto& [l, q] : p.entries) {
    const auto it = counts.find(l);
    const double obs = it == counts.end() ? 0 : it->second;
    stat += (obs - q * draws) * (obs - q * draws) / (q * draws);
  }
  return stat;
}

}  // namespace

TEST(WeakSample, SignNeverDrawnUnderTransposition) {
  const auto inst = instance("S3", 1, "(12)", "(12)");
  const WeakSampler s(inst);
  Rng rng = make_rng(1, 0);
  std::map<ProductLabel, int> counts;
  const int draws = 30000;
  for (int t = 0; t < draws; ++t) ++counts[s.sample(rng).label];
  EXPECT_EQ(counts.count({kSign}), 0u);
  // df = 1, 0.001 critical value
  EXPECT_LT(chi_square(counts, weak_distribution(inst), draws), 10.828);
}

TEST(WeakSample, TrivialHiddenIsPlancherel) {
  const auto inst = instance("S3", 2, "(12)");
  const WeakSampler s(inst);
  Rng rng = make_rng(2, 0);
  std::map<ProductLabel, int> counts;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) ++counts[s.sample(rng).label];
  // df = 8, 0.001 critical value
  EXPECT_LT(chi_square(counts, plancherel_distribution(inst.catalog(), 2), draws), 26.124);
}

TEST(WeakSample, MatchesClosedFormAcrossCoordinates) {
  const auto inst = instance("S3", 3, "(12)", "(13),e,(23)");
  const WeakSampler s(inst);
  Rng rng = make_rng(3, 0);
  std::map<ProductLabel, int> counts;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) ++counts[s.sample(rng).label];
  const auto p = weak_distribution(inst);
  for (const auto& [l, c] : counts) EXPECT_GT(p(l), 0) << "drew a zero-probability label";
  // zero exactly when coordinate 1 is one-dimensional or std and the outer signs differ:
  // 27 - 6 labels, df = 20, 0.001 critical value
  ASSERT_EQ(p.entries.size(), 21u);
  EXPECT_LT(chi_square(counts, p, draws), 45.315);
}

TEST(WeakSample, RegistersAreValidAndOneDimLabelsArePure) {
  const auto inst = instance("S3", 4, "(12)", "(12),(13),e,(23)");
  Rng rng = make_rng(4, 0);
  for (int t = 0; t < 500; ++t) {
    const RegisterState r = weak_sample(inst, rng);
    EXPECT_TRUE(check_register(inst, r).ok());
    if (product_dim(inst.catalog(), r.label) == 1) {
      EXPECT_LT(max_abs(r.density() - Matrix::Identity(1, 1)), 1e-12);
    }
  }
}

TEST(FreshState, ComponentsMixToTheProjector) {
  for (const auto& inst : {instance("S3", 3, "(12)", "(12),(13),(23)"), instance("S3", 2, "(12)"),
                           instance("Q8", 2, "-1", "-1,-1"), instance("D4", 2, "r^2", "r^2,e")}) {
    for_each_label(inst.n(), inst.catalog().size(), [&](const ProductLabel& l) {
      if (projector_rank(inst, l) == 0) return;
      const Matrix target = fresh_density(inst, l);
      Matrix mix = Matrix::Zero(target.rows(), target.cols());
      double total = 0;
      for (const auto& c : fresh_components(inst, l)) {
        mix += c.weight * c.state.density();
        total += c.weight;
      }
      EXPECT_NEAR(total, 1, 1e-12);
      EXPECT_LT(max_abs(mix - target), 1e-12);
      if (!inst.trivial()) {
        const Matrix p = projector_H(inst, l);
        EXPECT_LT(max_abs(target - p / static_cast<double>(projector_rank(inst, l))), 1e-12);
      }
    });
  }
}

TEST(Combine, StandardSquaredFractions) {
  const auto inst = instance("S3", 1, "(12)");
  auto out = outcome_map(combine_outcomes(mixed(inst.catalog(), {kStd}), mixed(inst.catalog(), {kStd}), inst));
  EXPECT_NEAR(out[{kTriv}], 0.25, 1e-12);
  EXPECT_NEAR(out[{kSign}], 0.25, 1e-12);
  EXPECT_NEAR(out[{kStd}], 0.5, 1e-12);
}

TEST(Combine, TrivialTimesTrivial) {
  const auto inst = instance("S3", 1, "(12)");
  const auto out = combine_outcomes(mixed(inst.catalog(), {kTriv}), mixed(inst.catalog(), {kTriv}), inst);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].child_label, ProductLabel{kTriv});
  EXPECT_NEAR(out[0].probability, 1, 1e-12);
  EXPECT_LT(max_abs(out[0].child.density() - Matrix::Identity(1, 1)), 1e-12);
}

TEST(Combine, NeverProducesMissingHarmonicsAndPreservesInvariance) {
  const auto inst = instance("S3", 3, "(12)", "(12),(13),(23)");
  Rng rng = make_rng(5, 0);
  for (int t = 0; t < 300; ++t) {
    const RegisterState a = weak_sample(inst, rng);
    const RegisterState b = weak_sample(inst, rng);
    for (const auto& o : combine_outcomes(a, b, inst)) {
      EXPECT_FALSE(is_missing_harmonic(inst, o.child_label));
      EXPECT_LT(o.missing_mass, 1e-12);
      EXPECT_TRUE(check_register(inst, o.child).ok());
    }
    const CombineOutcome s = combine(a, b, inst, rng);
    EXPECT_GT(s.probability, 0);
    EXPECT_TRUE(check_register(inst, s.child).ok());
  }
}

TEST(Combine, SequentialSamplingMatchesEnumeration) {
  const auto inst = instance("S3", 2, "(12)");
  const RegisterState a = mixed(inst.catalog(), {kStd, kStd});
  const RegisterState b = mixed(inst.catalog(), {kStd, kSign});
  const auto exact = outcome_map(combine_outcomes(a, b, inst));
  Rng rng = make_rng(6, 0);
  std::map<ProductLabel, int> counts;
  const int draws = 40000;
  for (int t = 0; t < draws; ++t) ++counts[combine(a, b, inst, rng).child_label];
  WeakDistribution p;
  p.entries = exact;
  // std (x) sign is std, so only the first coordinate branches; df = 2, 0.001 critical value
  ASSERT_EQ(exact.size(), 3u);
  EXPECT_LT(chi_square(counts, p, draws), 13.816);
}

TEST(Combine, ProbabilitiesIndependentOfCGBasis) {
  const auto inst = instance("S3", 2, "(12)", "(12),(13)");
  const auto rotated = inst.with_cg(make_cg_cache(inst.group(), inst.catalog().seed(), 99));
  Rng rng = make_rng(7, 0);
  for (int t = 0; t < 100; ++t) {
    const RegisterState a = weak_sample(inst, rng);
    const RegisterState b = weak_sample(inst, rng);
    const auto x = outcome_map(combine_outcomes(a, b, inst));
    const auto y = outcome_map(combine_outcomes(a, b, rotated));
    ASSERT_EQ(x.size(), y.size());
    for (const auto& [l, p] : x) EXPECT_NEAR(p, y.at(l), 1e-9);
  }
}

TEST(Combine, UnraveledMixtureMatchesDenseProjectors) {
  for (const auto& inst : {instance("S3", 2, "(12)", "(12),(13)"), instance("S3", 2, "(12)"),
                           instance("Q8", 1, "-1", "-1")}) {
    for_each_label(inst.n(), inst.catalog().size(), [&](const ProductLabel& rho) {
      if (projector_rank(inst, rho) == 0) return;
      for_each_label(inst.n(), inst.catalog().size(), [&](const ProductLabel& sigma) {
        if (projector_rank(inst, sigma) == 0) return;
        std::map<ProductLabel, double> mix;
        for (const auto& c1 : fresh_components(inst, rho))
          for (const auto& c2 : fresh_components(inst, sigma))
            for (const auto& o : combine_outcomes(c1.state, c2.state, inst))
              mix[o.child_label] += c1.weight * c2.weight * o.probability;
        const auto dense =
            dense_combine_distribution(inst, rho, fresh_density(inst, rho), sigma, fresh_density(inst, sigma));
        double seen = 0;
        for (const auto& [tau, p] : dense) {
          EXPECT_NEAR(mix[tau], p, 1e-10);
          seen += p;
        }
        EXPECT_NEAR(seen, 1, 1e-10);
      });
    });
  }
}

TEST(Combine, MissingMassMatchesEnumeration) {
  // maximally mixed factors are not H-invariant, so missing harmonics carry weight
  const auto inst = instance("S3", 2, "(12)", "(12),(13)");
  const auto& cat = inst.catalog();
  const ProductLabel rho{kStd, kStd}, sigma{kStd, kStd};
  std::vector<CoordinateOutcomes> per;
  for (int i = 0; i < 2; ++i) {
    const int d1 = cat.dim(rho[static_cast<std::size_t>(i)]), d2 = cat.dim(sigma[static_cast<std::size_t>(i)]);
    per.push_back(coordinate_outcomes(inst.cg(), rho[static_cast<std::size_t>(i)], Matrix::Identity(d1, d1) / d1,
                                      sigma[static_cast<std::size_t>(i)], Matrix::Identity(d2, d2) / d2));
  }
  double expect = 0;
  for (std::size_t a = 0; a < per[0].taus.size(); ++a)
    for (std::size_t b = 0; b < per[1].taus.size(); ++b)
      if (is_missing_harmonic(inst, {per[0].taus[a], per[1].taus[b]}))
        expect += per[0].probabilities[a] * per[1].probabilities[b];
  EXPECT_NEAR(expect, 0.125, 1e-12);  // (sign, triv) and (triv, sign), 1/16 each
  EXPECT_NEAR(missing_harmonic_mass(inst, per), expect, 1e-14);
}

TEST(Reference, CosetStateClosedForm) {
  for (const auto& inst : {instance("Z2", 2, "a", "a,a"), instance("S3", 1, "(12)", "(12)"),
                           instance("S3", 2, "(12)", "(13),e")}) {
    EXPECT_LT(max_abs(coset_state_literal(inst) - coset_state_closed_form(inst)), 1e-12);
  }
  const auto triv = instance("S3", 2, "(12)");
  EXPECT_LT(max_abs(coset_state_literal(triv) - Matrix::Identity(36, 36) / 36.0), 1e-12);
}

TEST(Reference, WeakSamplingAgreesWithClosedForm) {
  for (const auto& inst : {instance("S3", 2, "(12)", "(13),(23)"), instance("S3", 2, "(12)"),
                           instance("Q8", 1, "-1", "-1"), instance("Z2", 3, "a", "a,e,a")}) {
    const auto p = weak_distribution(inst);
    double total = 0;
    for (const auto& r : reference_weak_sample_full(inst)) {
      EXPECT_NEAR(r.probability, p(r.label), 1e-10);
      total += r.probability;
      if (r.probability > kUnderflowGuard) {
        EXPECT_LT(max_abs(r.column_density - fresh_density(inst, r.label)), 1e-10);
      }
    }
    EXPECT_NEAR(total, 1, 1e-10);
  }
  EXPECT_THROW(reference_weak_sample_full(instance("S3", 5, "(12)")), GuardExceeded);
}

TEST(Reference, ControlledMultiplicationIsAPermutation) {
  for (const char* name : {"Z2", "S3", "D4"}) {
    const Matrix m = controlled_multiplication(group(name));
    EXPECT_EQ(max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())), 0.0);
    for (int r = 0; r < m.rows(); ++r) EXPECT_EQ(m.row(r).cwiseAbs().sum(), 1.0);
  }
}

TEST(Reference, CombineAgreesWithChannel) {
  const auto inst = instance("S3", 1, "(12)", "(12)");
  const auto ref = reference_weak_sample_full(inst);
  for (const auto& a : ref) {
    if (a.probability <= kUnderflowGuard) continue;
    for (const auto& b : ref) {
      if (b.probability <= kUnderflowGuard) continue;
      const auto co = coordinate_outcomes(inst.cg(), a.label[0], a.column_density, b.label[0], b.column_density);
      for (const auto& f : reference_combine_full(inst, a.full_state, b.full_state)) {
        double p = 0;
        for (std::size_t k = 0; k < co.taus.size(); ++k)
          if (co.taus[k] == f.tau) {
            p = co.probabilities[k];
            if (f.probability > kUnderflowGuard) {
              EXPECT_LT(max_abs(hermitian_eigenvalues(co.children[k]) - hermitian_eigenvalues(f.column_density)), 1e-10);
            }
          }
        EXPECT_NEAR(p, f.probability, 1e-10);
      }
    }
  }
  EXPECT_THROW(reference_combine_full(instance("S4", 1, "(12)"), Matrix(), Matrix()), GuardExceeded);
}
