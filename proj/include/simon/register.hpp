#pragma once

#include <cstdint>
#include <vector>

#include "simon/hsp.hpp"

namespace simon {

struct RegisterHistory {
  int round = 0;  // 0 for weak samples
  std::int64_t id = -1;
  std::int64_t parent1 = -1;
  std::int64_t parent2 = -1;
};

/// A register in the column-space convention, held as a product state: the
/// density on V_rho is factors[0] (x) ... (x) factors[n-1]. Fresh nontrivial
/// registers are mixtures of such products (see fresh_components); the sieve
/// carries one sampled component, which is an exact unraveling because every
/// channel below is linear and acts coordinatewise.
struct RegisterState {
  ProductLabel label;
  std::vector<Matrix> factors;
  RegisterHistory history;

  int dim() const;
  /// Dense d x d density (Kronecker product of the factors).
  Matrix density() const;
};

/// Largest violation of: Hermitian, unit trace, PSD, and D rho(m) = D.
struct RegisterCheck {
  double hermiticity = 0;
  double trace = 0;
  double min_eigenvalue = 0;
  double invariance = 0;
  bool ok() const;
};
RegisterCheck check_register(const HSPInstance& inst, const RegisterState& r);

/// Per-coordinate outcome table for weak sampling; built once per instance.
class WeakSampler {
 public:
  explicit WeakSampler(const HSPInstance& inst);
  RegisterState sample(Rng& rng) const;

 private:
  struct Outcome {
    IrrepLabel label;
    int sign;  // +1 or -1: eigenvalue of rho(m_i) on the factor's support
    double probability;
    Matrix factor;
  };
  HSPInstance inst_;
  std::vector<std::vector<Outcome>> outcomes_;  // per coordinate
  std::vector<std::vector<double>> cumulative_;
};

/// Weak Fourier sampling of the coset state: label with probability P_H, state
/// a component of Pi_H / rk (an exact mixture over components).
RegisterState weak_sample(const HSPInstance& inst, Rng& rng);

struct WeightedRegister {
  double weight;
  RegisterState state;
};
/// The product components of the post-measurement state for `label` with their
/// conditional weights; sum_k weight_k * density_k = fresh_density(inst, label).
std::vector<WeightedRegister> fresh_components(const HSPInstance& inst, const ProductLabel& label);
/// Pi_H / rk (nontrivial) or I/d (trivial).
Matrix fresh_density(const HSPInstance& inst, const ProductLabel& label);

/// Per-coordinate isotypic measurement of D1 (x) D2 on rho (x) sigma.
struct CoordinateOutcomes {
  std::vector<IrrepLabel> taus;
  std::vector<double> probabilities;
  std::vector<Matrix> children;  // normalized column-space densities
};
CoordinateOutcomes coordinate_outcomes(const CGCache& cg, IrrepLabel rho, const Matrix& d1,
                                       IrrepLabel sigma, const Matrix& d2);

inline constexpr double kUnderflowGuard = 1e-14;

struct CombineOutcome {
  ProductLabel child_label;
  double probability = 0;
  RegisterState child;
  double missing_mass = 0;  // total probability of missing-harmonic outcomes
};

/// Isotypic sampling of r1 (x) r2, coordinate-sequential.
CombineOutcome combine(const RegisterState& r1, const RegisterState& r2, const HSPInstance& inst,
                       Rng& rng);

/// Every outcome with probability above the underflow guard (guarded enumeration).
std::vector<CombineOutcome> combine_outcomes(const RegisterState& r1, const RegisterState& r2,
                                             const HSPInstance& inst,
                                             std::int64_t outcome_cap = 100'000);

/// Probability that the combine of r1 and r2 yields a missing harmonic.
double missing_harmonic_mass(const HSPInstance& inst,
                             const std::vector<CoordinateOutcomes>& per_coordinate);

// Full-space reference paths.

inline constexpr std::int64_t kWeakReferenceGuard = 1500;
inline constexpr int kCombineReferenceGuard = 8;

/// The literal coset state (1/|G^n|) sum_c |cH><cH| on C[G^n].
Matrix coset_state_literal(const HSPInstance& inst);
/// (I + R_m)/|G|^n.
Matrix coset_state_closed_form(const HSPInstance& inst);

struct ReferenceLabel {
  ProductLabel label;
  double probability = 0;
  Matrix column_density;  // column-space convention, as stored by RegisterState
  Matrix full_state;      // normalized post-measurement state on C[G^n]
};
/// Weak Fourier sampling on the full group algebra (|G|^n <= 1500).
std::vector<ReferenceLabel> reference_weak_sample_full(const HSPInstance& inst);

/// Post-weak-measurement state for `label` lifted to C[G^n] (|G|^n <= 1500).
Matrix full_register_state(const HSPInstance& inst, const ProductLabel& label,
                           const Matrix& column_density);

/// M |a>|b> = |a>|b a^-1> on C[G] (x) C[G].
Matrix controlled_multiplication(const GroupTable& g);

struct ReferenceCombineOutcome {
  IrrepLabel tau;
  double probability = 0;
  Matrix column_density;
  Matrix full_state;  // child on the first register, group basis
};
/// Apply M, Fourier-transform the first register, measure the irrep name, and
/// trace out everything but the column of the first register (n = 1, |G| <= 8).
std::vector<ReferenceCombineOutcome> reference_combine_full(const HSPInstance& inst,
                                                            const Matrix& x1, const Matrix& x2);

/// Joint outcome distribution of isotypic sampling on dense densities, using the
/// full tensor-product projector (small labels only). Returns (tau, probability).
std::vector<std::pair<ProductLabel, double>> dense_combine_distribution(
    const HSPInstance& inst, const ProductLabel& rho, const Matrix& d1, const ProductLabel& sigma,
    const Matrix& d2);

}  // namespace simon
