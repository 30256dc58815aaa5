#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "simon/gf2.hpp"
#include "simon/register.hpp"

namespace simon {

int default_rounds(int n);  // ceil(6 sqrt(n log2 n)); 1 when n = 1
int default_coins(int n);   // ceil(sqrt(n / log2 n)), at least 1
int default_pool(int n);    // ceil(2^(2 sqrt(n log2 n))), clamped to [2, 2^16]

struct SieveConfig {
  int pool_size = 2;
  int rounds = 1;
  int coins = 1;
  std::uint64_t seed = 0;
  bool keep_trajectories = false;
  /// Retire weight-0 registers into the final collection at the start of each
  /// round; when false, every register keeps pairing until the last round.
  bool harvest = true;
  /// Candidate support for the missing-harmonic test. Unset: decide Trivial
  /// only if the final labels rule out every nonzero support (GF(2) rank n).
  std::optional<BitVector> support;
  /// Run check_register on every register produced (always on in debug builds).
  bool check_invariants = false;

  static SieveConfig defaults(int n);
};

int weight(const IrrepCatalog& cat, const ProductLabel& label);

struct PairingEntry {
  int index;
  IrrepLabel lo, hi;  // {rho_i, dual(rho_i) (x) psi} in ascending order
  IrrepLabel psi;
  friend auto operator<=>(const PairingEntry&, const PairingEntry&) = default;
};

struct PairingKey {
  std::vector<PairingEntry> entries;  // active coordinates, leftmost first
  friend auto operator<=>(const PairingKey&, const PairingKey&) = default;
};

PairingKey pairing_key(const IrrepCatalog& cat, const ProductLabel& label,
                       const std::vector<IrrepLabel>& coins);

/// Bit j set iff active coordinate j holds the `hi` member of a two-element
/// fingerprint. Partners have equal keys and complementary orientations.
std::uint64_t pairing_orientation(const PairingKey& key, const ProductLabel& label);
std::uint64_t orientation_mask(const PairingKey& key);

/// True iff sigma_i is dual(rho_i) (x) psi_j at every active coordinate.
bool are_partners(const IrrepCatalog& cat, const ProductLabel& rho, const ProductLabel& sigma,
                  const PairingKey& key);

enum class Decision { Trivial, Nontrivial, InconclusiveExtinction, InconclusiveWeight };
std::string to_string(Decision d);

struct CombineEvent {
  int round = 0;
  ProductLabel parent1, parent2, child;
  double probability = 0;
  int weight1 = 0, weight2 = 0, child_weight = 0;
  double missing_mass = 0;
};

struct SieveResult {
  Decision decision = Decision::InconclusiveExtinction;
  int rounds_run = 0;
  int extinction_round = -1;
  std::vector<ProductLabel> final_labels;  // Lambda
  std::vector<int> survivors_per_round;
  std::vector<int> discarded_per_round;
  std::vector<int> harvested_per_round;
  std::vector<std::vector<int>> trajectories;  // per final lineage, weights by generation
  std::vector<CombineEvent> events;            // only with keep_trajectories
  int final_rank = 0;
  std::int64_t combines = 0;
  double max_missing_mass = 0;
  int invariant_violations = 0;  // registers failing check_register, when checked
};

SieveResult run_sieve(const HSPInstance& inst, const SieveConfig& cfg, Rng& rng);

/// Independent trials on `jobs` threads; trial t uses make_rng(cfg.seed, t), so
/// results do not depend on `jobs`.
std::vector<SieveResult> run_sieve_trials(const HSPInstance& inst, const SieveConfig& cfg,
                                          int trials, int jobs);

struct ProgressStats {
  std::int64_t events = 0;
  std::int64_t weight_zero = 0;      // condition 1
  std::int64_t large_drop = 0;       // condition 2
  std::int64_t fractional_drop = 0;  // condition 3
  std::int64_t any_condition = 0;
  double frequency = 0;  // any_condition / events
};

/// Classify every combine event; requires keep_trajectories.
ProgressStats progress_stats(const SieveResult& result, int n, double c1 = 0.25, double c2 = 0.25);

}  // namespace simon
