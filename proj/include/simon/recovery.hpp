#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simon/gf2.hpp"
#include "simon/sieve.hpp"

namespace simon {

BitVector char_to_row(const HSPInstance& inst, const ProductLabel& psi);

struct SupportSolution {
  bool determined = false;
  BitVector x;                       // valid when determined
  std::vector<BitVector> nullspace;  // valid when not determined
};

/// rank n: x = 0; rank n-1: the unique nonzero null vector; otherwise the nullspace basis.
SupportSolution solve_support(const GF2System& rows);

struct CandidateVerdict {
  int coordinate = 0;
  int candidate = 0;
  Decision decision = Decision::InconclusiveExtinction;
  int final_labels = 0;
  int final_rank = 0;
};

struct IdentifyResult {
  std::optional<int> element;  // set iff exactly one candidate was Nontrivial and the rest Trivial
  std::vector<CandidateVerdict> verdicts;
};

/// Sieve each modified oracle f_i^b, b in the class of mu. With `support` the
/// sieve tests missing harmonics against that support; without it, against all.
IdentifyResult identify_coordinate(const HSPInstance& inst, int i,
                                   const std::optional<BitVector>& support,
                                   const SieveConfig& cfg, std::uint64_t seed);

struct RecoverConfig {
  SieveConfig sieve;
  int max_batches = 0;  // 0: 4n
  int spot_checks = 100;
  int jobs = 1;
};

enum class RecoveryKind { Recovered, TrivialVerdict, Failure };
std::string to_string(RecoveryKind k);

struct RecoveryReport {
  RecoveryKind kind = RecoveryKind::Failure;
  std::vector<int> m;  // recovered involution (Recovered only)
  std::string failure;
  int batches = 0;
  int samples = 0;
  int rank = 0;
  BitVector support;
  std::vector<CandidateVerdict> verdicts;
  Decision confirmation = Decision::InconclusiveExtinction;
  int spot_checks = 0;
  int spot_checks_passed = 0;
  bool confirmed = false;  // TrivialVerdict: rank n; Recovered: sieve and spot checks
};

RecoveryReport recover(const HSPInstance& inst, const RecoverConfig& cfg, Rng& rng);

}  // namespace simon
