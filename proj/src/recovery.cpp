#include "simon/recovery.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "simon/error.hpp"

namespace simon {

namespace {

// Stream domains for derive_seed, so batch, candidate and confirmation runs never share a stream.
constexpr std::uint64_t kBatchStream = 0x1000'0000;
constexpr std::uint64_t kCandidateStream = 0x2000'0000;
constexpr std::uint64_t kConfirmStream = 0x3000'0000;
constexpr std::uint64_t kSpotStream = 0x4000'0000;

}  // namespace

BitVector char_to_row(const HSPInstance& inst, const ProductLabel& psi) {
  return char_to_row(inst.catalog(), inst.mu(), psi);
}

SupportSolution solve_support(const GF2System& rows) {
  SupportSolution s;
  const int n = rows.n();
  if (rows.rank() == n) {
    s.determined = true;
    s.x = BitVector(n);
    return s;
  }
  s.nullspace = rows.nullspace_basis();
  if (rows.rank() == n - 1) {
    s.determined = true;
    s.x = s.nullspace.front();
  }
  return s;
}

std::string to_string(RecoveryKind k) {
  switch (k) {
    case RecoveryKind::Recovered: return "recovered";
    case RecoveryKind::TrivialVerdict: return "trivial";
    case RecoveryKind::Failure: return "failure";
  }
  return "unknown";
}

IdentifyResult identify_coordinate(const HSPInstance& inst, int i,
                                   const std::optional<BitVector>& support,
                                   const SieveConfig& cfg, std::uint64_t seed) {
  const GroupTable& g = inst.group();
  IdentifyResult out;
  SieveConfig c = cfg;
  c.support = support;
  int nontrivial = 0, trivial = 0;
  for (int b : conjugacy_class_of(g, inst.mu())) {
    const HSPInstance mod = modified_oracle(inst, i, b);
    Rng rng = make_rng(seed, kCandidateStream + static_cast<std::uint64_t>(i * g.order() + b));
    const SieveResult r = run_sieve(mod, c, rng);
    out.verdicts.push_back({i, b, r.decision, static_cast<int>(r.final_labels.size()), r.final_rank});
    if (r.decision == Decision::Nontrivial) {
      ++nontrivial;
      out.element = b;
    } else if (r.decision == Decision::Trivial) {
      ++trivial;
    }
  }
  if (nontrivial != 1 || nontrivial + trivial != static_cast<int>(out.verdicts.size())) {
    out.element.reset();
  }
  return out;
}

RecoveryReport recover(const HSPInstance& inst, const RecoverConfig& cfg, Rng& rng) {
  const int n = inst.n();
  const GroupTable& g = inst.group();
  const std::uint64_t seed = rng();
  const int cap = cfg.max_batches > 0 ? cfg.max_batches : 4 * n;
  SieveConfig sieve = cfg.sieve;
  sieve.support.reset();

  RecoveryReport rep;
  GF2System sys(n);
  while (rep.batches < cap) {
    Rng r = make_rng(seed, kBatchStream + static_cast<std::uint64_t>(rep.batches));
    const SieveResult res = run_sieve(inst, sieve, r);
    ++rep.batches;
    const int before = sys.rank();
    for (const auto& l : res.final_labels) {
      sys.add(char_to_row(inst, l));
      ++rep.samples;
    }
    if (sys.rank() == n) break;
    // stabilized: a nonempty batch that left rank n-1 unchanged
    if (sys.rank() == n - 1 && before == n - 1 && !res.final_labels.empty()) break;
  }
  rep.rank = sys.rank();
  if (rep.rank < n - 1) {
    rep.failure = "rank " + std::to_string(rep.rank) + " after " + std::to_string(rep.batches) +
                  " sieve batches (cap " + std::to_string(cap) + ")";
    return rep;
  }
  const SupportSolution sol = solve_support(sys);
  rep.support = sol.x;
  if (!sol.x.any()) {
    rep.kind = RecoveryKind::TrivialVerdict;
    rep.confirmed = true;
    return rep;
  }

  std::vector<int> support_idx;
  for (int i = 0; i < n; ++i)
    if (sol.x.get(i)) support_idx.push_back(i);
  std::vector<IdentifyResult> ids(support_idx.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < support_idx.size(); k = next++) {
      ids[k] = identify_coordinate(inst, support_idx[k], sol.x, sieve, seed);
    }
  };
  const int threads = std::clamp(cfg.jobs, 1, static_cast<int>(std::max<std::size_t>(1, support_idx.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  rep.m.assign(static_cast<std::size_t>(n), g.identity());
  for (std::size_t k = 0; k < support_idx.size(); ++k) {
    rep.verdicts.insert(rep.verdicts.end(), ids[k].verdicts.begin(), ids[k].verdicts.end());
    if (!ids[k].element) {
      rep.failure = "coordinate " + std::to_string(support_idx[k]) +
                    " did not yield exactly one nontrivial candidate";
      rep.m.clear();
      return rep;
    }
    rep.m[static_cast<std::size_t>(support_idx[k])] = *ids[k].element;
  }

  // confirmation: a support-tested sieve on the original oracle and oracle spot checks
  SieveConfig confirm = sieve;
  confirm.support = sol.x;
  Rng cr = make_rng(seed, kConfirmStream);
  rep.confirmation = run_sieve(inst, confirm, cr).decision;
  Rng sr = make_rng(seed, kSpotStream);
  std::uniform_int_distribution<int> elem(0, g.order() - 1);
  std::vector<int> x(static_cast<std::size_t>(n)), xm(static_cast<std::size_t>(n));
  for (int t = 0; t < cfg.spot_checks; ++t) {
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = elem(sr);
      xm[static_cast<std::size_t>(i)] = g.mul(x[static_cast<std::size_t>(i)], rep.m[static_cast<std::size_t>(i)]);
    }
    ++rep.spot_checks;
    rep.spot_checks_passed += oracle_eval(inst, x) == oracle_eval(inst, xm);
  }
  rep.confirmed = rep.confirmation == Decision::Nontrivial && rep.spot_checks_passed == rep.spot_checks;
  if (!rep.confirmed) {
    rep.failure = "confirmation failed";
    return rep;
  }
  rep.kind = RecoveryKind::Recovered;
  return rep;
}

}  // namespace simon
