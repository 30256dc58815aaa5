#include "simon/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <thread>

#include "simon/error.hpp"

namespace simon {

namespace {

#ifdef NDEBUG
constexpr bool kDebugBuild = false;
#else
constexpr bool kDebugBuild = true;
#endif

double n_log_n(int n) { return n * std::log2(static_cast<double>(n)); }

}  // namespace

int default_rounds(int n) {
  if (n <= 1) return 1;
  return static_cast<int>(std::ceil(6.0 * std::sqrt(n_log_n(n))));
}

int default_coins(int n) {
  if (n <= 1) return 1;
  return std::max(1, static_cast<int>(std::ceil(std::sqrt(n / std::log2(static_cast<double>(n))))));
}

int default_pool(int n) {
  if (n <= 1) return 2;
  const double e = 2.0 * std::sqrt(n_log_n(n));
  if (e >= 16.0) return 1 << 16;
  return std::max(2, static_cast<int>(std::ceil(std::exp2(e))));
}

SieveConfig SieveConfig::defaults(int n) {
  SieveConfig c;
  c.pool_size = default_pool(n);
  c.rounds = default_rounds(n);
  c.coins = default_coins(n);
  return c;
}

int weight(const IrrepCatalog& cat, const ProductLabel& label) {
  int w = 0;
  for (IrrepLabel l : label) w += cat.dim(l) > 1;
  return w;
}

PairingKey pairing_key(const IrrepCatalog& cat, const ProductLabel& label,
                       const std::vector<IrrepLabel>& coins) {
  PairingKey key;
  std::size_t j = 0;
  for (std::size_t i = 0; i < label.size() && j < coins.size(); ++i) {
    const IrrepLabel rho = label[i];
    if (cat.dim(rho) == 1) continue;
    const IrrepLabel psi = coins[j++];
    const IrrepLabel partner = cat.twist(cat.dual(rho), psi);
    key.entries.push_back({static_cast<int>(i), std::min(rho, partner), std::max(rho, partner), psi});
  }
  return key;
}

std::uint64_t pairing_orientation(const PairingKey& key, const ProductLabel& label) {
  std::uint64_t o = 0;
  for (std::size_t j = 0; j < key.entries.size(); ++j) {
    const auto& e = key.entries[j];
    if (e.lo != e.hi && label[static_cast<std::size_t>(e.index)] == e.hi) o |= std::uint64_t{1} << j;
  }
  return o;
}

std::uint64_t orientation_mask(const PairingKey& key) {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < key.entries.size(); ++j)
    if (key.entries[j].lo != key.entries[j].hi) m |= std::uint64_t{1} << j;
  return m;
}

bool are_partners(const IrrepCatalog& cat, const ProductLabel& rho, const ProductLabel& sigma,
                  const PairingKey& key) {
  for (const auto& e : key.entries) {
    const auto i = static_cast<std::size_t>(e.index);
    if (sigma[i] != cat.twist(cat.dual(rho[i]), e.psi)) return false;
  }
  return true;
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Trivial: return "trivial";
    case Decision::Nontrivial: return "nontrivial";
    case Decision::InconclusiveExtinction: return "inconclusive-extinction";
    case Decision::InconclusiveWeight: return "inconclusive-weight";
  }
  return "unknown";
}

namespace {

struct Slot {
  RegisterState reg;
  std::vector<int> trajectory;
};

Decision decide(const HSPInstance& inst, const SieveConfig& cfg, SieveResult& res) {
  GF2System sys(inst.n());
  bool missing = false;
  for (const auto& l : res.final_labels) {
    const BitVector row = char_to_row(inst.catalog(), inst.mu(), l);
    if (cfg.support && row.dot(*cfg.support)) missing = true;
    sys.add(row);
  }
  res.final_rank = sys.rank();
  if (res.final_labels.empty()) return Decision::InconclusiveExtinction;
  if (cfg.support) return missing ? Decision::Trivial : Decision::Nontrivial;
  return sys.rank() == inst.n() ? Decision::Trivial : Decision::Nontrivial;
}

}  // namespace

SieveResult run_sieve(const HSPInstance& inst, const SieveConfig& cfg, Rng& rng) {
  if (cfg.pool_size < 2) throw ValidationError("pool_size must be at least 2");
  if (cfg.rounds < 1) throw ValidationError("rounds must be positive");
  if (cfg.coins < 1 || cfg.coins > 64) throw ValidationError("coins must be in [1, 64]");
  if (cfg.support && cfg.support->size() != inst.n()) {
    throw ValidationError("support length must equal n");
  }
  const IrrepCatalog& cat = inst.catalog();
  const auto& one = cat.one_dim_labels();
  const bool check = cfg.check_invariants || kDebugBuild;
  std::uniform_int_distribution<std::size_t> coin(0, one.size() - 1);

  SieveResult res;
  std::int64_t next_id = 0;
  auto audit = [&](const RegisterState& r) {
    if (check && !check_register(inst, r).ok()) ++res.invariant_violations;
  };

  const WeakSampler sampler(inst);
  std::vector<Slot> pool;
  pool.reserve(static_cast<std::size_t>(cfg.pool_size));
  for (int k = 0; k < cfg.pool_size; ++k) {
    Slot s{sampler.sample(rng), {}};
    s.reg.history.id = next_id++;
    audit(s.reg);
    if (cfg.keep_trajectories) s.trajectory.push_back(weight(cat, s.reg.label));
    pool.push_back(std::move(s));
  }

  auto retire = [&](Slot& s) {
    res.final_labels.push_back(s.reg.label);
    if (cfg.keep_trajectories) res.trajectories.push_back(std::move(s.trajectory));
  };
  auto harvest = [&]() {
    int harvested = 0;
    std::vector<Slot> keep;
    keep.reserve(pool.size());
    for (auto& s : pool) {
      if (weight(cat, s.reg.label) == 0) {
        retire(s);
        ++harvested;
      } else {
        keep.push_back(std::move(s));
      }
    }
    pool = std::move(keep);
    return harvested;
  };

  for (int round = 1; round <= cfg.rounds; ++round) {
    if (cfg.harvest) res.harvested_per_round.push_back(harvest());
    if (pool.size() < 2) break;
    if (!cfg.harvest && round > 1 &&
        std::all_of(pool.begin(), pool.end(),
                    [&](const Slot& s) { return weight(cat, s.reg.label) == 0; })) {
      break;
    }
    res.rounds_run = round;

    // bucket -> orientation -> waiting registers, pairs formed in arrival order
    std::map<PairingKey, std::map<std::uint64_t, std::deque<std::size_t>>> buckets;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<IrrepLabel> coins(static_cast<std::size_t>(cfg.coins));
    for (std::size_t idx = 0; idx < pool.size(); ++idx) {
      for (auto& c : coins) c = one[coin(rng)];
      const ProductLabel& label = pool[idx].reg.label;
      PairingKey key = pairing_key(cat, label, coins);
      const std::uint64_t o = pairing_orientation(key, label);
      const std::uint64_t partner = o ^ orientation_mask(key);
      auto& bucket = buckets[std::move(key)];
      auto it = bucket.find(partner);
      if (it != bucket.end() && !it->second.empty()) {
        pairs.emplace_back(it->second.front(), idx);
        it->second.pop_front();
      } else {
        bucket[o].push_back(idx);
      }
    }

    std::vector<Slot> children;
    children.reserve(pairs.size());
    for (auto [a, b] : pairs) {
      const RegisterState& r1 = pool[a].reg;
      const RegisterState& r2 = pool[b].reg;
      CombineOutcome out = combine(r1, r2, inst, rng);
      ++res.combines;
      res.max_missing_mass = std::max(res.max_missing_mass, out.missing_mass);
      Slot child{std::move(out.child), {}};
      child.reg.history = {round, next_id++, r1.history.id, r2.history.id};
      audit(child.reg);
      const int wc = weight(cat, child.reg.label);
      if (cfg.keep_trajectories) {
        child.trajectory = pool[a].trajectory;
        child.trajectory.push_back(wc);
        res.events.push_back({round, r1.label, r2.label, child.reg.label, out.probability,
                              weight(cat, r1.label), weight(cat, r2.label), wc, out.missing_mass});
      }
      children.push_back(std::move(child));
    }
    res.discarded_per_round.push_back(static_cast<int>(pool.size() - 2 * pairs.size()));
    pool = std::move(children);
    res.survivors_per_round.push_back(static_cast<int>(pool.size()));
    if (pool.empty()) {
      res.extinction_round = round;
      break;
    }
  }

  if (cfg.harvest) {
    harvest();
  } else {
    const bool all_zero = std::all_of(pool.begin(), pool.end(), [&](const Slot& s) {
      return weight(cat, s.reg.label) == 0;
    });
    if (!pool.empty() && !all_zero) {
      res.decision = Decision::InconclusiveWeight;
      return res;
    }
    for (auto& s : pool) retire(s);
  }
  res.decision = decide(inst, cfg, res);
  if (res.decision == Decision::InconclusiveExtinction && res.extinction_round < 0) {
    res.extinction_round = res.rounds_run;
  }
  return res;
}

std::vector<SieveResult> run_sieve_trials(const HSPInstance& inst, const SieveConfig& cfg,
                                          int trials, int jobs) {
  if (trials < 1) throw UsageError("trials must be positive");
  std::vector<SieveResult> results(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < trials; t = next++) {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(t));
      results[static_cast<std::size_t>(t)] = run_sieve(inst, cfg, rng);
    }
  };
  const int threads = std::clamp(jobs, 1, trials);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  return results;
}

ProgressStats progress_stats(const SieveResult& result, int n, double c1, double c2) {
  if (result.events.empty() && result.combines > 0) {
    throw ValidationError("progress_stats needs a run with keep_trajectories");
  }
  const double scale = n > 1 ? std::sqrt(n / std::log2(static_cast<double>(n))) : 1.0;
  ProgressStats s;
  for (const auto& e : result.events) {
    const int w = std::max(e.weight1, e.weight2);
    const int drop = w - e.child_weight;
    const bool c1_hit = e.child_weight == 0;
    const bool c2_hit = w >= scale && drop >= c1 * scale;
    const bool c3_hit = w < scale && w > 0 && drop >= c2 * w;
    ++s.events;
    s.weight_zero += c1_hit;
    s.large_drop += c2_hit;
    s.fractional_drop += c3_hit;
    s.any_condition += c1_hit || c2_hit || c3_hit;
  }
  s.frequency = s.events ? static_cast<double>(s.any_condition) / s.events : 0.0;
  return s;
}

}  // namespace simon
