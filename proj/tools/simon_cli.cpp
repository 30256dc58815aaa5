// simon: command-line front end. Every command emits one JSON result plus a run manifest.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "simon/error.hpp"
#include "simon/recovery.hpp"
#include "simon/register.hpp"
#include "simon/sieve.hpp"

namespace {

using simon::io::Json;

struct Options {
  std::string group, group_file, mu, hidden = "trivial", out, telemetry, support, ns = "4,6,8,10";
  int n = 1;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  int pool = 0, rounds = 0, coins = 0, trials = 1, max_pool = 4096;
  double target = 0.95;
  bool literal = false, matrices = false;
};

struct Context {
  std::string command;
  std::vector<std::string> argv;
  Options opt;
  std::uint64_t seed = 0;
  bool seed_drawn = false;
  Json instance;  // null when the command has no instance
  Json config = Json::object();
};

struct Loaded {
  simon::io::LoadedGroup group;
  std::shared_ptr<const simon::CGCache> cg;
};

Loaded load(const Options& o) {
  Loaded l;
  l.group = simon::io::load_group(o.group, o.group_file);
  l.cg = simon::make_cg_cache(*l.group.table);
  return l;
}

int resolve_mu(const Options& o, const simon::IrrepCatalog& cat) {
  if (o.mu.empty()) return simon::io::default_mu(cat);
  const int mu = cat.group().resolve(o.mu);
  if (mu < 0) throw simon::ParseError("unknown element '" + o.mu + "' for --mu");
  return mu;
}

simon::HSPInstance make_instance(Context& ctx, const Loaded& l) {
  const auto& o = ctx.opt;
  if (o.n < 1) throw simon::UsageError("--n must be positive");
  const int mu = resolve_mu(o, l.cg->catalog());
  auto inst = simon::HSPInstance::make(l.cg, o.n, mu,
                                       simon::io::parse_hidden(*l.group.table, o.hidden, o.n));
  ctx.instance = simon::io::instance_json(inst, l.group.description);
  return inst;
}

simon::SieveConfig sieve_config(Context& ctx, int n) {
  const auto& o = ctx.opt;
  simon::SieveConfig c = simon::SieveConfig::defaults(n);
  if (o.pool < 0 || o.rounds < 0 || o.coins < 0) throw simon::UsageError("sizes must be positive");
  if (o.pool) c.pool_size = o.pool;
  if (o.rounds) c.rounds = o.rounds;
  if (o.coins) c.coins = o.coins;
  c.seed = ctx.seed;
  c.harvest = !o.literal;
  if (!o.support.empty()) c.support = simon::BitVector::from_string(o.support);
  ctx.config = simon::io::sieve_config_json(c);
  return c;
}

Json cmd_irreps(Context& ctx) {
  const Loaded l = load(ctx.opt);
  return {{"group", l.group.description}, {"catalog", simon::io::catalog_json(l.cg->catalog(), ctx.opt.matrices)}};
}

Json cmd_cg(Context& ctx) {
  const Loaded l = load(ctx.opt);
  return {{"group", l.group.description}, {"cg", simon::io::cg_table_json(l.cg->catalog())}};
}

Json cmd_dist(Context& ctx) {
  const Loaded l = load(ctx.opt);
  const auto inst = make_instance(ctx, l);
  return {{"distribution", simon::io::weak_distribution_json(simon::weak_distribution(inst))}};
}

Json cmd_tvd(Context& ctx, int& exit_code) {
  const Loaded l = load(ctx.opt);
  const auto inst = make_instance(ctx, l);
  const double tvd = simon::tv_distance(simon::weak_distribution(inst),
                                        simon::plancherel_distribution(inst.catalog(), inst.n()));
  const double bound = std::pow(2.0, -inst.n() / 2.0);
  bool applies = !inst.trivial() && !simon::center(inst.group()).contains(inst.mu());
  for (int i = 0; i < inst.n() && applies; ++i) applies = inst.m(i) != inst.group().identity();
  const bool pass = !applies || tvd <= bound + 1e-12;
  if (!pass) exit_code = 1;
  return {{"tvd", tvd}, {"bound", bound}, {"bound_applies", applies}, {"pass", pass}};
}

Json cmd_sieve(Context& ctx) {
  const auto& o = ctx.opt;
  if (o.trials < 1) throw simon::UsageError("--trials must be at least 1");
  const Loaded l = load(o);
  const auto inst = make_instance(ctx, l);
  simon::SieveConfig cfg = sieve_config(ctx, inst.n());
  cfg.keep_trajectories = !o.telemetry.empty();
  ctx.config["trials"] = o.trials;
  const auto results = simon::run_sieve_trials(inst, cfg, o.trials, o.jobs);

  std::ofstream tele;
  if (!o.telemetry.empty()) {
    tele.open(o.telemetry);
    if (!tele) throw simon::UsageError("cannot open telemetry file " + o.telemetry);
  }
  Json trials = Json::array();
  std::map<std::string, int> counts;
  double max_missing = 0;
  for (int t = 0; t < o.trials; ++t) {
    const auto& r = results[static_cast<std::size_t>(t)];
    trials.push_back(simon::io::sieve_result_json(r, t));
    ++counts[simon::to_string(r.decision)];
    max_missing = std::max(max_missing, r.max_missing_mass);
    if (tele.is_open()) {
      for (const auto& e : r.events) tele << simon::io::combine_event_json(e, t).dump() << "\n";
      const auto ps = simon::progress_stats(r, inst.n());
      tele << Json{{"type", "trial"},
                   {"schema", simon::io::kTelemetrySchema},
                   {"trial", t},
                   {"decision", simon::to_string(r.decision)},
                   {"combines", r.combines},
                   {"final_labels", r.final_labels.size()},
                   {"progress",
                    {{"events", ps.events},
                     {"weight_zero", ps.weight_zero},
                     {"large_drop", ps.large_drop},
                     {"fractional_drop", ps.fractional_drop},
                     {"frequency", ps.frequency}}}}
                  .dump()
           << "\n";
    }
  }
  Json agg = Json::object();
  for (const char* d : {"trivial", "nontrivial", "inconclusive-extinction", "inconclusive-weight"}) {
    agg[d] = counts[d];
  }
  agg["trivial_rate"] = static_cast<double>(counts["trivial"]) / o.trials;
  agg["max_missing_mass"] = max_missing;
  return {{"aggregate", agg}, {"trials", trials}};
}

Json cmd_recover(Context& ctx) {
  const Loaded l = load(ctx.opt);
  const auto inst = make_instance(ctx, l);
  simon::RecoverConfig rc;
  rc.sieve = sieve_config(ctx, inst.n());
  rc.jobs = ctx.opt.jobs;
  simon::Rng rng = simon::make_rng(ctx.seed, 0);
  const auto rep = simon::recover(inst, rc, rng);
  return {{"report", simon::io::recovery_json(rep, inst.group())}};
}

Json cmd_check_base(Context& ctx, int& exit_code) {
  const Loaded l = load(ctx.opt);
  const auto& cat = l.cg->catalog();
  const auto& g = cat.group();
  std::vector<int> targets;
  if (ctx.opt.mu.empty()) {
    targets = simon::involutions(g);
  } else {
    const int mu = g.resolve(ctx.opt.mu);
    if (mu < 0) throw simon::ParseError("unknown element '" + ctx.opt.mu + "' for --mu");
    if (mu == g.identity() || g.mul(mu, mu) != g.identity()) {
      throw simon::UsageError("--mu must be an involution");
    }
    targets = {mu};
  }
  Json rows = Json::array();
  bool all_agree = true;
  for (int mu : targets) {
    const auto rho = simon::check_base_condition(cat, mu);
    const auto nsub = simon::check_normal_condition(g, mu);
    const bool agree = rho.has_value() == nsub.has_value();
    all_agree = all_agree && agree;
    Json nj;
    if (nsub) {
      nj = Json::array();
      for (int x : nsub->elements) nj.push_back(g.name(x));
    }
    rows.push_back({{"mu", g.name(mu)},
                    {"scalar_irrep", rho ? Json(*rho) : Json()},
                    {"normal_subgroup", nj},
                    {"equivalent", agree}});
  }
  if (!all_agree) exit_code = 1;
  return {{"group", l.group.description}, {"involutions", rows}, {"all_equivalent", all_agree}};
}

Json cmd_xcheck(Context& ctx, int& exit_code) {
  const Loaded l = load(ctx.opt);
  const auto inst = make_instance(ctx, l);
  const auto ref = simon::reference_weak_sample_full(inst);
  const auto dist = simon::weak_distribution(inst);
  simon::WeakDistribution refd;
  double density_dev = 0;
  for (const auto& r : ref) {
    if (r.probability <= simon::kUnderflowGuard) continue;
    refd.entries[r.label] = r.probability;
    density_dev = std::max(density_dev,
                           simon::max_abs(r.column_density - simon::fresh_density(inst, r.label)));
  }
  const double weak_tv = simon::tv_distance(dist, refd);
  const double coset_dev = simon::max_abs(simon::coset_state_literal(inst) -
                                          simon::coset_state_closed_form(inst));
  Json out = {{"weak", {{"tv", weak_tv}, {"max_density_deviation", density_dev}, {"coset_state_deviation", coset_dev}}}};
  double worst = std::max({weak_tv, density_dev, coset_dev});

  if (inst.n() == 1 && inst.group().order() <= simon::kCombineReferenceGuard) {
    double prob_dev = 0, spec_dev = 0;
    int pairs = 0;
    for (const auto& a : ref) {
      if (a.probability <= simon::kUnderflowGuard) continue;
      for (const auto& b : ref) {
        if (b.probability <= simon::kUnderflowGuard) continue;
        ++pairs;
        const auto full = simon::reference_combine_full(inst, a.full_state, b.full_state);
        const auto co = simon::coordinate_outcomes(inst.cg(), a.label[0], a.column_density,
                                                   b.label[0], b.column_density);
        for (const auto& f : full) {
          double p = 0;
          simon::Matrix child;
          for (std::size_t k = 0; k < co.taus.size(); ++k)
            if (co.taus[k] == f.tau) {
              p = co.probabilities[k];
              child = co.children[k];
            }
          prob_dev = std::max(prob_dev, std::abs(p - f.probability));
          if (f.probability > simon::kUnderflowGuard && child.size()) {
            spec_dev = std::max(spec_dev, simon::max_abs(simon::hermitian_eigenvalues(child) -
                                                         simon::hermitian_eigenvalues(f.column_density)));
          }
        }
      }
    }
    out["combine"] = {{"pairs", pairs}, {"max_probability_deviation", prob_dev}, {"max_spectrum_deviation", spec_dev}};
    worst = std::max({worst, prob_dev, spec_dev});
  } else {
    out["combine"] = {{"skipped", "combine reference requires n = 1 and |G| <= 8"}};
  }
  out["max_deviation"] = worst;
  out["pass"] = worst < simon::kDerivedTol;
  if (!(worst < simon::kDerivedTol)) exit_code = 1;
  return out;
}

Json cmd_scaling(Context& ctx) {
  const auto& o = ctx.opt;
  if (o.trials < 1) throw simon::UsageError("--trials must be at least 1");
  const Loaded l = load(o);
  const int mu = resolve_mu(o, l.cg->catalog());
  std::vector<int> ns;
  std::stringstream ss(o.ns);
  for (std::string tok; std::getline(ss, tok, ',');) ns.push_back(std::stoi(tok));
  ctx.config = {{"ns", ns}, {"trials", o.trials}, {"target", o.target}, {"max_pool", o.max_pool}, {"seed", ctx.seed}};
  Json rows = Json::array();
  for (int n : ns) {
    const auto inst = simon::HSPInstance::make(l.cg, n, mu);
    simon::SieveConfig cfg = simon::SieveConfig::defaults(n);
    cfg.seed = simon::derive_seed(ctx.seed, static_cast<std::uint64_t>(n));
    Json ladder = Json::array();
    Json minimal;
    for (int pool = 8; pool <= o.max_pool; pool *= 2) {
      cfg.pool_size = pool;
      const auto res = simon::run_sieve_trials(inst, cfg, o.trials, o.jobs);
      int hits = 0;
      for (const auto& r : res) hits += r.decision == simon::Decision::Trivial;
      const double rate = static_cast<double>(hits) / o.trials;
      ladder.push_back({{"pool", pool}, {"trivial_rate", rate}});
      if (rate >= o.target) {
        minimal = pool;
        break;
      }
    }
    rows.push_back({{"n", n},
                    {"default_pool", simon::default_pool(n)},
                    {"rounds", cfg.rounds},
                    {"coins", cfg.coins},
                    {"ladder", ladder},
                    {"minimal_pool", minimal}});
  }
  return {{"group", l.group.description}, {"mu", l.group.table->name(mu)}, {"scaling", rows}};
}

std::string cmd_export_group(Context& ctx) {
  const Loaded l = load(ctx.opt);
  return simon::export_group_file(*l.group.table);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw simon::UsageError("cannot write " + path);
  f << text;
}

int run(Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  if (ctx.opt.seed) {
    ctx.seed = *ctx.opt.seed;
  } else {
    std::random_device rd;
    ctx.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    ctx.seed_drawn = true;
  }
  int exit_code = 0;
  Json result;
  const auto& c = ctx.command;
  const bool raw = c == "export-group";  // result is the group file itself
  if (raw) result = cmd_export_group(ctx);
  else if (c == "irreps") result = cmd_irreps(ctx);
  else if (c == "cg") result = cmd_cg(ctx);
  else if (c == "dist") result = cmd_dist(ctx);
  else if (c == "tvd") result = cmd_tvd(ctx, exit_code);
  else if (c == "sieve") result = cmd_sieve(ctx);
  else if (c == "recover") result = cmd_recover(ctx);
  else if (c == "check-base") result = cmd_check_base(ctx, exit_code);
  else if (c == "xcheck") result = cmd_xcheck(ctx, exit_code);
  else if (c == "scaling") result = cmd_scaling(ctx);
  else throw simon::UsageError("unknown command " + c);

  Json doc = {{"schema", simon::io::kResultSchema}, {"command", c}};
  if (!ctx.instance.is_null()) doc["instance"] = ctx.instance;
  if (!raw)
    for (auto& [k, v] : result.items()) doc[k] = v;
  const std::string text = raw ? result.get<std::string>() : simon::io::dump(doc);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Json manifest = {{"schema", simon::io::kManifestSchema},
                         {"command", c},
                         {"argv", ctx.argv},
                         {"instance", ctx.instance},
                         {"config", ctx.config},
                         {"seed", ctx.seed},
                         {"seed_source", ctx.seed_drawn ? "drawn" : "flag"},
                         {"tool_version", SIMON_VERSION},
                         {"wall_time_s", wall},
                         {"output_digest", "fnv1a64:" + simon::io::fnv1a64_hex(text)},
                         {"exit_code", exit_code}};
  if (ctx.opt.out.empty() && raw) {
    std::cout << text;
    std::cerr << simon::io::dump(manifest);
  } else if (ctx.opt.out.empty()) {
    std::cout << simon::io::dump({{"manifest", manifest}, {"result", doc}});
  } else {
    write_file(ctx.opt.out, text);
    write_file(ctx.opt.out + ".manifest.json", simon::io::dump(manifest));
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulator of the pairing sieve for Simon's problem over G^n"};
  app.set_version_flag("--version", SIMON_VERSION);
  app.require_subcommand(1);
  Context ctx;
  for (int i = 0; i < argc; ++i) ctx.argv.emplace_back(argv[i]);
  Options& o = ctx.opt;

  auto group_opts = [&](CLI::App* s) {
    auto* g = s->add_option("--group", o.group, "catalog group: Z<m>, D<k>, S<k>, Q8, Wreath(<spec>)");
    auto* f = s->add_option("--group-file", o.group_file, "custom multiplication-table file");
    g->excludes(f);
  };
  auto instance_opts = [&](CLI::App* s) {
    group_opts(s);
    s->add_option("--n", o.n, "exponent n of G^n");
    s->add_option("--mu", o.mu, "distinguished involution (name or index)");
    s->add_option("--hidden", o.hidden, "'trivial' or n comma-separated elements");
  };
  auto run_opts = [&](CLI::App* s) {
    s->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  auto sieve_opts = [&](CLI::App* s) {
    s->add_option("--pool", o.pool, "pool size (default from n)");
    s->add_option("--rounds", o.rounds, "round count (default from n)");
    s->add_option("--coins", o.coins, "coins per register (default from n)");
    s->add_flag("--literal", o.literal, "keep weight-0 registers pairing until the last round");
    s->add_option("--support", o.support, "candidate support bit string for the missing-harmonic test");
  };

  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--out", o.out, "result file (manifest written to <out>.manifest.json)");
    s->add_option("--seed", o.seed, "64-bit seed (drawn and recorded if omitted)");
    subs.emplace_back(name, s);
    return s;
  };

  auto* irreps = sub("irreps", "character table and dimensions");
  group_opts(irreps);
  irreps->add_flag("--matrices", o.matrices, "include explicit irrep matrices");
  group_opts(sub("cg", "Clebsch-Gordan multiplicity table"));
  instance_opts(sub("dist", "exact weak Fourier sampling distribution"));
  instance_opts(sub("tvd", "TV distance to Plancherel with the 2^(-n/2) bound"));
  auto* sieve = sub("sieve", "run sieve trials");
  instance_opts(sieve);
  sieve_opts(sieve);
  run_opts(sieve);
  sieve->add_option("--trials", o.trials, "number of independent trials");
  sieve->add_option("--telemetry", o.telemetry, "JSON-lines telemetry output");
  auto* recover = sub("recover", "recover the hidden involution");
  instance_opts(recover);
  sieve_opts(recover);
  run_opts(recover);
  auto* check = sub("check-base", "both base conditions for one or all involutions");
  group_opts(check);
  check->add_option("--mu", o.mu, "involution (default: all)");
  instance_opts(sub("xcheck", "channel versus full-space reference"));
  auto* scaling = sub("scaling", "minimal pool for the target trivial-detection rate");
  group_opts(scaling);
  run_opts(scaling);
  scaling->add_option("--mu", o.mu, "distinguished involution");
  scaling->add_option("--ns", o.ns, "comma-separated exponents");
  scaling->add_option("--trials", o.trials, "trials per pool size");
  scaling->add_option("--target", o.target, "detection rate target");
  scaling->add_option("--max-pool", o.max_pool, "largest pool size tried");
  group_opts(sub("export-group", "write the group in custom-file format"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (auto& [name, s] : subs)
    if (s->parsed()) ctx.command = name;

  try {
    return run(ctx);
  } catch (const simon::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const simon::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const simon::GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 3;
  } catch (const simon::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
