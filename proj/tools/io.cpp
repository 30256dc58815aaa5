#include "io.hpp"

#include <cstdio>
#include <sstream>

#include "simon/error.hpp"

namespace simon::io {

LoadedGroup load_group(const std::string& name, const std::string& file) {
  if (!name.empty() && !file.empty()) throw UsageError("--group and --group-file are exclusive");
  if (name.empty() && file.empty()) throw UsageError("one of --group or --group-file is required");
  LoadedGroup out;
  out.spec = file.empty() ? GroupSpec::parse(name) : GroupSpec::file(file);
  out.table = std::make_shared<const GroupTable>(build_group(out.spec));
  out.description = out.spec.to_string();
  return out;
}

std::vector<int> parse_hidden(const GroupTable& g, const std::string& text, int n) {
  if (text.empty() || text == "trivial") return {};
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int x = g.resolve(tok);
    if (x < 0) throw ParseError("unknown element '" + tok + "' in --hidden");
    out.push_back(x);
  }
  if (static_cast<int>(out.size()) != n) {
    throw UsageError("--hidden lists " + std::to_string(out.size()) + " elements but n = " +
                     std::to_string(n));
  }
  return out;
}

int default_mu(const IrrepCatalog& cat) {
  for (int x : involutions(cat.group())) {
    for (IrrepLabel l : cat.one_dim_labels()) {
      if (std::abs(cat.character(l, x) + 1.0) < kStructuralTol) return x;
    }
  }
  throw UsageError("group has no involution outside its commutator subgroup; pass --mu");
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json label_json(const ProductLabel& l) {
  Json a = Json::array();
  for (IrrepLabel x : l) a.push_back(x);
  return a;
}

Json instance_json(const HSPInstance& inst, const std::string& group_description) {
  const GroupTable& g = inst.group();
  Json j;
  j["group"] = group_description;
  j["order"] = g.order();
  j["n"] = inst.n();
  j["mu"] = g.name(inst.mu());
  if (inst.trivial()) {
    j["hidden"] = "trivial";
  } else {
    Json h = Json::array();
    for (int x : inst.m()) h.push_back(g.name(x));
    j["hidden"] = h;
  }
  const auto& base = inst.base_condition();
  j["base_condition"] = {
      {"one_dim_witness", base.one_dim_witness ? Json(*base.one_dim_witness) : Json()},
      {"scalar_witness", base.scalar_witness ? Json(*base.scalar_witness) : Json()}};
  j["catalog_seed"] = inst.catalog().seed();
  return j;
}

HSPInstance instance_from_json(const Json& j) {
  const std::string desc = j.at("group").get<std::string>();
  const GroupSpec spec =
      desc.starts_with("file:") ? GroupSpec::file(desc.substr(5)) : GroupSpec::parse(desc);
  const GroupTable g = build_group(spec);
  const std::uint64_t seed = j.contains("catalog_seed") ? j["catalog_seed"].get<std::uint64_t>()
                                                        : kDefaultCatalogSeed;
  auto cg = make_cg_cache(g, seed);
  const int n = j.at("n").get<int>();
  const GroupTable& table = cg->catalog().group();
  const int mu = table.resolve(j.at("mu").get<std::string>());
  if (mu < 0) throw ParseError("unknown mu in instance description");
  std::vector<int> hidden;
  const Json& h = j.at("hidden");
  if (h.is_array()) {
    for (const auto& e : h) {
      const int x = table.resolve(e.is_string() ? e.get<std::string>() : std::to_string(e.get<int>()));
      if (x < 0) throw ParseError("unknown hidden element in instance description");
      hidden.push_back(x);
    }
  } else if (h.get<std::string>() != "trivial") {
    throw ParseError("hidden must be \"trivial\" or an element list");
  }
  return HSPInstance::make(std::move(cg), n, mu, std::move(hidden));
}

Json catalog_json(const IrrepCatalog& cat, bool with_matrices) {
  const GroupTable& g = cat.group();
  Json classes = Json::array();
  for (const auto& cls : g.classes()) {
    Json names = Json::array();
    for (int x : cls) names.push_back(g.name(x));
    classes.push_back({{"size", cls.size()}, {"elements", names}});
  }
  Json irreps = Json::array();
  Json dims = Json::array();
  for (const auto& irr : cat.irreps()) {
    Json chi = Json::array();
    for (Complex c : irr.character) chi.push_back(complex_json(c));
    Json e = {{"label", irr.label}, {"dim", irr.dim}, {"character", chi}};
    if (with_matrices) {
      Json mats = Json::array();
      for (const auto& m : irr.matrices) {
        Json rows = Json::array();
        for (int r = 0; r < m.rows(); ++r) {
          Json row = Json::array();
          for (int c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
          rows.push_back(row);
        }
        mats.push_back(rows);
      }
      e["matrices"] = mats;
    }
    irreps.push_back(e);
    dims.push_back(irr.dim);
  }
  return {{"order", g.order()},
          {"elements", g.names()},
          {"classes", classes},
          {"dims", dims},
          {"one_dim", cat.one_dim_labels()},
          {"irreps", irreps}};
}

Json cg_table_json(const IrrepCatalog& cat) {
  Json pairs = Json::array();
  for (IrrepLabel a = 0; a < cat.size(); ++a)
    for (IrrepLabel b = 0; b < cat.size(); ++b) {
      const auto mult = cg_multiplicities(cat, a, b);
      Json m = Json::object();
      Json ranks = Json::object();
      for (IrrepLabel t = 0; t < cat.size(); ++t) {
        const int k = mult[static_cast<std::size_t>(t)];
        if (k == 0) continue;
        m[std::to_string(t)] = k;
        ranks[std::to_string(t)] = hermitian_rank(isotypic_projector(cat, a, b, t));
      }
      pairs.push_back({{"rho", a}, {"sigma", b}, {"multiplicities", m}, {"projector_ranks", ranks}});
    }
  return {{"dims", [&] {
             Json d = Json::array();
             for (const auto& irr : cat.irreps()) d.push_back(irr.dim);
             return d;
           }()},
          {"pairs", pairs}};
}

Json weak_distribution_json(const WeakDistribution& d) {
  Json entries = Json::array();
  for (const auto& [l, p] : d.entries) entries.push_back({{"label", label_json(l)}, {"probability", p}});
  return {{"support_size", d.entries.size()}, {"total", d.total()}, {"entries", entries}};
}

Json sieve_config_json(const SieveConfig& c) {
  return {{"pool", c.pool_size},
          {"rounds", c.rounds},
          {"coins", c.coins},
          {"seed", c.seed},
          {"harvest", c.harvest},
          {"support", c.support ? Json(c.support->to_string()) : Json()}};
}

Json sieve_result_json(const SieveResult& r, int trial) {
  Json labels = Json::array();
  for (const auto& l : r.final_labels) labels.push_back(label_json(l));
  return {{"trial", trial},
          {"decision", to_string(r.decision)},
          {"rounds_run", r.rounds_run},
          {"extinction_round", r.extinction_round},
          {"final_rank", r.final_rank},
          {"combines", r.combines},
          {"max_missing_mass", r.max_missing_mass},
          {"survivors_per_round", r.survivors_per_round},
          {"discarded_per_round", r.discarded_per_round},
          {"harvested_per_round", r.harvested_per_round},
          {"final_labels", labels}};
}

Json combine_event_json(const CombineEvent& e, int trial) {
  return {{"type", "combine"},
          {"trial", trial},
          {"round", e.round},
          {"parent_labels", Json::array({label_json(e.parent1), label_json(e.parent2)})},
          {"child_label", label_json(e.child)},
          {"probability", e.probability},
          {"weights", Json::array({e.weight1, e.weight2, e.child_weight})},
          {"missing_mass", e.missing_mass}};
}

Json recovery_json(const RecoveryReport& r, const GroupTable& g) {
  Json m = Json();
  if (r.kind == RecoveryKind::Recovered) {
    m = Json::array();
    for (int x : r.m) m.push_back(g.name(x));
  }
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"coordinate", v.coordinate},
                        {"candidate", g.name(v.candidate)},
                        {"decision", to_string(v.decision)},
                        {"final_labels", v.final_labels},
                        {"final_rank", v.final_rank}});
  }
  return {{"decision", to_string(r.kind)},
          {"recovered_m", m},
          {"failure", r.failure.empty() ? Json() : Json(r.failure)},
          {"batches", r.batches},
          {"samples", r.samples},
          {"rank", r.rank},
          {"support", r.support.size() ? Json(r.support.to_string()) : Json()},
          {"verdicts", verdicts},
          {"confirmation",
           {{"sieve", to_string(r.confirmation)},
            {"spot_checks", r.spot_checks},
            {"spot_checks_passed", r.spot_checks_passed},
            {"confirmed", r.confirmed}}}};
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace simon::io
