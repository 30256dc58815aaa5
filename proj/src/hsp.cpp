#include "simon/hsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "simon/error.hpp"

namespace simon {

std::int64_t checked_power(std::int64_t alphabet, int n, std::int64_t cap) {
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (alphabet != 0 && total > cap / alphabet) return -1;
    total *= alphabet;
  }
  return total > cap ? -1 : total;
}

std::shared_ptr<const CGCache> make_cg_cache(const GroupTable& g, std::uint64_t catalog_seed,
                                             std::uint64_t basis_seed) {
  auto cat = std::make_shared<const IrrepCatalog>(
      compute_catalog(std::make_shared<const GroupTable>(g), catalog_seed));
  return std::make_shared<const CGCache>(std::move(cat), basis_seed);
}

HSPInstance HSPInstance::make(std::shared_ptr<const CGCache> cg, int n, int mu,
                              std::vector<int> hidden) {
  const GroupTable& g = cg->catalog().group();
  if (n < 1) throw ValidationError("n must be positive");
  if (mu < 0 || mu >= g.order() || mu == g.identity() || g.mul(mu, mu) != g.identity()) {
    throw ValidationError("mu must be an involution");
  }
  if (!hidden.empty()) {
    if (static_cast<int>(hidden.size()) != n) {
      throw ValidationError("hidden element vector must have length n = " + std::to_string(n));
    }
    bool nonidentity = false;
    for (int x : hidden) {
      if (x < 0 || x >= g.order()) throw ValidationError("hidden element out of range");
      if (x == g.identity()) continue;
      if (g.class_of(x) != g.class_of(mu)) {
        throw ValidationError("hidden coordinate " + g.name(x) + " is not conjugate to mu");
      }
      nonidentity = true;
    }
    if (!nonidentity) throw ValidationError("hidden involution must not be the identity vector");
  }

  HSPInstance inst;
  inst.cg_ = std::move(cg);
  inst.n_ = n;
  inst.mu_ = mu;
  inst.m_ = std::move(hidden);
  const IrrepCatalog& cat = inst.catalog();
  for (IrrepLabel l : cat.one_dim_labels()) {
    if (std::abs(cat.character(l, mu) + 1.0) < kStructuralTol) {
      inst.base_.one_dim_witness = l;
      break;
    }
  }
  inst.base_.scalar_witness = check_base_condition(cat, mu);
  if (!inst.base_.scalar_witness) {
    throw ValidationError("base condition fails: no irrep takes the value -I at mu");
  }
  return inst;
}

std::vector<int> HSPInstance::m() const {
  if (trivial()) return std::vector<int>(static_cast<std::size_t>(n_), group().identity());
  return m_;
}

HSPInstance HSPInstance::with_cg(std::shared_ptr<const CGCache> cg) const {
  return make(std::move(cg), n_, mu_, m_);
}

HSPInstance HSPInstance::with_hidden(std::vector<int> hidden) const {
  return make(cg_, n_, mu_, std::move(hidden));
}

namespace {

std::uint64_t encode(const GroupTable& g, std::span<const int> x) {
  std::uint64_t code = 0;
  for (int v : x) code = code * static_cast<std::uint64_t>(g.order()) + static_cast<std::uint64_t>(v);
  return code;
}

void require_encodable(const GroupTable& g, int n) {
  if (checked_power(g.order(), n, std::numeric_limits<std::int64_t>::max()) < 0) {
    throw GuardExceeded("|G|^n does not fit in a 63-bit coset label");
  }
}

}  // namespace

std::uint64_t oracle_eval(const HSPInstance& inst, std::span<const int> g) {
  const GroupTable& grp = inst.group();
  if (static_cast<int>(g.size()) != inst.n()) throw ValidationError("element vector length != n");
  require_encodable(grp, inst.n());
  const std::uint64_t a = encode(grp, g);
  if (inst.trivial()) return a;
  std::vector<int> gm(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) gm[i] = grp.mul(g[i], inst.m(static_cast<int>(i)));
  return std::min(a, encode(grp, gm));
}

HSPInstance modified_oracle(const HSPInstance& inst, int i, int b) {
  const GroupTable& g = inst.group();
  if (i < 0 || i >= inst.n()) throw ValidationError("coordinate out of range");
  if (b < 0 || b >= g.order() || g.class_of(b) != g.class_of(inst.mu())) {
    throw ValidationError("b must be an involution conjugate to mu");
  }
  if (inst.trivial()) return inst;
  const int mi = inst.m(i);
  if (mi == g.identity() || mi == b) return inst;
  return inst.with_hidden({});
}

std::pair<std::uint64_t, int> modified_oracle_literal(const HSPInstance& inst, int i, int b,
                                                      std::span<const int> g) {
  const GroupTable& grp = inst.group();
  const int gi = g[static_cast<std::size_t>(i)];
  return {oracle_eval(inst, g), std::min(gi, grp.mul(gi, b))};
}

Matrix projector_H(const HSPInstance& inst, const ProductLabel& label) {
  const int d = product_dim(inst.catalog(), label);
  if (inst.trivial()) return Matrix::Identity(d, d);
  const std::vector<int> m = inst.m();
  return (Matrix::Identity(d, d) + product_rep_value(inst.catalog(), label, m)) / 2.0;
}

std::int64_t projector_rank(const HSPInstance& inst, const ProductLabel& label) {
  const int d = product_dim(inst.catalog(), label);
  if (inst.trivial()) return d;
  const std::vector<int> m = inst.m();
  const double chi = product_character(inst.catalog(), label, m).real();
  return static_cast<std::int64_t>(std::llround((d + chi) / 2.0));
}

double WeakDistribution::total() const {
  double s = 0;
  for (const auto& [l, p] : entries) s += p;
  return s;
}

WeakDistribution weak_distribution(const HSPInstance& inst, std::int64_t label_cap) {
  const IrrepCatalog& cat = inst.catalog();
  if (checked_power(cat.size(), inst.n(), label_cap) < 0) {
    throw GuardExceeded("label count |G^|^n exceeds the enumeration cap of " +
                        std::to_string(label_cap));
  }
  const double hsize = inst.trivial() ? 1.0 : 2.0;
  const double total = std::pow(static_cast<double>(inst.group().order()), inst.n());
  WeakDistribution out;
  for_each_label(inst.n(), cat.size(), [&](const ProductLabel& l) {
    const std::int64_t rk = projector_rank(inst, l);
    if (rk == 0) return;
    out.entries.emplace(l, product_dim(cat, l) * hsize * static_cast<double>(rk) / total);
  });
  return out;
}

WeakDistribution plancherel_distribution(const IrrepCatalog& cat, int n, std::int64_t label_cap) {
  if (checked_power(cat.size(), n, label_cap) < 0) {
    throw GuardExceeded("label count |G^|^n exceeds the enumeration cap of " +
                        std::to_string(label_cap));
  }
  const double total = std::pow(static_cast<double>(cat.group().order()), n);
  WeakDistribution out;
  for_each_label(n, cat.size(), [&](const ProductLabel& l) {
    const double d = product_dim(cat, l);
    out.entries.emplace(l, d * d / total);
  });
  return out;
}

double tv_distance(const WeakDistribution& p, const WeakDistribution& q) {
  double s = 0;
  for (const auto& [l, v] : p.entries) s += std::abs(v - q(l));
  for (const auto& [l, v] : q.entries)
    if (!p.entries.contains(l)) s += std::abs(v);
  return s / 2.0;
}

std::vector<ProductLabel> h_perp(const HSPInstance& inst, std::int64_t label_cap) {
  const IrrepCatalog& cat = inst.catalog();
  const auto& one = cat.one_dim_labels();
  if (checked_power(static_cast<std::int64_t>(one.size()), inst.n(), label_cap) < 0) {
    throw GuardExceeded("one-dimensional label count exceeds the enumeration cap");
  }
  std::vector<ProductLabel> out;
  const std::vector<int> m = inst.m();
  for_each_label(inst.n(), static_cast<int>(one.size()), [&](const ProductLabel& idx) {
    ProductLabel l(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) l[i] = one[static_cast<std::size_t>(idx[i])];
    if (std::abs(product_character(cat, l, m) - 1.0) < kStructuralTol) out.push_back(std::move(l));
  });
  return out;
}

bool is_missing_harmonic(const HSPInstance& inst, const ProductLabel& label) {
  if (inst.trivial()) return false;
  const IrrepCatalog& cat = inst.catalog();
  Complex prod = 1.0;
  for (int i = 0; i < inst.n(); ++i) {
    const int mi = inst.m(i);
    const IrrepLabel l = label[static_cast<std::size_t>(i)];
    if (!cat.is_scalar_at(l, mi)) return false;
    prod *= cat.scalar_at(l, mi);
  }
  return std::abs(prod + 1.0) < kStructuralTol;
}

std::optional<IrrepLabel> check_base_condition(const IrrepCatalog& cat, int mu) {
  for (const auto& irr : cat.irreps()) {
    if (max_abs(irr(mu) + Matrix::Identity(irr.dim, irr.dim)) <= kStructuralTol) return irr.label;
  }
  return std::nullopt;
}

std::optional<Subgroup> check_normal_condition(const GroupTable& g, int mu) {
  for (const Subgroup& nsub : normal_subgroups(g)) {
    if (nsub.contains(mu)) continue;
    bool central = true;
    for (int x = 0; x < g.order() && central; ++x) {
      central = nsub.contains(g.mul(g.conjugate(x, mu), g.inv(mu)));
    }
    if (central) return nsub;
  }
  return std::nullopt;
}

ProjectiveKernel projective_kernel(const IrrepCatalog& cat, IrrepLabel rho) {
  ProjectiveKernel out;
  for (int g = 0; g < cat.group().order(); ++g) {
    if (cat.is_scalar_at(rho, g)) {
      out.kernel.elements.push_back(g);
      out.chi.push_back(cat.scalar_at(rho, g));
    }
  }
  if (!is_normal(cat.group(), out.kernel)) {
    throw NumericalError("projective kernel is not a normal subgroup");
  }
  return out;
}

}  // namespace simon
