#include "simon/register.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "simon/error.hpp"

namespace simon {

int RegisterState::dim() const {
  int d = 1;
  for (const auto& f : factors) d *= static_cast<int>(f.rows());
  return d;
}

Matrix RegisterState::density() const {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

bool RegisterCheck::ok() const {
  return hermiticity <= kStructuralTol && trace <= kStructuralTol &&
         min_eigenvalue >= -kStructuralTol && invariance <= kDerivedTol;
}

RegisterCheck check_register(const HSPInstance& inst, const RegisterState& r) {
  RegisterCheck c;
  const IrrepCatalog& cat = inst.catalog();
  Complex trace = 1.0;
  Complex lambda_product = 1.0;
  double min_eig = 1.0;
  for (int i = 0; i < inst.n(); ++i) {
    const Matrix& f = r.factors[static_cast<std::size_t>(i)];
    c.hermiticity = std::max(c.hermiticity, hermiticity_error(f));
    trace *= f.trace();
    min_eig = std::min(min_eig, hermitian_eigenvalues((f + f.adjoint()) / 2.0).minCoeff());
    // D_i rho_i(m_i) = lambda_i D_i for a product state with D rho(m) = D
    const Matrix& rm = cat[r.label[static_cast<std::size_t>(i)]](inst.m(i));
    const Matrix fr = f * rm;
    const Complex lambda = fr.trace() / f.trace();
    lambda_product *= lambda;
    c.invariance = std::max(c.invariance, max_abs(fr - lambda * f));
  }
  c.trace = std::abs(trace - 1.0);
  c.min_eigenvalue = min_eig;
  c.invariance = std::max(c.invariance, std::abs(lambda_product - 1.0));
  return c;
}

WeakSampler::WeakSampler(const HSPInstance& inst) : inst_(inst) {
  const IrrepCatalog& cat = inst.catalog();
  const double order = inst.group().order();
  for (int i = 0; i < inst.n(); ++i) {
    std::vector<Outcome> outs;
    const int mi = inst.m(i);
    for (const auto& irr : cat.irreps()) {
      const int d = irr.dim;
      const Matrix id = Matrix::Identity(d, d);
      if (inst.trivial()) {
        outs.push_back({irr.label, +1, d * d / order, id / static_cast<double>(d)});
        continue;
      }
      // Pi^{+-} = (I +- rho(m_i))/2 has rank (d +- chi(m_i))/2
      const double chi = irr.character[static_cast<std::size_t>(inst.group().class_of(mi))].real();
      for (int s : {+1, -1}) {
        const double rank = std::round((d + s * chi) / 2.0);
        if (rank == 0) continue;
        outs.push_back({irr.label, s, d * rank / order, (id + s * irr(mi)) / (2.0 * rank)});
      }
    }
    std::vector<double> cum;
    double acc = 0;
    for (const auto& o : outs) cum.push_back(acc += o.probability);
    outcomes_.push_back(std::move(outs));
    cumulative_.push_back(std::move(cum));
  }
}

RegisterState WeakSampler::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = outcomes_.size();
  std::vector<const Outcome*> pick(n);
  // Draw (rho_i, s_i) independently, keep only even sign parity: the joint law is
  // proportional to prod d_i r_i^{s_i}, whose label marginal is d rk(Pi_H)
  while (true) {
    int parity = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& cum = cumulative_[i];
      const double u = unit(rng) * cum.back();
      auto it = std::upper_bound(cum.begin(), cum.end(), u);
      if (it == cum.end()) --it;
      pick[i] = &outcomes_[i][static_cast<std::size_t>(it - cum.begin())];
      parity *= pick[i]->sign;
    }
    if (parity == 1) break;
  }
  RegisterState r;
  r.label.reserve(n);
  r.factors.reserve(n);
  for (const Outcome* o : pick) {
    r.label.push_back(o->label);
    r.factors.push_back(o->factor);
  }
  return r;
}

RegisterState weak_sample(const HSPInstance& inst, Rng& rng) {
  return WeakSampler(inst).sample(rng);
}

std::vector<WeightedRegister> fresh_components(const HSPInstance& inst, const ProductLabel& label) {
  const IrrepCatalog& cat = inst.catalog();
  const int n = inst.n();
  if (n > 24) throw GuardExceeded("fresh_components enumerates 2^n sign patterns; n <= 24");
  std::vector<WeightedRegister> out;
  if (inst.trivial()) {
    RegisterState r;
    r.label = label;
    for (IrrepLabel l : label) {
      const int d = cat.dim(l);
      r.factors.push_back(Matrix::Identity(d, d) / static_cast<double>(d));
    }
    out.push_back({1.0, std::move(r)});
    return out;
  }
  const double rk = static_cast<double>(projector_rank(inst, label));
  if (rk == 0) throw ValidationError("label is a missing harmonic; no post-measurement state");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    RegisterState r;
    r.label = label;
    double weight = 1.0;
    for (int i = 0; i < n; ++i) {
      const IrrepLabel l = label[static_cast<std::size_t>(i)];
      const int d = cat.dim(l);
      const int s = (mask >> i) & 1 ? -1 : +1;
      const double chi = cat.character(l, inst.m(i)).real();
      const double rank = std::round((d + s * chi) / 2.0);
      weight *= rank;
      if (rank == 0) break;
      r.factors.push_back((Matrix::Identity(d, d) + s * cat[l](inst.m(i))) / (2.0 * rank));
    }
    if (weight == 0) continue;
    out.push_back({weight / rk, std::move(r)});
  }
  return out;
}

Matrix fresh_density(const HSPInstance& inst, const ProductLabel& label) {
  const int d = product_dim(inst.catalog(), label);
  if (inst.trivial()) return Matrix::Identity(d, d) / static_cast<double>(d);
  const std::int64_t rk = projector_rank(inst, label);
  if (rk == 0) throw ValidationError("label is a missing harmonic; no post-measurement state");
  return projector_H(inst, label) / static_cast<double>(rk);
}

CoordinateOutcomes coordinate_outcomes(const CGCache& cg, IrrepLabel rho, const Matrix& d1,
                                       IrrepLabel sigma, const Matrix& d2) {
  const CGData& data = cg.get(rho, sigma);
  const Matrix& t = data.transform;
  const Matrix z = t * kron(d1, d2) * t.adjoint();
  const IrrepCatalog& cat = cg.catalog();

  CoordinateOutcomes out;
  for (const CGBlock& blk : data.block_layout) {
    const int d = cat.dim(blk.tau);
    const auto block = z.block(blk.row_begin, blk.row_begin, d, d);
    if (out.taus.empty() || out.taus.back() != blk.tau) {
      out.taus.push_back(blk.tau);
      out.probabilities.push_back(0.0);
      out.children.push_back(Matrix::Zero(d, d));
    }
    // probability tr(P_tau X) = tr(T_tau X T_tau^dagger); child = Tr_mult of the block
    out.probabilities.back() += block.trace().real();
    out.children.back() += block;
  }
  for (std::size_t k = 0; k < out.taus.size(); ++k) {
    const double p = out.probabilities[k];
    if (p > kUnderflowGuard) {
      out.children[k] /= p;
      out.children[k] = (out.children[k] + out.children[k].adjoint()).eval() / 2.0;
    } else {
      out.children[k].resize(0, 0);
    }
  }
  return out;
}

double missing_harmonic_mass(const HSPInstance& inst,
                             const std::vector<CoordinateOutcomes>& per_coordinate) {
  if (inst.trivial()) return 0.0;
  const IrrepCatalog& cat = inst.catalog();
  // mass with all tau_i(m_i) scalar so far, split by the running product (+1 / -1)
  double plus = 1.0, minus = 0.0;
  for (int i = 0; i < inst.n(); ++i) {
    const auto& co = per_coordinate[static_cast<std::size_t>(i)];
    double p_plus = 0, p_minus = 0;
    for (std::size_t k = 0; k < co.taus.size(); ++k) {
      if (!cat.is_scalar_at(co.taus[k], inst.m(i))) continue;
      const double p = std::max(0.0, co.probabilities[k]);
      (cat.scalar_at(co.taus[k], inst.m(i)).real() > 0 ? p_plus : p_minus) += p;
    }
    const double np = plus * p_plus + minus * p_minus;
    const double nm = plus * p_minus + minus * p_plus;
    plus = np;
    minus = nm;
  }
  return minus;
}

namespace {

std::vector<CoordinateOutcomes> all_coordinates(const RegisterState& r1, const RegisterState& r2,
                                                const HSPInstance& inst) {
  if (r1.label.size() != r2.label.size() || static_cast<int>(r1.label.size()) != inst.n()) {
    throw ValidationError("combine: register lengths do not match the instance");
  }
  std::vector<CoordinateOutcomes> out;
  out.reserve(r1.label.size());
  for (std::size_t i = 0; i < r1.label.size(); ++i) {
    out.push_back(coordinate_outcomes(inst.cg(), r1.label[i], r1.factors[i], r2.label[i],
                                      r2.factors[i]));
  }
  return out;
}

}  // namespace

CombineOutcome combine(const RegisterState& r1, const RegisterState& r2, const HSPInstance& inst,
                       Rng& rng) {
  const auto per = all_coordinates(r1, r2, inst);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CombineOutcome out;
  out.missing_mass = missing_harmonic_mass(inst, per);
  out.probability = 1.0;
  // The isotypic projector factors over coordinates and the state is a product,
  // so the conditional law of tau_i given tau_1..tau_{i-1} is its marginal.
  for (const auto& co : per) {
    double total = 0;
    for (std::size_t k = 0; k < co.taus.size(); ++k)
      if (co.probabilities[k] > kUnderflowGuard) total += co.probabilities[k];
    if (total <= kUnderflowGuard) throw NumericalError("combine: all outcomes underflow");
    const double u = unit(rng) * total;
    double acc = 0;
    std::size_t chosen = co.taus.size();
    for (std::size_t k = 0; k < co.taus.size(); ++k) {
      if (co.probabilities[k] <= kUnderflowGuard) continue;
      chosen = k;
      acc += co.probabilities[k];
      if (u < acc) break;
    }
    out.child_label.push_back(co.taus[chosen]);
    out.child.factors.push_back(co.children[chosen]);
    out.probability *= co.probabilities[chosen];
  }
  out.child.label = out.child_label;
  return out;
}

std::vector<CombineOutcome> combine_outcomes(const RegisterState& r1, const RegisterState& r2,
                                             const HSPInstance& inst, std::int64_t outcome_cap) {
  const auto per = all_coordinates(r1, r2, inst);
  const double missing = missing_harmonic_mass(inst, per);
  std::vector<std::vector<std::size_t>> alive(per.size());
  std::int64_t count = 1;
  for (std::size_t i = 0; i < per.size(); ++i) {
    for (std::size_t k = 0; k < per[i].taus.size(); ++k)
      if (per[i].probabilities[k] > kUnderflowGuard) alive[i].push_back(k);
    count *= static_cast<std::int64_t>(alive[i].size());
    if (count > outcome_cap) throw GuardExceeded("combine_outcomes: too many joint outcomes");
  }
  std::vector<CombineOutcome> out;
  std::vector<std::size_t> idx(per.size(), 0);
  while (true) {
    CombineOutcome o;
    o.probability = 1.0;
    o.missing_mass = missing;
    for (std::size_t i = 0; i < per.size(); ++i) {
      const std::size_t k = alive[i][idx[i]];
      o.child_label.push_back(per[i].taus[k]);
      o.child.factors.push_back(per[i].children[k]);
      o.probability *= per[i].probabilities[k];
    }
    o.child.label = o.child_label;
    out.push_back(std::move(o));
    bool done = true;
    for (std::size_t i = per.size(); i-- > 0;) {
      if (++idx[i] < alive[i].size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) return out;
  }
}

}  // namespace simon
