#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "simon/group.hpp"
#include "simon/rep.hpp"

namespace simon {

/// Which form of the base condition an instance satisfies. A one-dimensional
/// witness is also a scalar witness; both are recorded when present.
struct BaseCondition {
  std::optional<IrrepLabel> one_dim_witness;  // chi(mu) = -1
  std::optional<IrrepLabel> scalar_witness;   // rho(mu) = -I
};

/// Simon's problem over G^n: hidden subgroup trivial or {1, m}.
class HSPInstance {
 public:
  /// `hidden` empty means trivial. Throws ValidationError on a malformed instance.
  static HSPInstance make(std::shared_ptr<const CGCache> cg, int n, int mu,
                          std::vector<int> hidden = {});

  const GroupTable& group() const { return catalog().group(); }
  const IrrepCatalog& catalog() const { return cg_->catalog(); }
  const CGCache& cg() const { return *cg_; }
  std::shared_ptr<const CGCache> cg_ptr() const { return cg_; }
  int n() const { return n_; }
  int mu() const { return mu_; }
  bool trivial() const { return m_.empty(); }
  /// The hidden involution; the identity vector when trivial.
  std::vector<int> m() const;
  int m(int i) const { return trivial() ? group().identity() : m_[static_cast<std::size_t>(i)]; }
  const BaseCondition& base_condition() const { return base_; }

  /// Same instance over a different CG cache (e.g. another basis seed).
  HSPInstance with_cg(std::shared_ptr<const CGCache> cg) const;
  HSPInstance with_hidden(std::vector<int> hidden) const;

 private:
  std::shared_ptr<const CGCache> cg_;
  int n_ = 1;
  int mu_ = 0;
  std::vector<int> m_;
  BaseCondition base_;
};

/// Shorthand: build group, catalog and CG cache from a spec.
std::shared_ptr<const CGCache> make_cg_cache(const GroupTable& g,
                                             std::uint64_t catalog_seed = kDefaultCatalogSeed,
                                             std::uint64_t basis_seed = 0);

/// Mixed-radix encoding of the smallest element of the coset g H (first coordinate
/// most significant). Throws GuardExceeded if |G|^n does not fit in 63 bits.
std::uint64_t oracle_eval(const HSPInstance& inst, std::span<const int> g);

/// The effective instance behind the pair-valued oracle (f(g), c_b(g_i)).
HSPInstance modified_oracle(const HSPInstance& inst, int i, int b);

/// The literal pair-valued oracle, for black-box fidelity checks.
std::pair<std::uint64_t, int> modified_oracle_literal(const HSPInstance& inst, int i, int b,
                                                      std::span<const int> g);

/// (rho(1) + rho(m))/2 for nontrivial H, identity otherwise.
Matrix projector_H(const HSPInstance& inst, const ProductLabel& label);

/// Closed-form rank of projector_H: (d + chi(m))/2, or d.
std::int64_t projector_rank(const HSPInstance& inst, const ProductLabel& label);

struct WeakDistribution {
  std::map<ProductLabel, double> entries;  // nonzero entries only

  double operator()(const ProductLabel& l) const {
    auto it = entries.find(l);
    return it == entries.end() ? 0.0 : it->second;
  }
  double total() const;
};

inline constexpr std::int64_t kDefaultLabelCap = 1'000'000;

/// Exact weak Fourier sampling distribution over all |G^|^n labels.
WeakDistribution weak_distribution(const HSPInstance& inst,
                                   std::int64_t label_cap = kDefaultLabelCap);
/// d^2/|G|^n.
WeakDistribution plancherel_distribution(const IrrepCatalog& cat, int n,
                                         std::int64_t label_cap = kDefaultLabelCap);

double tv_distance(const WeakDistribution& p, const WeakDistribution& q);

/// One-dimensional labels of G^n with value +1 at m (all of them when trivial).
std::vector<ProductLabel> h_perp(const HSPInstance& inst,
                                 std::int64_t label_cap = kDefaultLabelCap);

/// True iff projector_H is zero, i.e. every rho_i(m_i) is a scalar and their product is -1.
bool is_missing_harmonic(const HSPInstance& inst, const ProductLabel& label);

std::optional<IrrepLabel> check_base_condition(const IrrepCatalog& cat, int mu);
std::optional<Subgroup> check_normal_condition(const GroupTable& g, int mu);

struct ProjectiveKernel {
  Subgroup kernel;
  std::vector<Complex> chi;  // scalar value, aligned with kernel.elements
};
ProjectiveKernel projective_kernel(const IrrepCatalog& cat, IrrepLabel rho);

/// Enumerates all labels in lexicographic order (first coordinate most significant).
template <typename F>
void for_each_label(int n, int alphabet, F&& f) {
  ProductLabel l(static_cast<std::size_t>(n), 0);
  while (true) {
    f(static_cast<const ProductLabel&>(l));
    int i = n - 1;
    while (i >= 0 && ++l[static_cast<std::size_t>(i)] == alphabet) l[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

/// alphabet^n, or -1 if it exceeds `cap`.
std::int64_t checked_power(std::int64_t alphabet, int n, std::int64_t cap);

}  // namespace simon
