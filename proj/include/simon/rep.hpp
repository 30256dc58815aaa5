#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "simon/group.hpp"
#include "simon/linalg.hpp"

namespace simon {

/// Index into an IrrepCatalog's canonical irrep list.
using IrrepLabel = int;
/// Irrep of G^n: one IrrepLabel per coordinate.
using ProductLabel = std::vector<IrrepLabel>;

inline constexpr std::uint64_t kDefaultCatalogSeed = 0x5eed'2005'c1eb'0001ull;

struct Irrep {
  IrrepLabel label = 0;
  int dim = 1;
  std::vector<Matrix> matrices;     // one unitary per group element
  std::vector<Complex> character;   // one value per conjugacy class

  const Matrix& operator()(int g) const { return matrices[static_cast<std::size_t>(g)]; }
};

/// The complete list of irreps of a group in canonical order: dimension
/// ascending, then character vectors in descending lexicographic order
/// (real part, then imaginary part, class by class). The trivial irrep is
/// always label 0.
class IrrepCatalog {
 public:
  IrrepCatalog(std::shared_ptr<const GroupTable> group, std::vector<Irrep> irreps,
               std::uint64_t seed);

  const GroupTable& group() const { return *group_; }
  std::shared_ptr<const GroupTable> group_ptr() const { return group_; }
  int size() const { return static_cast<int>(irreps_.size()); }
  const Irrep& operator[](IrrepLabel l) const { return irreps_[static_cast<std::size_t>(l)]; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  int dim(IrrepLabel l) const { return irreps_[static_cast<std::size_t>(l)].dim; }
  std::uint64_t seed() const { return seed_; }

  Complex character(IrrepLabel l, int g) const {
    return irreps_[static_cast<std::size_t>(l)].character[static_cast<std::size_t>(group_->class_of(g))];
  }
  const std::vector<IrrepLabel>& one_dim_labels() const { return one_dim_; }
  bool is_one_dim(IrrepLabel l) const { return dim(l) == 1; }

  IrrepLabel dual(IrrepLabel l) const { return dual_[static_cast<std::size_t>(l)]; }
  /// Label of g -> psi(g) rho(g); psi must be one-dimensional.
  IrrepLabel twist(IrrepLabel rho, IrrepLabel psi) const;
  /// Product of two one-dimensional labels.
  IrrepLabel one_dim_product(IrrepLabel a, IrrepLabel b) const { return twist(a, b); }

  /// True if rho(g) is a scalar matrix; the scalar is stored alongside.
  bool is_scalar_at(IrrepLabel l, int g) const {
    return scalar_[static_cast<std::size_t>(l)][static_cast<std::size_t>(g)].first;
  }
  Complex scalar_at(IrrepLabel l, int g) const {
    return scalar_[static_cast<std::size_t>(l)][static_cast<std::size_t>(g)].second;
  }

 private:
  std::shared_ptr<const GroupTable> group_;
  std::vector<Irrep> irreps_;
  std::vector<IrrepLabel> one_dim_;
  std::vector<IrrepLabel> dual_;
  std::vector<std::vector<IrrepLabel>> twist_;  // [rho][psi], -1 unless psi is one-dimensional
  std::vector<std::vector<std::pair<bool, Complex>>> scalar_;
  std::uint64_t seed_;
};

/// Builds explicit unitary irreps by splitting the left-regular representation
/// with a group-averaged random Hermitian matrix. Retries with derived seeds on
/// accidental eigenvalue degeneracy; throws NumericalError when all attempts fail.
IrrepCatalog compute_catalog(std::shared_ptr<const GroupTable> group,
                             std::uint64_t seed = kDefaultCatalogSeed);

std::vector<IrrepLabel> one_dim_reps(const IrrepCatalog& cat);
IrrepLabel dual_rep(const IrrepCatalog& cat, IrrepLabel rho);
IrrepLabel tensor_one_dim(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel psi);

/// Character inner product <chi_a, chi_b>.
Complex character_inner(const IrrepCatalog& cat, std::span<const Complex> a,
                        std::span<const Complex> b);

/// mult[tau] for rho (x) sigma, indexed by catalog label.
std::vector<int> cg_multiplicities(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel sigma);

/// (rho (x) sigma)(g) = rho(g) (x) sigma(g)
Matrix diagonal_tensor(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel sigma, int g);

/// (d_tau/|G|) sum_g conj(chi_tau(g)) (rho (x) sigma)(g)
Matrix isotypic_projector(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel sigma,
                          IrrepLabel tau);

struct CGBlock {
  IrrepLabel tau;
  int copy;
  int row_begin;  // rows [row_begin, row_begin + d_tau) of the transform
};

/// Clebsch-Gordan data for rho (x) sigma. `transform` is unitary and
/// T (rho(g) (x) sigma(g)) T^dagger = (+)_tau I_mult (x) tau(g), blocks in
/// block_layout order (tau ascending, copy ascending).
struct CGData {
  IrrepLabel rho = 0;
  IrrepLabel sigma = 0;
  std::vector<int> multiplicities;  // indexed by tau
  Matrix transform;
  std::vector<CGBlock> block_layout;
  std::vector<Matrix> tau_rows;  // per tau: the mult*d_tau rows of T (empty if absent)
};

/// `basis_seed` = 0 gives the canonical intertwiner basis; any other value
/// rotates each multiplicity space by a seeded random unitary.
CGData cg_transform(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel sigma,
                    std::uint64_t basis_seed = 0);

/// Lazily filled, thread-safe table of CGData for all ordered label pairs.
class CGCache {
 public:
  explicit CGCache(std::shared_ptr<const IrrepCatalog> cat, std::uint64_t basis_seed = 0);
  const CGData& get(IrrepLabel rho, IrrepLabel sigma) const;
  const IrrepCatalog& catalog() const { return *cat_; }
  std::shared_ptr<const IrrepCatalog> catalog_ptr() const { return cat_; }
  std::uint64_t basis_seed() const { return basis_seed_; }

 private:
  struct Slot {
    std::once_flag once;
    CGData data;
  };
  std::shared_ptr<const IrrepCatalog> cat_;
  std::uint64_t basis_seed_;
  std::unique_ptr<Slot[]> slots_;
};

/// Unitary |G| x |G| Fourier matrix; rows (rho, i, j) in canonical order,
/// entries sqrt(d_rho/|G|) rho(g)_ij.
Matrix fourier_matrix(const IrrepCatalog& cat);

/// Row offset of irrep block rho inside fourier_matrix.
int fourier_offset(const IrrepCatalog& cat, IrrepLabel rho);

/// The right-regular operator R_h |x> = |x h>.
Matrix right_regular(const GroupTable& g, int h);

int product_dim(const IrrepCatalog& cat, const ProductLabel& label);
Complex product_character(const IrrepCatalog& cat, const ProductLabel& label,
                          std::span<const int> elements);
/// rho_1(g_1) (x) ... (x) rho_n(g_n)
Matrix product_rep_value(const IrrepCatalog& cat, const ProductLabel& label,
                         std::span<const int> elements);

/// Averaged random-Hermitian commutant test; returns max deviation from a scalar.
double commutant_deviation(const GroupTable& g, const Irrep& irrep, Rng& rng);

}  // namespace simon
