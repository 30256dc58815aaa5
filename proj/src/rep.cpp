#include "simon/rep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "simon/error.hpp"

namespace simon {

namespace {

constexpr double kCharTol = 1e-6;
constexpr int kCatalogAttempts = 8;

bool char_equal(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > kCharTol) return false;
  return true;
}

// Descending lexicographic order on character vectors.
bool char_before(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].real() - b[i].real()) > kCharTol) return a[i].real() > b[i].real();
    if (std::abs(a[i].imag() - b[i].imag()) > kCharTol) return a[i].imag() > b[i].imag();
  }
  return false;
}

// rho(g) = V^dagger L(g) V with (L(g) V)[p] = V[g^-1 p].
Matrix restrict_left_regular(const GroupTable& g, const Matrix& v, int h) {
  const int r = g.order();
  Matrix lv(r, v.cols());
  const int hinv = g.inv(h);
  for (int p = 0; p < r; ++p) lv.row(p) = v.row(g.mul(hinv, p));
  return v.adjoint() * lv;
}

struct Attempt {
  std::vector<Irrep> irreps;
  std::string failure;
};

Attempt try_decompose(const GroupTable& g, Rng& rng) {
  const int r = g.order();
  const Matrix a = random_hermitian(r, rng);
  Matrix b = Matrix::Zero(r, r);
  for (int h = 0; h < r; ++h) {
    const int hinv = g.inv(h);
    for (int p = 0; p < r; ++p)
      for (int q = 0; q < r; ++q) b(p, q) += a(g.mul(hinv, p), g.mul(hinv, q));
  }
  b /= static_cast<double>(r);
  b = (b + b.adjoint()).eval() / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(b);
  const RealVector& ev = es.eigenvalues();
  const double scale = 1.0 + ev.cwiseAbs().maxCoeff();
  constexpr double kSame = 1e-8, kDistinct = 1e-5;

  std::vector<std::pair<int, int>> clusters;  // [begin, end)
  int begin = 0;
  for (int i = 1; i <= r; ++i) {
    if (i < r) {
      const double gap = (ev(i) - ev(i - 1)) / scale;
      if (gap <= kSame) continue;
      if (gap < kDistinct) return {{}, "ambiguous eigenvalue gap"};
    }
    clusters.emplace_back(begin, i);
    begin = i;
  }

  struct Block {
    Irrep irrep;
    int copies = 0;
  };
  std::vector<Block> blocks;
  for (auto [lo, hi] : clusters) {
    const Matrix v = es.eigenvectors().middleCols(lo, hi - lo);
    Irrep irr;
    irr.dim = hi - lo;
    irr.matrices.reserve(static_cast<std::size_t>(r));
    for (int h = 0; h < r; ++h) irr.matrices.push_back(restrict_left_regular(g, v, h));
    for (const auto& cls : g.classes()) {
      const Complex c = irr.matrices[static_cast<std::size_t>(cls.front())].trace();
      for (int x : cls) {
        if (std::abs(irr.matrices[static_cast<std::size_t>(x)].trace() - c) > 1e-7) {
          return {{}, "character not constant on a class"};
        }
      }
      irr.character.push_back(c);
    }
    Complex norm = 0;
    for (std::size_t c = 0; c < g.classes().size(); ++c) {
      norm += static_cast<double>(g.classes()[c].size()) * std::norm(irr.character[c]);
    }
    norm /= static_cast<double>(r);
    if (std::abs(norm - 1.0) > 1e-6) return {{}, "reducible eigenspace"};

    auto it = std::find_if(blocks.begin(), blocks.end(), [&](const Block& blk) {
      return char_equal(blk.irrep.character, irr.character);
    });
    if (it == blocks.end()) {
      blocks.push_back(Block{std::move(irr), 1});
    } else {
      ++it->copies;
    }
  }

  int total = 0;
  std::vector<Irrep> out;
  for (auto& blk : blocks) {
    if (blk.copies != blk.irrep.dim) return {{}, "multiplicity does not match dimension"};
    total += blk.irrep.dim * blk.irrep.dim;
    out.push_back(std::move(blk.irrep));
  }
  if (total != r) return {{}, "sum of squared dimensions does not match the group order"};

  for (const auto& irr : out) {
    for (int x = 0; x < r; ++x) {
      if (unitarity_error(irr(x)) > kStructuralTol) return {{}, "non-unitary block"};
      for (int y = 0; y < r; ++y) {
        if (max_abs(irr(g.mul(x, y)) - irr(x) * irr(y)) > kStructuralTol) {
          return {{}, "homomorphism check failed"};
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const Irrep& x, const Irrep& y) {
    if (x.dim != y.dim) return x.dim < y.dim;
    return char_before(x.character, y.character);
  });
  for (std::size_t l = 0; l < out.size(); ++l) out[l].label = static_cast<IrrepLabel>(l);
  return {std::move(out), {}};
}

}  // namespace

IrrepCatalog::IrrepCatalog(std::shared_ptr<const GroupTable> group, std::vector<Irrep> irreps,
                           std::uint64_t seed)
    : group_(std::move(group)), irreps_(std::move(irreps)), seed_(seed) {
  const auto n = irreps_.size();
  for (const auto& irr : irreps_)
    if (irr.dim == 1) one_dim_.push_back(irr.label);

  auto find_char = [&](const std::vector<Complex>& chi) -> IrrepLabel {
    for (const auto& irr : irreps_)
      if (char_equal(irr.character, chi)) return irr.label;
    return -1;
  };

  dual_.resize(n);
  twist_.assign(n, std::vector<IrrepLabel>(n, -1));
  for (const auto& irr : irreps_) {
    std::vector<Complex> conj(irr.character.size());
    std::transform(irr.character.begin(), irr.character.end(), conj.begin(),
                   [](Complex c) { return std::conj(c); });
    dual_[static_cast<std::size_t>(irr.label)] = find_char(conj);
    if (dual_[static_cast<std::size_t>(irr.label)] < 0) {
      throw NumericalError("catalog is missing a dual irrep");
    }
    for (IrrepLabel psi : one_dim_) {
      std::vector<Complex> prod(irr.character.size());
      const auto& cpsi = irreps_[static_cast<std::size_t>(psi)].character;
      for (std::size_t c = 0; c < prod.size(); ++c) prod[c] = irr.character[c] * cpsi[c];
      const IrrepLabel t = find_char(prod);
      if (t < 0) throw NumericalError("catalog has no match for a one-dimensional twist");
      twist_[static_cast<std::size_t>(irr.label)][static_cast<std::size_t>(psi)] = t;
    }
  }

  scalar_.resize(n);
  for (const auto& irr : irreps_) {
    auto& row = scalar_[static_cast<std::size_t>(irr.label)];
    row.reserve(irr.matrices.size());
    for (const auto& m : irr.matrices) {
      const Complex lambda = m(0, 0);
      const bool scalar =
          max_abs(m - lambda * Matrix::Identity(m.rows(), m.cols())) <= kStructuralTol;
      row.emplace_back(scalar, lambda);
    }
  }
}

IrrepLabel IrrepCatalog::twist(IrrepLabel rho, IrrepLabel psi) const {
  const IrrepLabel t = twist_[static_cast<std::size_t>(rho)][static_cast<std::size_t>(psi)];
  if (t < 0) throw ValidationError("twist requires a one-dimensional label");
  return t;
}

IrrepCatalog compute_catalog(std::shared_ptr<const GroupTable> group, std::uint64_t seed) {
  std::string last;
  for (int attempt = 0; attempt < kCatalogAttempts; ++attempt) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(attempt));
    Attempt a = try_decompose(*group, rng);
    if (a.failure.empty()) return IrrepCatalog(std::move(group), std::move(a.irreps), seed);
    last = a.failure;
  }
  throw NumericalError("irrep decomposition did not converge after " +
                       std::to_string(kCatalogAttempts) + " seeded attempts (" + last +
                       "); retry with a different catalog seed");
}

std::vector<IrrepLabel> one_dim_reps(const IrrepCatalog& cat) { return cat.one_dim_labels(); }

IrrepLabel dual_rep(const IrrepCatalog& cat, IrrepLabel rho) { return cat.dual(rho); }

IrrepLabel tensor_one_dim(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel psi) {
  if (!cat.is_one_dim(psi)) throw ValidationError("tensor_one_dim: psi is not one-dimensional");
  return cat.twist(rho, psi);
}

Complex character_inner(const IrrepCatalog& cat, std::span<const Complex> a,
                        std::span<const Complex> b) {
  const auto& classes = cat.group().classes();
  Complex s = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    s += static_cast<double>(classes[c].size()) * a[c] * std::conj(b[c]);
  }
  return s / static_cast<double>(cat.group().order());
}

std::vector<int> cg_multiplicities(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel sigma) {
  const auto& a = cat[rho].character;
  const auto& b = cat[sigma].character;
  std::vector<Complex> prod(a.size());
  for (std::size_t c = 0; c < a.size(); ++c) prod[c] = a[c] * b[c];
  std::vector<int> mult(static_cast<std::size_t>(cat.size()));
  for (IrrepLabel t = 0; t < cat.size(); ++t) {
    const Complex m = character_inner(cat, prod, cat[t].character);
    const double rounded = std::round(m.real());
    if (std::abs(m - rounded) > kDerivedTol) {
      throw NumericalError("non-integral Clebsch-Gordan multiplicity");
    }
    mult[static_cast<std::size_t>(t)] = static_cast<int>(rounded);
  }
  return mult;
}

Matrix diagonal_tensor(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel sigma, int g) {
  return kron(cat[rho](g), cat[sigma](g));
}

Matrix isotypic_projector(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel sigma,
                          IrrepLabel tau) {
  const auto& grp = cat.group();
  const int d = cat.dim(rho) * cat.dim(sigma);
  Matrix p = Matrix::Zero(d, d);
  for (int g = 0; g < grp.order(); ++g) {
    p += std::conj(cat.character(tau, g)) * diagonal_tensor(cat, rho, sigma, g);
  }
  return p * (static_cast<double>(cat.dim(tau)) / grp.order());
}

CGData cg_transform(const IrrepCatalog& cat, IrrepLabel rho, IrrepLabel sigma,
                    std::uint64_t basis_seed) {
  const auto& grp = cat.group();
  const int r = grp.order();
  const int dim = cat.dim(rho) * cat.dim(sigma);

  CGData out;
  out.rho = rho;
  out.sigma = sigma;
  out.multiplicities = cg_multiplicities(cat, rho, sigma);
  out.transform = Matrix::Zero(dim, dim);
  out.tau_rows.resize(static_cast<std::size_t>(cat.size()));

  std::vector<Matrix> pi;
  pi.reserve(static_cast<std::size_t>(r));
  for (int g = 0; g < r; ++g) pi.push_back(diagonal_tensor(cat, rho, sigma, g));

  Rng rng = make_rng(basis_seed, static_cast<std::uint64_t>(rho * cat.size() + sigma));
  int row = 0;
  for (IrrepLabel tau = 0; tau < cat.size(); ++tau) {
    const int m = out.multiplicities[static_cast<std::size_t>(tau)];
    if (m == 0) continue;
    const int d = cat.dim(tau);
    const double norm = static_cast<double>(d) / r;

    // P_{k0} = (d/|G|) sum_g conj(tau(g)_{k0}) pi(g) maps the (0)-weight space onto the (k)-weight space
    std::vector<Matrix> p(static_cast<std::size_t>(d), Matrix::Zero(dim, dim));
    for (int g = 0; g < r; ++g) {
      const Matrix& t = cat[tau](g);
      for (int k = 0; k < d; ++k) p[static_cast<std::size_t>(k)] += std::conj(t(k, 0)) * pi[static_cast<std::size_t>(g)];
    }
    for (auto& pk : p) pk *= norm;

    Matrix u = projector_range((p[0] + p[0].adjoint()) / 2.0);
    if (u.cols() != m) {
      throw NumericalError("isotypic projector rank inconsistent with the multiplicity");
    }
    if (basis_seed != 0) u = u * random_unitary(m, rng);

    for (int c = 0; c < m; ++c) {
      out.block_layout.push_back(CGBlock{tau, c, row + c * d});
      for (int k = 0; k < d; ++k) {
        const Vector v = p[static_cast<std::size_t>(k)] * u.col(c);
        out.transform.row(row + c * d + k) = v.adjoint();
      }
    }
    out.tau_rows[static_cast<std::size_t>(tau)] = out.transform.middleRows(row, m * d);
    row += m * d;
  }
  if (row != dim) throw NumericalError("Clebsch-Gordan blocks do not fill the tensor space");
  if (unitarity_error(out.transform) > kStructuralTol) {
    throw NumericalError("Clebsch-Gordan orthonormalization failed");
  }
  return out;
}

CGCache::CGCache(std::shared_ptr<const IrrepCatalog> cat, std::uint64_t basis_seed)
    : cat_(std::move(cat)),
      basis_seed_(basis_seed),
      slots_(std::make_unique<Slot[]>(static_cast<std::size_t>(cat_->size() * cat_->size()))) {}

const CGData& CGCache::get(IrrepLabel rho, IrrepLabel sigma) const {
  Slot& slot = slots_[static_cast<std::size_t>(rho * cat_->size() + sigma)];
  std::call_once(slot.once, [&] { slot.data = cg_transform(*cat_, rho, sigma, basis_seed_); });
  return slot.data;
}

int fourier_offset(const IrrepCatalog& cat, IrrepLabel rho) {
  int off = 0;
  for (IrrepLabel l = 0; l < rho; ++l) off += cat.dim(l) * cat.dim(l);
  return off;
}

Matrix fourier_matrix(const IrrepCatalog& cat) {
  const int r = cat.group().order();
  Matrix f(r, r);
  int row = 0;
  for (const auto& irr : cat.irreps()) {
    const double s = std::sqrt(static_cast<double>(irr.dim) / r);
    for (int i = 0; i < irr.dim; ++i)
      for (int j = 0; j < irr.dim; ++j, ++row)
        for (int g = 0; g < r; ++g) f(row, g) = s * irr(g)(i, j);
  }
  return f;
}

Matrix right_regular(const GroupTable& g, int h) {
  Matrix m = Matrix::Zero(g.order(), g.order());
  for (int x = 0; x < g.order(); ++x) m(g.mul(x, h), x) = 1.0;
  return m;
}

int product_dim(const IrrepCatalog& cat, const ProductLabel& label) {
  int d = 1;
  for (IrrepLabel l : label) d *= cat.dim(l);
  return d;
}

Complex product_character(const IrrepCatalog& cat, const ProductLabel& label,
                          std::span<const int> elements) {
  if (label.size() != elements.size()) throw ValidationError("label/element length mismatch");
  Complex c = 1.0;
  for (std::size_t i = 0; i < label.size(); ++i) c *= cat.character(label[i], elements[i]);
  return c;
}

Matrix product_rep_value(const IrrepCatalog& cat, const ProductLabel& label,
                         std::span<const int> elements) {
  if (label.size() != elements.size()) throw ValidationError("label/element length mismatch");
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < label.size(); ++i) out = kron(out, cat[label[i]](elements[i]));
  return out;
}

double commutant_deviation(const GroupTable& g, const Irrep& irrep, Rng& rng) {
  const Matrix a = random_hermitian(irrep.dim, rng);
  Matrix b = Matrix::Zero(irrep.dim, irrep.dim);
  for (int h = 0; h < g.order(); ++h) b += irrep(h) * a * irrep(h).adjoint();
  b /= static_cast<double>(g.order());
  const Complex lambda = b.trace() / static_cast<double>(irrep.dim);
  return max_abs(b - lambda * Matrix::Identity(irrep.dim, irrep.dim));
}

}  // namespace simon
