// Full-space reference paths: every state lives on the group algebra C[G^n],
// basis |g_1 ... g_n> in mixed radix (first coordinate most significant).
#include <cmath>
#include <string>

#include "simon/error.hpp"
#include "simon/register.hpp"

namespace simon {

namespace {

std::int64_t full_dim(const HSPInstance& inst, std::int64_t guard) {
  const std::int64_t n = checked_power(inst.group().order(), inst.n(), guard);
  if (n < 0) {
    throw GuardExceeded("|G|^n exceeds the full-space guard of " + std::to_string(guard));
  }
  return n;
}

std::vector<int> decode(std::int64_t x, int order, int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(x % order);
    x /= order;
  }
  return out;
}

std::int64_t encode(std::span<const int> x, int order) {
  std::int64_t code = 0;
  for (int v : x) code = code * order + v;
  return code;
}

/// Index of x * m in G^n.
std::vector<std::int64_t> right_shift_table(const HSPInstance& inst, std::int64_t dim) {
  const GroupTable& g = inst.group();
  std::vector<std::int64_t> out(static_cast<std::size_t>(dim));
  for (std::int64_t x = 0; x < dim; ++x) {
    auto v = decode(x, g.order(), inst.n());
    for (int i = 0; i < inst.n(); ++i)
      v[static_cast<std::size_t>(i)] = g.mul(v[static_cast<std::size_t>(i)], inst.m(i));
    out[static_cast<std::size_t>(x)] = encode(v, g.order());
  }
  return out;
}

Matrix nfold_fourier(const IrrepCatalog& cat, int n) {
  const Matrix f = fourier_matrix(cat);
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, f);
  return out;
}

/// Fourier-basis row index of (label, a, b) with a, b mixed-radix over the label dims.
struct BlockIndexer {
  const IrrepCatalog& cat;
  const ProductLabel& label;

  std::int64_t operator()(std::int64_t a, std::int64_t b) const {
    const int n = static_cast<int>(label.size());
    std::vector<int> ai(static_cast<std::size_t>(n)), bi(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      const int d = cat.dim(label[static_cast<std::size_t>(i)]);
      ai[static_cast<std::size_t>(i)] = static_cast<int>(a % d);
      bi[static_cast<std::size_t>(i)] = static_cast<int>(b % d);
      a /= d;
      b /= d;
    }
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i) {
      const IrrepLabel l = label[static_cast<std::size_t>(i)];
      const int d = cat.dim(l);
      idx = idx * cat.group().order() + fourier_offset(cat, l) +
            ai[static_cast<std::size_t>(i)] * d + bi[static_cast<std::size_t>(i)];
    }
    return idx;
  }
};

}  // namespace

Matrix coset_state_literal(const HSPInstance& inst) {
  const std::int64_t dim = full_dim(inst, kWeakReferenceGuard);
  Matrix rho = Matrix::Zero(dim, dim);
  if (inst.trivial()) {
    for (std::int64_t c = 0; c < dim; ++c) rho(c, c) += 1.0;
    return rho / static_cast<double>(dim);
  }
  const auto shift = right_shift_table(inst, dim);
  for (std::int64_t c = 0; c < dim; ++c) {
    Vector v = Vector::Zero(dim);
    v(c) += 1.0 / std::sqrt(2.0);
    v(shift[static_cast<std::size_t>(c)]) += 1.0 / std::sqrt(2.0);
    rho += v * v.adjoint();
  }
  return rho / static_cast<double>(dim);
}

Matrix coset_state_closed_form(const HSPInstance& inst) {
  const std::int64_t dim = full_dim(inst, kWeakReferenceGuard);
  Matrix rho = Matrix::Identity(dim, dim);
  if (!inst.trivial()) {
    const auto shift = right_shift_table(inst, dim);
    for (std::int64_t x = 0; x < dim; ++x) rho(shift[static_cast<std::size_t>(x)], x) += 1.0;
  }
  return rho / static_cast<double>(dim);
}

std::vector<ReferenceLabel> reference_weak_sample_full(const HSPInstance& inst) {
  const IrrepCatalog& cat = inst.catalog();
  const std::int64_t dim = full_dim(inst, kWeakReferenceGuard);
  const Matrix fn = nfold_fourier(cat, inst.n());
  const Matrix rho = coset_state_closed_form(inst);
  const Matrix y = fn * rho * fn.adjoint();
  const bool lift = dim <= 64;

  std::vector<ReferenceLabel> out;
  for_each_label(inst.n(), cat.size(), [&](const ProductLabel& label) {
    const BlockIndexer idx{cat, label};
    const int d = product_dim(cat, label);
    double p = 0;
    Matrix col = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int b2 = 0; b2 < d; ++b2) col(b, b2) += y(idx(a, b), idx(a, b2));
    p = col.trace().real();
    ReferenceLabel r;
    r.label = label;
    r.probability = p;
    if (p > kUnderflowGuard) {
      // stored densities are transposed column-space states
      r.column_density = (col / p).transpose();
      if (lift) {
        Matrix block = Matrix::Zero(dim, dim);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            for (int a2 = 0; a2 < d; ++a2)
              for (int b2 = 0; b2 < d; ++b2)
                block(idx(a, b), idx(a2, b2)) = y(idx(a, b), idx(a2, b2));
        r.full_state = fn.adjoint() * (block / p) * fn;
      }
    }
    out.push_back(std::move(r));
  });
  return out;
}

Matrix full_register_state(const HSPInstance& inst, const ProductLabel& label,
                           const Matrix& column_density) {
  const IrrepCatalog& cat = inst.catalog();
  const std::int64_t dim = full_dim(inst, kWeakReferenceGuard);
  const int d = product_dim(cat, label);
  const BlockIndexer idx{cat, label};
  const Matrix col = column_density.transpose();
  // row index maximally mixed, column index carries the state
  Matrix y = Matrix::Zero(dim, dim);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int b2 = 0; b2 < d; ++b2) y(idx(a, b), idx(a, b2)) = col(b, b2) / static_cast<double>(d);
  const Matrix fn = nfold_fourier(cat, inst.n());
  return fn.adjoint() * y * fn;
}

Matrix controlled_multiplication(const GroupTable& g) {
  const int r = g.order();
  Matrix m = Matrix::Zero(r * r, r * r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) m(a * r + g.mul(b, g.inv(a)), a * r + b) = 1.0;
  return m;
}

std::vector<ReferenceCombineOutcome> reference_combine_full(const HSPInstance& inst,
                                                            const Matrix& x1, const Matrix& x2) {
  const IrrepCatalog& cat = inst.catalog();
  const GroupTable& g = inst.group();
  const int r = g.order();
  if (inst.n() != 1 || r > kCombineReferenceGuard) {
    throw GuardExceeded("reference_combine_full requires n = 1 and |G| <= " +
                        std::to_string(kCombineReferenceGuard));
  }
  const Matrix m = controlled_multiplication(g);
  const Matrix f1 = kron(fourier_matrix(cat), Matrix::Identity(r, r));
  const Matrix w = f1 * m * kron(x1, x2) * m.adjoint() * f1.adjoint();

  std::vector<ReferenceCombineOutcome> out;
  for (const auto& irr : cat.irreps()) {
    const int d = irr.dim;
    const int off = fourier_offset(cat, irr.label);
    Matrix col = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a)
      for (int y = 0; y < r; ++y)
        for (int b = 0; b < d; ++b)
          for (int b2 = 0; b2 < d; ++b2)
            col(b, b2) += w((off + a * d + b) * r + y, (off + a * d + b2) * r + y);
    ReferenceCombineOutcome o;
    o.tau = irr.label;
    o.probability = col.trace().real();
    if (o.probability > kUnderflowGuard) {
      o.column_density = (col / o.probability).transpose();
      o.full_state = full_register_state(inst, ProductLabel{irr.label}, o.column_density);
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::pair<ProductLabel, double>> dense_combine_distribution(
    const HSPInstance& inst, const ProductLabel& rho, const Matrix& d1, const ProductLabel& sigma,
    const Matrix& d2) {
  const IrrepCatalog& cat = inst.catalog();
  const int n = inst.n();
  if (checked_power(cat.size(), n, 10'000) < 0) {
    throw GuardExceeded("dense_combine_distribution enumerates |G^|^n outcomes; too many");
  }
  const int dr = product_dim(cat, rho), ds = product_dim(cat, sigma);
  if (static_cast<std::int64_t>(dr) * ds > 4096) {
    throw GuardExceeded("dense_combine_distribution: joint dimension too large");
  }
  // permutation (rho_1..rho_n)(sigma_1..sigma_n) -> (rho_1 sigma_1)...(rho_n sigma_n)
  const int total = dr * ds;
  std::vector<int> perm(static_cast<std::size_t>(total));
  for (int a = 0; a < dr; ++a)
    for (int b = 0; b < ds; ++b) {
      int ra = a, rb = b, idx = 0, stride = 1;
      for (int i = n - 1; i >= 0; --i) {
        const int da = cat.dim(rho[static_cast<std::size_t>(i)]);
        const int db = cat.dim(sigma[static_cast<std::size_t>(i)]);
        idx += ((ra % da) * db + rb % db) * stride;
        stride *= da * db;
        ra /= da;
        rb /= db;
      }
      perm[static_cast<std::size_t>(a * ds + b)] = idx;
    }
  const Matrix x = kron(d1, d2);
  Matrix xp(total, total);
  for (int p = 0; p < total; ++p)
    for (int q = 0; q < total; ++q)
      xp(perm[static_cast<std::size_t>(p)], perm[static_cast<std::size_t>(q)]) = x(p, q);

  std::vector<std::pair<ProductLabel, double>> out;
  for_each_label(n, cat.size(), [&](const ProductLabel& tau) {
    Matrix proj = Matrix::Identity(1, 1);
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      proj = kron(proj, isotypic_projector(cat, rho[k], sigma[k], tau[k]));
    }
    const double p = (proj * xp).trace().real();
    if (std::abs(p) > kUnderflowGuard) out.emplace_back(tau, p);
  });
  return out;
}

}  // namespace simon
