#include "simon/linalg.hpp"

namespace simon {

int hermitian_rank(const Matrix& h, double tol) {
  if (h.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return static_cast<int>((es.eigenvalues().array() > tol).count());
}

Matrix projector_range(const Matrix& projector, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(projector);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > tol) keep.push_back(i);
  }
  Matrix basis(projector.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  }
  return basis;
}

Matrix partial_trace_outer(const Matrix& x, Eigen::Index outer, Eigen::Index inner) {
  Matrix out = Matrix::Zero(inner, inner);
  for (Eigen::Index c = 0; c < outer; ++c) {
    out += x.block(c * inner, c * inner, inner, inner);
  }
  return out;
}

Matrix partial_trace_inner(const Matrix& x, Eigen::Index outer, Eigen::Index inner) {
  Matrix out(outer, outer);
  for (Eigen::Index a = 0; a < outer; ++a) {
    for (Eigen::Index b = 0; b < outer; ++b) {
      out(a, b) = x.block(a * inner, b * inner, inner, inner).trace();
    }
  }
  return out;
}

Matrix random_unitary(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0) q.col(i) *= d / mag;
  }
  return q;
}

Matrix random_hermitian(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  return (a + a.adjoint()) / 2.0;
}

RealVector hermitian_eigenvalues(const Matrix& h) {
  if (h.size() == 0) return RealVector();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over a counter keyed by the base seed
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace simon
