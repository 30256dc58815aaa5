#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace simon {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

// Tolerance ledger.
inline constexpr double kStructuralTol = 1e-9;
inline constexpr double kDerivedTol = 1e-8;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

template <typename A, typename B>
Matrix kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return Eigen::kroneckerProduct(a.eval(), b.eval()).eval();
}

/// max |M^dagger M - I|
template <typename Derived>
double unitarity_error(const Eigen::MatrixBase<Derived>& m) {
  const auto n = m.cols();
  return max_abs(m.adjoint() * m - Matrix::Identity(n, n));
}

template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.adjoint());
}

/// Number of eigenvalues of a Hermitian matrix above `tol`.
int hermitian_rank(const Matrix& h, double tol = 1e-8);

/// Orthonormal basis of the +1 eigenspace of a Hermitian projector.
Matrix projector_range(const Matrix& projector, double tol = 0.5);

/// Trace over the outer factor of a (outer*inner)-square matrix.
Matrix partial_trace_outer(const Matrix& x, Eigen::Index outer, Eigen::Index inner);

/// Trace over the inner factor of a (outer*inner)-square matrix.
Matrix partial_trace_inner(const Matrix& x, Eigen::Index outer, Eigen::Index inner);

/// Haar-ish random unitary (QR of a complex Gaussian matrix, phases fixed).
Matrix random_unitary(Eigen::Index n, Rng& rng);

/// Random Hermitian matrix with i.i.d. complex Gaussian entries.
Matrix random_hermitian(Eigen::Index n, Rng& rng);

/// Ascending eigenvalues of a Hermitian matrix.
RealVector hermitian_eigenvalues(const Matrix& h);

/// Counter-based stream derivation: a fresh 64-bit seed for (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

}  // namespace simon
