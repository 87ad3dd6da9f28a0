#ifndef SFLOW_HERMITIAN_HPP
#define SFLOW_HERMITIAN_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "sflow/errors.hpp"

namespace sflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance for eigendecomposition residuals.
inline constexpr double tau_eig = 1e-10;
/// Tolerance for projection idempotence / Hermiticity.
inline constexpr double tau_proj = 1e-9;

/// Finite Hermitian matrix standing for a truncated selfadjoint operator.
/// The constructor validates Hermiticity within tau_herm = 1e-12 * dim,
/// relative to the largest entry magnitude.
class HermitianOperator {
public:
  explicit HermitianOperator(Matrix entries, std::string label = {});

  /// Builds from (M + M*)/2 without the validation throw. Used for results of
  /// functional calculus and conjugation, where Hermiticity holds up to roundoff.
  static HermitianOperator symmetrized(const Matrix& m, std::string label = {});

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  const std::string& label() const { return label_; }

private:
  struct unchecked_t {};
  HermitianOperator(Matrix entries, std::string label, unchecked_t)
      : entries_(std::move(entries)), label_(std::move(label)) {}

  Matrix entries_;
  std::string label_;
};

/// Eigendecomposition A = V diag(eigenvalues) V*, eigenvalues ascending,
/// eigenvector columns orthonormal and phase-canonicalized (the component of
/// largest magnitude is made real positive) so results are deterministic.
struct EigenDecomposition {
  RealVector eigenvalues;
  Matrix vectors;
};

EigenDecomposition eigh(const HermitianOperator& a);

/// Largest singular value. Dense SVD for small matrices, power iteration on
/// A*A (deterministic start vector) above 128.
double operator_norm(const Matrix& m);

/// Largest |eigenvalue| of a Hermitian matrix (spectral radius = operator norm).
double hermitian_norm(const HermitianOperator& a);

}  // namespace sflow

#endif
