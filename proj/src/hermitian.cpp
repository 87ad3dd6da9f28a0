#include "sflow/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sflow {

HermitianOperator::HermitianOperator(Matrix entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
    throw ValidationError("HermitianOperator: matrix must be square and nonempty");
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double tau_herm = 1e-12 * static_cast<double>(entries_.rows());
  const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tau_herm * std::max(scale, 1e-300))
    throw ValidationError("HermitianOperator: matrix is not Hermitian (deviation " +
                          std::to_string(dev) + ")");
  // exact Hermiticity downstream
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
}

HermitianOperator HermitianOperator::symmetrized(const Matrix& m, std::string label) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ValidationError("HermitianOperator: matrix must be square and nonempty");
  return HermitianOperator(0.5 * (m + m.adjoint()), std::move(label), unchecked_t{});
}

EigenDecomposition eigh(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries());
  if (solver.info() != Eigen::Success)
    throw NumericError("eigh: eigendecomposition did not converge", -1);

  EigenDecomposition d;
  d.eigenvalues = solver.eigenvalues();
  d.vectors = solver.eigenvectors();

  // phase canonicalization: the first component of largest magnitude is made
  // real positive, so output is deterministic for fixed input
  for (Eigen::Index j = 0; j < d.vectors.cols(); ++j) {
    Eigen::Index k = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < d.vectors.rows(); ++i) {
      const double mag = std::abs(d.vectors(i, j));
      if (mag > best * (1.0 + 1e-12)) {
        best = mag;
        k = i;
      }
    }
    if (best > 0.0) {
      const Complex phase = std::conj(d.vectors(k, j)) / best;
      d.vectors.col(j) *= phase;
    }
  }
  return d;
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) <= 128) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
  }
  // power iteration on m* m, deterministic start
  Vector v = Vector::Ones(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) += Complex(0.0, 1.0) * (0.5 + 0.1 * static_cast<double>(i % 7));
  v.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < 400; ++it) {
    Vector w = m.adjoint() * (m * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double change = (w - v).norm();
    v = w;
    sigma2 = nw;
    if (change < 1e-13 && it > 4) break;
  }
  return std::sqrt(sigma2);
}

double hermitian_norm(const HermitianOperator& a) {
  const EigenDecomposition d = eigh(a);
  return std::max(std::abs(d.eigenvalues(0)),
                  std::abs(d.eigenvalues(d.eigenvalues.size() - 1)));
}

}  // namespace sflow
