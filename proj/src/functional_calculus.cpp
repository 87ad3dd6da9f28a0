#include "sflow/functional_calculus.hpp"

#include <cmath>
#include <sstream>

namespace sflow {

Projection::Projection(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
    throw ValidationError("Projection: matrix must be square and nonempty");
  const double herm_dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  const double idem_dev =
      (entries_ * entries_ - entries_).cwiseAbs().maxCoeff();
  if (herm_dev > tau_proj || idem_dev > tau_proj)
    throw ValidationError("Projection: P = P* and P^2 = P violated (dev " +
                          std::to_string(std::max(herm_dev, idem_dev)) + ")");
  const double tr = entries_.trace().real();
  rank_ = static_cast<Eigen::Index>(std::llround(tr));
  if (std::abs(tr - static_cast<double>(rank_)) > tau_proj * static_cast<double>(dim()))
    throw ValidationError("Projection: trace is not near an integer");
}

HermitianOperator apply_function(const HermitianOperator& a,
                                 const std::function<double(double)>& f) {
  const EigenDecomposition d = eigh(a);
  RealVector fv(d.eigenvalues.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) {
    const double y = f(d.eigenvalues(i));
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "apply_function: f undefined at eigenvalue " << d.eigenvalues(i);
      throw DomainError(os.str(), d.eigenvalues(i));
    }
    fv(i) = y;
  }
  const Matrix m = d.vectors * fv.asDiagonal() * d.vectors.adjoint();
  return HermitianOperator::symmetrized(m, a.label());
}

Matrix apply_complex_function(const HermitianOperator& a,
                              const std::function<Complex(double)>& f) {
  const EigenDecomposition d = eigh(a);
  Vector fv(d.eigenvalues.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) {
    const Complex y = f(d.eigenvalues(i));
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
      std::ostringstream os;
      os << "apply_complex_function: f undefined at eigenvalue " << d.eigenvalues(i);
      throw DomainError(os.str(), d.eigenvalues(i));
    }
    fv(i) = y;
  }
  return d.vectors * fv.asDiagonal() * d.vectors.adjoint();
}

HermitianOperator bounded_transform(const HermitianOperator& a) {
  return apply_function(a, [](double x) { return x / std::sqrt(1.0 + x * x); });
}

Matrix resolvent(const HermitianOperator& a, int sign) {
  if (sign != 1 && sign != -1)
    throw ValidationError("resolvent: sign must be +1 or -1");
  const EigenDecomposition d = eigh(a);
  Vector rv(d.eigenvalues.size());
  const Complex shift(0.0, static_cast<double>(sign));
  for (Eigen::Index i = 0; i < rv.size(); ++i)
    rv(i) = 1.0 / (d.eigenvalues(i) + shift);
  return d.vectors * rv.asDiagonal() * d.vectors.adjoint();
}

Projection spectral_projection(const HermitianOperator& a, double lo, double hi,
                               double guard) {
  if (!(lo <= hi)) throw ValidationError("spectral_projection: empty interval");
  if (!(guard > 0.0)) throw ValidationError("spectral_projection: guard must be positive");

  const EigenDecomposition d = eigh(a);
  const double scale =
      std::max({1.0, std::abs(d.eigenvalues(0)),
                std::abs(d.eigenvalues(d.eigenvalues.size() - 1))});
  const double tau_bnd = 1e-9 * scale;

  Matrix p = Matrix::Zero(a.dim(), a.dim());
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    const double lam = d.eigenvalues(i);
    const double d_lo = std::abs(lam - lo);
    const double d_hi = std::abs(lam - hi);
    const bool on_boundary = d_lo <= tau_bnd || d_hi <= tau_bnd;
    bool include;
    if (on_boundary) {
      // closed interval: eigenvalues sitting on a boundary are included
      include = true;
    } else {
      if (std::min(d_lo, d_hi) < guard) {
        std::ostringstream os;
        os << "spectral_projection: eigenvalue " << lam << " within guard " << guard
           << " of boundary " << (d_lo < d_hi ? lo : hi);
        throw GapViolation(os.str(), lam, d_lo < d_hi ? lo : hi);
      }
      include = lam >= lo && lam <= hi;
    }
    if (include) p += d.vectors.col(i) * d.vectors.col(i).adjoint();
  }
  return Projection(0.5 * (p + p.adjoint()));
}

double phi_n_distance(const HermitianOperator& a, const HermitianOperator& b, int n) {
  if (a.dim() != b.dim())
    throw ValidationError("phi_n_distance: dimension mismatch");
  const BumpFunction phi(n);
  const HermitianOperator fa = apply_function(a, [&](double x) { return phi(x); });
  const HermitianOperator fb = apply_function(b, [&](double x) { return phi(x); });
  return hermitian_norm(HermitianOperator::symmetrized(fa.entries() - fb.entries()));
}

HermitianOperator retract_to_cycle(const HermitianOperator& a, double t,
                                   const NormalizingFunction& chi) {
  if (!(t >= 0.0 && t <= 1.0))
    throw ValidationError("retract_to_cycle: t must lie in [0, 1]");
  return apply_function(a, [&](double x) { return (1.0 - t) * x + t * chi(x); });
}

}  // namespace sflow
