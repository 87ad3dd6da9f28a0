#ifndef SFLOW_FUNCTIONAL_CALCULUS_HPP
#define SFLOW_FUNCTIONAL_CALCULUS_HPP

#include <functional>

#include "sflow/hermitian.hpp"
#include "sflow/scalar_functions.hpp"

namespace sflow {

/// Hermitian idempotent. Validates P = P* and P^2 = P within tau_proj.
class Projection {
public:
  explicit Projection(Matrix entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  Eigen::Index rank() const { return rank_; }

private:
  Matrix entries_;
  Eigen::Index rank_;
};

/// Functional calculus f(A) = V f(Lambda) V*. Throws DomainError (naming the
/// eigenvalue) when f evaluates to a non-finite value.
HermitianOperator apply_function(const HermitianOperator& a,
                                 const std::function<double(double)>& f);

/// Same spectral calculus for complex-valued f; the result is normal, not
/// Hermitian (used for e^{i pi (chi + 1)} loops).
Matrix apply_complex_function(const HermitianOperator& a,
                              const std::function<Complex(double)>& f);

/// F_A = A (1 + A*A)^{-1/2}; eigenvalues map to lambda / sqrt(1 + lambda^2).
HermitianOperator bounded_transform(const HermitianOperator& a);

/// (A + sign * i)^{-1}, sign = +-1. Always defined; norm <= 1.
Matrix resolvent(const HermitianOperator& a, int sign);

/// Projection onto the eigenspaces with eigenvalue in the closed interval
/// [lo, hi]. Eigenvalues within guard of a boundary raise GapViolation, except
/// eigenvalues sitting on the boundary itself (within tau_bnd = 1e-9 * scale),
/// which are included: the closed-interval convention the flow definition needs
/// for endpoint kernels.
Projection spectral_projection(const HermitianOperator& a, double lo, double hi,
                               double guard);

/// ||phi_n(A) - phi_n(B)|| (operator norm).
double phi_n_distance(const HermitianOperator& a, const HermitianOperator& b, int n);

/// chi_t(A) with chi_t(x) = (1-t) x + t chi(x), t in [0, 1].
HermitianOperator retract_to_cycle(const HermitianOperator& a, double t,
                                   const NormalizingFunction& chi);

}  // namespace sflow

#endif
