#ifndef SFLOW_WINDING_HPP
#define SFLOW_WINDING_HPP

#include <functional>

#include "sflow/paths.hpp"
#include "sflow/scalar_functions.hpp"

namespace sflow {

/// Loop of unitaries over [0, 1]; U(0) = U(1) within basepoint_tol.
class UnitaryLoop {
public:
  using Sampler = std::function<Matrix(double)>;

  UnitaryLoop(Eigen::Index dim, Sampler sampler, double basepoint_tol = 1e-8);

  Matrix at(double x) const;
  Eigen::Index dim() const { return dim_; }
  double basepoint_tol() const { return basepoint_tol_; }

private:
  Eigen::Index dim_;
  Sampler sampler_;
  double basepoint_tol_;
};

struct WindingDiagnostics {
  long value = 0;
  double trace_residual = 0.0;   // |quadrature - value|
  double det_residual = 0.0;     // |det-phase - value|
  int points_used = 0;
};

/// Winding number (1 / 2 pi i) \int Tr(s^{-1} s') dx, computed two ways and
/// cross-checked: trapezoid quadrature with central differences, and the
/// accumulated argument of det s(x). The grid is doubled while the per-step
/// determinant phase exceeds pi/2; residuals >= 0.1 or disagreement raise
/// WindingResolutionError.
WindingDiagnostics winding_number_full(const UnitaryLoop& s, int quadrature_points = 513);

long winding_number(const UnitaryLoop& s, int quadrature_points = 513);

/// x -> e^{i pi (chi(D_x) + 1)}, reparametrized to [0, 1]. Requires either
/// p(begin) = p(end) (loop case) or chi(p(begin)), chi(p(end)) involutions, in
/// which case both endpoint values are the identity.
UnitaryLoop exp_loop(const OperatorPath& p, const NormalizingFunction& chi);

struct GeneratorLoop {
  OperatorPath path;
  long expected_flow = 1;
};

/// The final proposition's generating path: F_t = -cos(pi t) P + (1 - P) with
/// P = e_1 e_1*, traversed on [0, 1/2], followed by a rotation of F_1 = I in
/// the span{e_1, e_2} plane on [1/2, 1]. Endpoints are involutions, so
/// exp_loop of the result is a closed unitary loop; flow and winding are 1.
GeneratorLoop generator_loop(Eigen::Index dim);

}  // namespace sflow

#endif
