#ifndef SFLOW_FIXTURES_HPP
#define SFLOW_FIXTURES_HPP

#include <functional>
#include <vector>

#include "sflow/paths.hpp"

namespace sflow {

/// Uniform grid on [-L, L]: nodes x_j = -L + (j + 1/2) h, h = 2L / N.
struct GridSpec {
  double half_width = 10.0;  // L
  int points = 160;          // N, >= 4

  double spacing() const { return 2.0 * half_width / points; }
  double node(int j) const { return -half_width + (j + 0.5) * spacing(); }
};

/// Continuity moduli of a family around a base parameter: gap (resolvent norm
/// differences), strong (resolvent differences on fixed test vectors) and
/// phi_n (norm differences of phi_n(D)). Evidence, not a verdict.
struct TopologyReport {
  double gap_modulus = 0.0;
  double strong_modulus = 0.0;
  double phi_modulus = 0.0;
  int n_used = 1;
  GridSpec grid;
  std::vector<double> gap_per_probe;     // ||R(t) - R(t0)|| per probe
  std::vector<double> strong_per_probe;  // max over vectors of ||(R(t) - R(t0)) v||
};

/// t -> multiplication by f(t x) on the grid (diagonal samples). f must be
/// bounded below by some c > 0 and nonconstant on the grid.
OperatorPath multiplication_family(const std::function<double(double)>& f,
                                   const GridSpec& grid);

/// Off-diagonal pair built from psi_t = g(t x)/f(x) + 1 and the 3-point
/// Dirichlet Laplacian: samples are 2N x 2N Hermitian with blocks
/// M_psi (1 + Delta_h) and (1 + Delta_h) M_psi. Entries of psi are capped at
/// psi_cap to keep samples finite when f underflows on wide grids.
OperatorPath schrodinger_pair_family(const std::function<double(double)>& f,
                                     const std::function<double(double)>& g,
                                     const GridSpec& grid, double psi_cap = 1e8);

/// Moduli of p around t0 over the given probes and unit test vectors.
TopologyReport topology_diagnostic(const OperatorPath& p, int n, double t0,
                                   const std::vector<double>& probes,
                                   const std::vector<Vector>& test_vectors,
                                   const GridSpec& grid = {});

/// Descending singular values of phi_n(A): the truncation-scale reading of
/// "phi_n(D) compact" is decay of this profile under grid refinement.
RealVector compactness_proxy(const HermitianOperator& a, int n);

}  // namespace sflow

#endif
