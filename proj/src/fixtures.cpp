#include "sflow/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "sflow/scalar_functions.hpp"

namespace sflow {

OperatorPath multiplication_family(const std::function<double(double)>& f,
                                   const GridSpec& grid) {
  if (grid.points < 4) throw ValidationError("multiplication_family: grid needs N >= 4");

  const int n = grid.points;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int j = 0; j < n; ++j) {
    // probe the whole (t, x) range on the grid
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double v = f(t * grid.node(j));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo > 0.0))
    throw ValidationError("multiplication_family: f is not bounded below by c > 0 on the grid");
  if (hi - lo < 1e-12)
    throw ValidationError("multiplication_family: f is constant on the grid");

  const GridSpec g = grid;
  return OperatorPath(
      0.0, 1.0, n,
      [f, g, n](double t) {
        Matrix m = Matrix::Zero(n, n);
        for (int j = 0; j < n; ++j) m(j, j) = f(t * g.node(j));
        return HermitianOperator::symmetrized(m);
      },
      {Smoothness::unknown, 0.0});
}

OperatorPath schrodinger_pair_family(const std::function<double(double)>& f,
                                     const std::function<double(double)>& g,
                                     const GridSpec& grid, double psi_cap) {
  if (grid.points < 4)
    throw ValidationError("schrodinger_pair_family: grid needs N >= 4");
  const int n = grid.points;

  for (int j = 0; j < n; ++j)
    if (f(grid.node(j)) < 0.0)
      throw ValidationError("schrodinger_pair_family: f must be nonnegative on the grid");
  if (!(f(0.0) > 0.0))
    throw ValidationError("schrodinger_pair_family: f must be positive at 0");
  if (!(g(0.0) > 0.999 && std::abs(g(1.0)) < 1e-9 && g(2.5) > 0.999 && g(-2.5) > 0.999))
    throw ValidationError(
        "schrodinger_pair_family: g must satisfy g(0)=1, g(1)=0, g=1 for |x|>=2");
  for (double x : {-3.0, -1.5, -0.5, 0.5, 1.5, 3.0})
    if (g(x) < 0.0)
      throw ValidationError("schrodinger_pair_family: g must be nonnegative");

  // 1 + Delta_h with the 3-point Dirichlet stencil
  const double h = grid.spacing();
  RealMatrix one_plus_lap = RealMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    one_plus_lap(j, j) = 1.0 + 2.0 / (h * h);
    if (j > 0) one_plus_lap(j, j - 1) = -1.0 / (h * h);
    if (j + 1 < n) one_plus_lap(j, j + 1) = -1.0 / (h * h);
  }

  const GridSpec gr = grid;
  return OperatorPath(
      0.0, 1.0, 2 * n,
      [f, g, gr, n, one_plus_lap, psi_cap](double t) {
        RealVector psi(n);
        for (int j = 0; j < n; ++j) {
          const double x = gr.node(j);
          const double fx = f(x);
          // where f underflows to 0 the potential saturates at the cap
          psi(j) = fx > 0.0 ? std::min(g(t * x) / fx + 1.0, psi_cap) : psi_cap;
        }
        const RealMatrix upper = psi.asDiagonal() * one_plus_lap;  // M_psi (1 + Delta_h)
        Matrix m = Matrix::Zero(2 * n, 2 * n);
        m.topRightCorner(n, n) = upper.cast<Complex>();
        m.bottomLeftCorner(n, n) = upper.transpose().cast<Complex>();
        return HermitianOperator::symmetrized(m);
      },
      {Smoothness::unknown, 0.0});
}

TopologyReport topology_diagnostic(const OperatorPath& p, int n, double t0,
                                   const std::vector<double>& probes,
                                   const std::vector<Vector>& test_vectors,
                                   const GridSpec& grid) {
  if (n < 1) throw ValidationError("topology_diagnostic: n must be positive");
  if (probes.empty()) throw ValidationError("topology_diagnostic: no probes given");
  for (const Vector& v : test_vectors)
    if (v.size() != p.dim())
      throw ValidationError("topology_diagnostic: test vector dimension mismatch");

  TopologyReport report;
  report.n_used = n;
  report.grid = grid;

  const HermitianOperator base = p.at(t0);
  const Matrix r0 = resolvent(base, +1);
  const BumpFunction phi(n);
  const HermitianOperator phi0 =
      apply_function(base, [&](double x) { return phi(x); });

  for (double t : probes) {
    const HermitianOperator sample = p.at(t);
    const Matrix diff = resolvent(sample, +1) - r0;
    const double gap = operator_norm(diff);
    report.gap_per_probe.push_back(gap);
    report.gap_modulus = std::max(report.gap_modulus, gap);

    double strong = 0.0;
    for (const Vector& v : test_vectors) strong = std::max(strong, (diff * v).norm());
    report.strong_per_probe.push_back(strong);
    report.strong_modulus = std::max(report.strong_modulus, strong);

    const HermitianOperator phit =
        apply_function(sample, [&](double x) { return phi(x); });
    report.phi_modulus = std::max(
        report.phi_modulus,
        hermitian_norm(HermitianOperator::symmetrized(phit.entries() - phi0.entries())));
  }
  return report;
}

RealVector compactness_proxy(const HermitianOperator& a, int n) {
  const BumpFunction phi(n);
  const EigenDecomposition d = eigh(a);
  RealVector profile(d.eigenvalues.size());
  for (Eigen::Index i = 0; i < profile.size(); ++i)
    profile(i) = std::abs(phi(d.eigenvalues(i)));
  std::sort(profile.data(), profile.data() + profile.size(), std::greater<double>());
  return profile;
}

}  // namespace sflow
