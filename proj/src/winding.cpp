#include "sflow/winding.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace sflow {

namespace {
constexpr double kPi = std::numbers::pi;
}

UnitaryLoop::UnitaryLoop(Eigen::Index dim, Sampler sampler, double basepoint_tol)
    : dim_(dim), sampler_(std::move(sampler)), basepoint_tol_(basepoint_tol) {
  if (dim < 1) throw ValidationError("UnitaryLoop: dim must be positive");
  if (!sampler_) throw ValidationError("UnitaryLoop: sampler must be callable");
  const double base_gap = (at(0.0) - at(1.0)).cwiseAbs().maxCoeff();
  if (base_gap > basepoint_tol_)
    throw ValidationError("UnitaryLoop: U(0) != U(1) (gap " + std::to_string(base_gap) +
                          ")");
}

Matrix UnitaryLoop::at(double x) const {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw ValidationError("UnitaryLoop: parameter outside [0, 1]");
  Matrix u = sampler_(std::clamp(x, 0.0, 1.0));
  if (u.rows() != dim_ || u.cols() != dim_)
    throw ValidationError("UnitaryLoop: sample dimension differs from declared dim");
  const double dev =
      (u.adjoint() * u - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
  if (dev > tau_eig * static_cast<double>(dim_) * 10.0)
    throw ValidationError("UnitaryLoop: sample is not unitary (deviation " +
                          std::to_string(dev) + ")");
  return u;
}

WindingDiagnostics winding_number_full(const UnitaryLoop& s, int quadrature_points) {
  if (quadrature_points < 8)
    throw ValidationError("winding_number: need at least 8 quadrature points");

  int m = quadrature_points;
  for (int attempt = 0;; ++attempt) {
    const double h = 1.0 / m;
    std::vector<Matrix> samples(m);
    for (int k = 0; k < m; ++k) samples[k] = s.at(k * h);

    // accumulated determinant phase; per-step increments must stay below pi/2
    bool steps_ok = true;
    double det_total = 0.0;
    double prev_arg = std::arg(samples[0].determinant());
    for (int k = 1; k <= m; ++k) {
      const double arg = std::arg(samples[k % m].determinant());
      double inc = arg - prev_arg;
      while (inc > kPi) inc -= 2.0 * kPi;
      while (inc < -kPi) inc += 2.0 * kPi;
      if (std::abs(inc) > 0.5 * kPi) {
        steps_ok = false;
        break;
      }
      det_total += inc;
      prev_arg = arg;
    }
    if (!steps_ok) {
      if (attempt >= 5)
        throw WindingResolutionError(
            "winding_number: determinant phase steps exceed pi/2 even after refinement");
      m *= 2;
      continue;
    }

    // trapezoid quadrature of Tr(s^{-1} s'), s' by central differences on the
    // same periodic grid
    Complex integral = 0.0;
    for (int k = 0; k < m; ++k) {
      const Matrix& cur = samples[k];
      const Matrix& next = samples[(k + 1) % m];
      const Matrix& prev = samples[(k + m - 1) % m];
      const Matrix deriv = (next - prev) / (2.0 * h);
      integral += (cur.adjoint() * deriv).trace() * h;  // s^{-1} = s* for unitary s
    }
    const double trace_value = (integral / Complex(0.0, 2.0 * kPi)).real();
    const double det_value = det_total / (2.0 * kPi);

    const long w_trace = std::lround(trace_value);
    const long w_det = std::lround(det_value);
    const double trace_res = std::abs(trace_value - static_cast<double>(w_trace));
    const double det_res = std::abs(det_value - static_cast<double>(w_det));

    if (w_trace != w_det || trace_res >= 0.1 || det_res >= 0.1) {
      if (attempt >= 5) {
        std::ostringstream os;
        os << "winding_number: unresolved at " << m << " points (trace " << trace_value
           << ", det-phase " << det_value << "); more points needed";
        throw WindingResolutionError(os.str());
      }
      m *= 2;
      continue;
    }

    WindingDiagnostics d;
    d.value = w_trace;
    d.trace_residual = trace_res;
    d.det_residual = det_res;
    d.points_used = m;
    return d;
  }
}

long winding_number(const UnitaryLoop& s, int quadrature_points) {
  return winding_number_full(s, quadrature_points).value;
}

UnitaryLoop exp_loop(const OperatorPath& p, const NormalizingFunction& chi) {
  const double a = p.begin(), b = p.end();
  const HermitianOperator start = p.at(a);
  const HermitianOperator finish = p.at(b);
  const Eigen::Index n = p.dim();
  const double scale =
      std::max({1.0, start.entries().cwiseAbs().maxCoeff(),
                finish.entries().cwiseAbs().maxCoeff()});

  const bool is_loop =
      (start.entries() - finish.entries()).cwiseAbs().maxCoeff() <= 1e-9 * scale;
  if (!is_loop) {
    const auto involution_defect = [&](const HermitianOperator& d) {
      const HermitianOperator cd =
          apply_function(d, [&](double x) { return chi(x); });
      return (cd.entries() * cd.entries() - Matrix::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
    };
    const double defect = std::max(involution_defect(start), involution_defect(finish));
    if (defect > tau_eig * static_cast<double>(n) * 10.0) {
      std::ostringstream os;
      os << "exp_loop: path is not closed and chi(endpoints) are not involutions "
         << "(defect " << defect << "); endpoints need spectral gap >= 1/n";
      throw PreconditionError(os.str());
    }
  }

  const OperatorPath pc = p;
  const NormalizingFunction chic = chi;
  return UnitaryLoop(
      n,
      [pc, chic, a, b](double x) {
        const HermitianOperator d = pc.at(a + (b - a) * x);
        return apply_complex_function(d, [&](double lam) {
          return std::exp(Complex(0.0, kPi * (chic(lam) + 1.0)));
        });
      },
      1e-8);
}

GeneratorLoop generator_loop(Eigen::Index dim) {
  if (dim < 2) throw ValidationError("generator_loop: dim must be >= 2");

  const Matrix eye = Matrix::Identity(dim, dim);
  Matrix proj = Matrix::Zero(dim, dim);
  proj(0, 0) = 1.0;  // P = e_1 e_1*

  OperatorPath path(
      0.0, 1.0, dim,
      [eye, proj, dim](double t) {
        if (t <= 0.5) {
          const double c = -std::cos(kPi * 2.0 * t);
          return HermitianOperator::symmetrized(c * proj + (eye - proj));
        }
        // F_1 = I conjugated by a rotation in the span{e_1, e_2} plane
        const double theta = kPi * (2.0 * t - 1.0);
        Matrix rot = eye;
        rot(0, 0) = std::cos(theta);
        rot(0, 1) = -std::sin(theta);
        rot(1, 0) = std::sin(theta);
        rot(1, 1) = std::cos(theta);
        return HermitianOperator::symmetrized(rot * eye * rot.adjoint());
      },
      {Smoothness::lipschitz, 2.0 * kPi});

  return GeneratorLoop{std::move(path), 1};
}

}  // namespace sflow
