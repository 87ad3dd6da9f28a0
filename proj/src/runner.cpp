#include "sflow/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <vector>

#include "sflow/path_io.hpp"
#include "sflow/spectral_flow.hpp"
#include "sflow/winding.hpp"

namespace sflow {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Matrix random_complex(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

HermitianOperator random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  return HermitianOperator::symmetrized(random_complex(n, rng));
}

HermitianOperator push_off_zero(const HermitianOperator& a, double gap) {
  return apply_function(a, [gap](double x) { return x >= 0.0 ? x + gap : x - gap; });
}

Projection random_projection(Eigen::Index n, Eigen::Index rank, std::mt19937_64& rng) {
  if (rank == 0) return Projection(Matrix::Zero(n, n));
  const Eigen::HouseholderQR<Matrix> qr(random_complex(n, rng));
  const Matrix q = qr.householderQ() * Matrix::Identity(n, rank);
  return Projection(q * q.adjoint());
}

struct BuiltFamily {
  std::optional<OperatorPath> path;
  std::optional<OperatorRectangle> rectangle;
};

BuiltFamily build_family(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  BuiltFamily out;

  switch (cfg.family) {
    case Family::multiplication:
      out.path = multiplication_family([](double x) { return 2.0 + std::tanh(x); },
                                       *cfg.grid);
      break;
    case Family::schrodinger_pair:
      out.path = schrodinger_pair_family(
          [](double x) { return std::exp(-x * x); },
          [](double x) { return plateau(x); }, *cfg.grid);
      break;
    case Family::matrix_file:
      out.path = load_matrix_path(cfg.matrix_path);
      break;
    case Family::generator_loop:
      out.path = generator_loop(cfg.dim).path;
      break;
    case Family::linear_segment: {
      const HermitianOperator a = push_off_zero(random_hermitian(cfg.dim, rng), 0.2);
      const HermitianOperator b = push_off_zero(random_hermitian(cfg.dim, rng), 0.2);
      if (cfg.task == Task::rectangle) {
        const Matrix ma = a.entries(), mb = b.entries();
        const Matrix mc = random_hermitian(cfg.dim, rng).entries();
        const Matrix md = random_hermitian(cfg.dim, rng).entries();
        out.rectangle = OperatorRectangle(
            0.0, 1.0, cfg.dim, [ma, mb, mc, md](double s, double t) {
              return HermitianOperator::symmetrized(
                  (1.0 - t) * ma + t * mb + s * (1.0 - s) * mc +
                  std::sin(std::numbers::pi * s) * t * (1.0 - t) * md);
            });
      } else {
        out.path = linear_segment(a, b);
      }
      break;
    }
    case Family::projection_pair: {
      const Projection p = random_projection(cfg.dim, cfg.rank_p, rng);
      const Projection q = random_projection(cfg.dim, cfg.rank_q, rng);
      const Matrix eye = Matrix::Identity(cfg.dim, cfg.dim);
      const HermitianOperator from =
          HermitianOperator::symmetrized(2.0 * q.entries() - eye);
      const HermitianOperator to =
          HermitianOperator::symmetrized(2.0 * p.entries() - eye);
      if (cfg.task == Task::rectangle) {
        // the homotopy rectangle t(2P_s - 1) + (1 - t)(2Q_s - 1) with both
        // projections conjugated by a common rotation in s
        const HermitianOperator k = random_hermitian(cfg.dim, rng);
        const EigenDecomposition kd = eigh(k);
        const Matrix mp = p.entries(), mq = q.entries();
        out.rectangle = OperatorRectangle(
            0.0, 1.0, cfg.dim, [kd, mp, mq, eye](double s, double t) {
              Vector phases(kd.eigenvalues.size());
              for (Eigen::Index i = 0; i < phases.size(); ++i)
                phases(i) = std::exp(Complex(0.0, s * kd.eigenvalues(i)));
              const Matrix u = kd.vectors * phases.asDiagonal() * kd.vectors.adjoint();
              const Matrix ps = u * mp * u.adjoint();
              const Matrix qs = u * mq * u.adjoint();
              return HermitianOperator::symmetrized(t * (2.0 * ps - eye) +
                                                    (1.0 - t) * (2.0 * qs - eye));
            });
      } else {
        out.path = linear_segment(from, to);
      }
      break;
    }
  }
  return out;
}

void write_eigentraj(const std::string& filename, const OperatorPath& p, int samples) {
  std::ofstream out(filename, std::ios::binary);
  if (!out) throw Error("cannot open output file " + filename);
  out << "t";
  for (Eigen::Index i = 1; i <= p.dim(); ++i) out << ",lambda_" << i;
  out << "\n";
  for (int k = 0; k < samples; ++k) {
    const double t =
        p.begin() + (p.end() - p.begin()) * static_cast<double>(k) / (samples - 1);
    const RealVector eigs = eigh(p.at(t)).eigenvalues;
    out << fmt17(t);
    for (Eigen::Index i = 0; i < eigs.size(); ++i) out << "," << fmt17(eigs(i));
    out << "\n";
  }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& err) {
  const char* module = "runner";
  try {
    module = "paths";
    const BuiltFamily family = build_family(cfg);

    std::ofstream result(cfg.output + "_result.csv", std::ios::binary);
    if (!result) throw Error("cannot open output file " + cfg.output + "_result.csv");
    result << "key,index,value\n";

    switch (cfg.task) {
      case Task::flow: {
        module = "spectral-flow";
        const SpectralFlowResult r = spectral_flow(*family.path, cfg.opts);
        result << "flow,," << r.value << "\n";
        for (size_t i = 0; i < r.partition.size(); ++i)
          result << "partition," << i << "," << fmt17(r.partition[i]) << "\n";
        for (size_t i = 0; i < r.mu_per_segment.size(); ++i)
          result << "mu," << i << "," << fmt17(r.mu_per_segment[i]) << "\n";
        for (size_t i = 0; i < r.counts.size(); ++i) {
          result << "count_start," << i << "," << r.counts[i].first << "\n";
          result << "count_end," << i << "," << r.counts[i].second << "\n";
        }
        result << "min_gap_seen,," << fmt17(r.min_gap_seen) << "\n";
        result << "subdivision_depth,," << r.subdivision_depth << "\n";
        break;
      }
      case Task::winding: {
        module = "winding";
        const NormalizingFunction chi(1);
        const UnitaryLoop loop = exp_loop(*family.path, chi);
        const WindingDiagnostics w = winding_number_full(loop, cfg.quadrature_points);
        result << "winding,," << w.value << "\n";
        result << "trace_residual,," << fmt17(w.trace_residual) << "\n";
        result << "det_residual,," << fmt17(w.det_residual) << "\n";
        result << "quadrature_points_used,," << w.points_used << "\n";
        break;
      }
      case Task::rectangle: {
        module = "spectral-flow";
        result << "rectangle_defect,," << rectangle_defect(*family.rectangle, cfg.opts)
               << "\n";
        break;
      }
      case Task::diagnostic: {
        module = "fixtures";
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> dist(0.0, 1.0);
        std::vector<Vector> vecs;
        for (int v = 0; v < 8; ++v) {
          Vector x(family.path->dim());
          for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(dist(rng), dist(rng));
          x.normalize();
          vecs.push_back(std::move(x));
        }
        const std::vector<double> probes = {0.05, 0.1, 0.2, 0.4};
        const TopologyReport rep =
            topology_diagnostic(*family.path, 1, 0.0, probes, vecs,
                                cfg.grid.value_or(GridSpec{}));
        result << "gap_modulus,," << fmt17(rep.gap_modulus) << "\n";
        result << "strong_modulus,," << fmt17(rep.strong_modulus) << "\n";
        result << "phi_modulus,," << fmt17(rep.phi_modulus) << "\n";
        result << "n_used,," << rep.n_used << "\n";
        for (size_t i = 0; i < probes.size(); ++i) {
          result << "gap_modulus_probe," << i << "," << fmt17(rep.gap_per_probe[i])
                 << "\n";
          result << "strong_modulus_probe," << i << "," << fmt17(rep.strong_per_probe[i])
                 << "\n";
        }
        break;
      }
      case Task::eigentraj:
        result << "samples,," << cfg.traj_samples << "\n";
        break;
    }

    if (family.path) {
      module = "cli";
      write_eigentraj(cfg.output + "_eigentraj.csv", *family.path, cfg.traj_samples);
    }
    return 0;
  } catch (const Error& e) {
    err << "[" << module << "] " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sflow
