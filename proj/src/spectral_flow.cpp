#include "sflow/spectral_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sflow {

namespace {

std::vector<double> uniform_params(double a, double b, int count) {
  std::vector<double> ts(count);
  for (int i = 0; i < count; ++i)
    ts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  return ts;
}

struct SegmentOutcome {
  std::vector<double> cuts;  // interior partition points, in order
  std::vector<double> mus;
  std::vector<std::pair<long, long>> counts;
  double min_margin = std::numeric_limits<double>::infinity();
  int depth = 0;
};

struct FlowEngine {
  const OperatorPath& path;
  FlowOptions opts;
  double delta = 0.0;
  double scale = 1.0;

  RealVector probe_eigs(double t) const { return eigh(path.at(t)).eigenvalues; }

  long count_nonneg_upto(double t, double mu) const {
    // dim Ran 1_{[0, mu]}(D_t), closed interval: endpoint kernels count.
    // No guard at 0 — eigenvalues may legitimately sit near 0 mid-crossing;
    // the mu boundary is already kept clear by the accepted margin.
    const double kernel_tol = 1e-9 * scale;
    const RealVector e = probe_eigs(t);
    long count = 0;
    for (Eigen::Index i = 0; i < e.size(); ++i)
      if (e(i) >= -kernel_tol && e(i) <= mu) ++count;
    return count;
  }

  void solve(double t0, double t1, int depth, SegmentOutcome& out) const {
    const int probes = std::max(opts.probe_points, 3);
    const std::vector<double> ts = uniform_params(t0, t1, probes);
    std::vector<RealVector> eigs;
    eigs.reserve(ts.size());
    for (double t : ts) eigs.push_back(probe_eigs(t));

    // pooled |eigenvalues| and spectral radius over the segment
    std::vector<double> abs_vals;
    double radius = 0.0;
    for (const RealVector& e : eigs)
      for (Eigen::Index i = 0; i < e.size(); ++i) {
        abs_vals.push_back(std::abs(e(i)));
        radius = std::max(radius, std::abs(e(i)));
      }
    // mu only needs +-mu in the resolvent set of every operator on the
    // segment; values above the local spectral radius are always admissible,
    // so the candidate range must extend past it (collapsing it to the local
    // radius would starve segments that straddle a crossing, where the radius
    // shrinks to zero with the segment)
    const double ceiling = std::max(1.0, radius) + 1.0;

    // largest per-step movement of the ordered eigenvalues; an accepted mu
    // margin must exceed it, otherwise an eigenvalue could slip across +-mu
    // between probes
    double max_step = 0.0;
    for (size_t k = 0; k + 1 < eigs.size(); ++k)
      max_step = std::max(max_step, (eigs[k + 1] - eigs[k]).cwiseAbs().maxCoeff());

    // an eigenvalue sitting at 0 on the whole segment (every probe has a
    // kernel) is not a crossing but a degenerate family; refuse to assign a
    // count and keep subdividing until the kernel isolates or depth runs out
    const double kernel_tol = 1e-9 * scale;
    bool kernel_pinned = true;
    for (const RealVector& e : eigs)
      if (e.cwiseAbs().minCoeff() > kernel_tol) {
        kernel_pinned = false;
        break;
      }

    double best_mu = -1.0;
    double best_margin = -1.0;
    if (ceiling > 0.0) {
      std::vector<double> pts;
      pts.push_back(0.0);
      for (double v : abs_vals)
        if (v > 0.0 && v <= ceiling) pts.push_back(v);
      pts.push_back(ceiling);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end(),
                            [&](double x, double y) { return y - x < 1e-15 * scale; }),
                pts.end());
      for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double mu = 0.5 * (pts[i] + pts[i + 1]);
        if (!(mu > 0.0) || mu > ceiling) continue;
        double margin = std::numeric_limits<double>::infinity();
        for (double v : abs_vals) margin = std::min(margin, std::abs(v - mu));
        if (margin > best_margin) {
          best_margin = margin;
          best_mu = mu;
        }
      }
    }

    const double required = std::max(delta, max_step);
    if (kernel_pinned || best_margin < required) {
      if (depth >= opts.max_depth) {
        std::ostringstream os;
        if (kernel_pinned)
          os << "spectral_flow: an eigenvalue stays at 0 across segment [" << t0
             << ", " << t1 << "] (degenerate kernel, not a crossing)";
        else
          os << "spectral_flow: no admissible mu on segment [" << t0 << ", " << t1
             << "] after depth " << depth
             << " (an eigenvalue stays pinned near every candidate +-mu)";
        throw SubdivisionFailure(os.str(), t0, t1);
      }
      const double mid = 0.5 * (t0 + t1);
      solve(t0, mid, depth + 1, out);
      out.cuts.push_back(mid);
      solve(mid, t1, depth + 1, out);
      return;
    }

    const long c0 = count_nonneg_upto(t0, best_mu);
    const long c1 = count_nonneg_upto(t1, best_mu);
    out.mus.push_back(best_mu);
    out.counts.emplace_back(c0, c1);
    out.min_margin = std::min(out.min_margin, best_margin);
    out.depth = std::max(out.depth, depth);
  }
};

Projection nonnegative_projection(const HermitianOperator& a, double guard) {
  const EigenDecomposition d = eigh(a);
  const double top = d.eigenvalues(d.eigenvalues.size() - 1);
  return spectral_projection(a, 0.0, std::max(top, 0.0) + 1.0, guard);
}

}  // namespace

SpectralFlowResult spectral_flow(const OperatorPath& p, FlowOptions opts) {
  if (opts.probe_points < 3)
    throw ValidationError("spectral_flow: probe_points must be >= 3");
  if (opts.max_depth < 0)
    throw ValidationError("spectral_flow: max_depth must be nonnegative");

  FlowEngine engine{p, opts};
  // spectral scale from a coarse sweep of the whole interval
  double radius = 0.0;
  for (double t : uniform_params(p.begin(), p.end(), std::max(opts.probe_points, 3)))
    radius = std::max(radius, hermitian_norm(p.at(t)));
  engine.scale = std::max(radius, 1e-12);
  engine.delta = opts.delta > 0.0 ? opts.delta : 1e-6 * std::max(radius, 1.0);

  SegmentOutcome out;
  engine.solve(p.begin(), p.end(), 0, out);

  SpectralFlowResult result;
  result.partition.push_back(p.begin());
  for (double c : out.cuts) result.partition.push_back(c);
  result.partition.push_back(p.end());
  result.mu_per_segment = std::move(out.mus);
  result.counts = std::move(out.counts);
  result.min_gap_seen = out.min_margin;
  result.subdivision_depth = out.depth;
  for (const auto& [c0, c1] : result.counts) result.value += c1 - c0;
  return result;
}

long spectral_flow_oracle(const OperatorPath& p, int samples) {
  if (samples < 1) throw ValidationError("spectral_flow_oracle: samples must be >= 1");
  const int points = samples + 1;
  std::vector<RealVector> eigs;
  eigs.reserve(points);
  double scale = 0.0;
  for (int k = 0; k < points; ++k) {
    const double t =
        p.begin() + (p.end() - p.begin()) * static_cast<double>(k) / samples;
    eigs.push_back(eigh(p.at(t)).eigenvalues);
    scale = std::max(scale, eigs.back().cwiseAbs().maxCoeff());
  }
  scale = std::max(scale, 1.0);
  const double degenerate = 1e-9 * scale;

  // ascending-order pairing is valid when each eigenvalue moves by less than
  // half the gap to its own neighbors (resolved gaps only: a pair collapsing
  // to a genuine degeneracy is tracked correctly by the ordered labels)
  const Eigen::Index dim = eigs.front().size();
  for (int k = 0; k + 1 < points; ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double move = std::abs(eigs[k + 1](i) - eigs[k](i));
      double gap = std::numeric_limits<double>::infinity();
      for (const RealVector& e : {eigs[k], eigs[k + 1]}) {
        if (i > 0 && e(i) - e(i - 1) > degenerate)
          gap = std::min(gap, e(i) - e(i - 1));
        if (i + 1 < dim && e(i + 1) - e(i) > degenerate)
          gap = std::min(gap, e(i + 1) - e(i));
      }
      if (move > 0.5 * gap * (1.0 + 1e-9)) {
        std::ostringstream os;
        os << "spectral_flow_oracle: pairing ambiguous between samples " << k
           << " and " << k + 1 << " (eigenvalue " << i << " moved " << move
           << ", above half its neighbor gap " << 0.5 * gap
           << "); more samples needed";
        throw OracleResolutionError(os.str());
      }
    }
  }

  const double kernel_tol = 1e-9 * scale;
  long up = 0, down = 0;
  const RealVector& first = eigs.front();
  const RealVector& last = eigs.back();
  for (Eigen::Index i = 0; i < first.size(); ++i) {
    const bool start_nonneg = first(i) >= -kernel_tol;
    const bool end_nonneg = last(i) >= -kernel_tol;
    if (!start_nonneg && end_nonneg) ++up;
    if (start_nonneg && !end_nonneg) ++down;
  }
  return up - down;
}

long projection_index(const Projection& p, const Projection& q) {
  if (p.dim() != q.dim())
    throw ValidationError("projection_index: dimension mismatch");

  const auto range_basis = [](const Projection& proj) {
    const EigenDecomposition d = eigh(HermitianOperator::symmetrized(proj.entries()));
    Matrix basis(proj.dim(), proj.rank());
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i)
      if (d.eigenvalues(i) > 0.5) basis.col(col++) = d.vectors.col(i);
    if (col != proj.rank())
      throw ValidationError("projection_index: rank does not match spectrum");
    return basis;
  };

  const auto rank_of = [](const Matrix& m) {
    if (m.cols() == 0 || m.rows() == 0) return Eigen::Index(0);
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    const double tol = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol) ++r;
    return r;
  };

  const Matrix basis_p = range_basis(p);
  const Matrix basis_q = range_basis(q);
  const long ker_qp = p.rank() - rank_of(q.entries() * basis_p);
  const long ker_pq = q.rank() - rank_of(p.entries() * basis_q);
  const long index = ker_qp - ker_pq;
  const long by_rank = p.rank() - q.rank();
  if (index != by_rank)
    throw NumericError("projection_index: kernel computation disagrees with rank difference",
                       -1);
  return index;
}

long projection_pair_flow(const Projection& p, const Projection& q) {
  const Eigen::Index n = p.dim();
  const Matrix eye = Matrix::Identity(n, n);
  const HermitianOperator from =
      HermitianOperator::symmetrized(2.0 * q.entries() - eye);
  const HermitianOperator to =
      HermitianOperator::symmetrized(2.0 * p.entries() - eye);
  return spectral_flow(linear_segment(from, to)).value;
}

RelativeIndexSides relative_index_check(const OperatorPath& p_d, const OperatorPath& p_k,
                                        FlowOptions opts) {
  if (p_d.dim() != p_k.dim())
    throw ValidationError("relative_index_check: dimension mismatch");
  if (std::abs(p_d.begin() - p_k.begin()) > 1e-12 ||
      std::abs(p_d.end() - p_k.end()) > 1e-12)
    throw ValidationError("relative_index_check: interval mismatch");

  double radius = 1.0;
  for (double t : uniform_params(p_d.begin(), p_d.end(), 5))
    radius = std::max(radius, hermitian_norm(p_d.at(t)) + hermitian_norm(p_k.at(t)));
  const double delta = opts.delta > 0.0 ? opts.delta : 1e-6 * radius;

  const auto min_abs_eig = [](const HermitianOperator& a) {
    return eigh(a).eigenvalues.cwiseAbs().minCoeff();
  };
  const auto perturbed_at = [&](double t) {
    return HermitianOperator::symmetrized(p_d.at(t).entries() + p_k.at(t).entries());
  };

  for (double t : {p_d.begin(), p_d.end()}) {
    if (min_abs_eig(p_d.at(t)) < delta) {
      std::ostringstream os;
      os << "relative_index_check: D not invertible at endpoint t = " << t;
      throw PreconditionError(os.str());
    }
  }
  const int probes = std::max(opts.probe_points, 9);
  for (double t : uniform_params(p_d.begin(), p_d.end(), probes)) {
    if (min_abs_eig(perturbed_at(t)) < delta) {
      std::ostringstream os;
      os << "relative_index_check: D + K not invertible at probed t = " << t;
      throw PreconditionError(os.str());
    }
  }

  RelativeIndexSides sides;
  sides.lhs = spectral_flow(p_d, opts).value;

  const auto index_at = [&](double t) {
    const Projection pd = nonnegative_projection(p_d.at(t), delta);
    const Projection pdk = nonnegative_projection(perturbed_at(t), delta);
    return projection_index(pd, pdk);
  };
  sides.rhs = index_at(p_d.end()) - index_at(p_d.begin());
  return sides;
}

long rectangle_defect(const OperatorRectangle& r, FlowOptions opts) {
  const std::array<OperatorPath, 4> edges = boundary_edges(r);
  const long left = spectral_flow(edges[0], opts).value;    // s = 0
  const long top = spectral_flow(edges[1], opts).value;     // t = b
  const long right = spectral_flow(edges[2], opts).value;   // s = 1
  const long bottom = spectral_flow(edges[3], opts).value;  // t = a
  return left + top - right - bottom;
}

}  // namespace sflow
