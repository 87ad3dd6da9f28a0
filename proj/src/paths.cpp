#include "sflow/paths.hpp"

#include <cmath>
#include <sstream>

namespace sflow {

namespace {
constexpr double kParamSlack = 1e-12;
}

OperatorPath::OperatorPath(double a, double b, Eigen::Index dim, Sampler sampler,
                           SmoothnessHint hint)
    : a_(a), b_(b), dim_(dim), sampler_(std::move(sampler)), hint_(hint) {
  if (!(a < b)) throw ValidationError("OperatorPath: interval must satisfy a < b");
  if (dim < 1) throw ValidationError("OperatorPath: dim must be positive");
  if (!sampler_) throw ValidationError("OperatorPath: sampler must be callable");
}

HermitianOperator OperatorPath::at(double t) const {
  const double slack = kParamSlack * std::max(1.0, std::abs(b_ - a_));
  if (t < a_ - slack || t > b_ + slack)
    throw ValidationError("OperatorPath: parameter outside interval");
  HermitianOperator sample = sampler_(std::clamp(t, a_, b_));
  if (sample.dim() != dim_)
    throw ValidationError("OperatorPath: sample dimension differs from declared dim");
  return sample;
}

UnitaryPath::UnitaryPath(double a, double b, Eigen::Index dim, Sampler sampler)
    : a_(a), b_(b), dim_(dim), sampler_(std::move(sampler)) {
  if (!(a < b)) throw ValidationError("UnitaryPath: interval must satisfy a < b");
  if (dim < 1) throw ValidationError("UnitaryPath: dim must be positive");
  if (!sampler_) throw ValidationError("UnitaryPath: sampler must be callable");
}

Matrix UnitaryPath::at(double t) const {
  const double slack = kParamSlack * std::max(1.0, std::abs(b_ - a_));
  if (t < a_ - slack || t > b_ + slack)
    throw ValidationError("UnitaryPath: parameter outside interval");
  Matrix u = sampler_(std::clamp(t, a_, b_));
  if (u.rows() != dim_ || u.cols() != dim_)
    throw ValidationError("UnitaryPath: sample dimension differs from declared dim");
  const double dev =
      (u.adjoint() * u - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
  if (dev > tau_eig * static_cast<double>(dim_) * 10.0)
    throw ValidationError("UnitaryPath: sample is not unitary (deviation " +
                          std::to_string(dev) + ")");
  return u;
}

OperatorRectangle::OperatorRectangle(double ta, double tb, Eigen::Index dim,
                                     Sampler sampler)
    : ta_(ta), tb_(tb), dim_(dim), sampler_(std::move(sampler)) {
  if (!(ta < tb)) throw ValidationError("OperatorRectangle: t-interval must satisfy a < b");
  if (dim < 1) throw ValidationError("OperatorRectangle: dim must be positive");
  if (!sampler_) throw ValidationError("OperatorRectangle: sampler must be callable");
}

HermitianOperator OperatorRectangle::at(double s, double t) const {
  if (s < -kParamSlack || s > 1.0 + kParamSlack)
    throw ValidationError("OperatorRectangle: s outside [0, 1]");
  const double slack = kParamSlack * std::max(1.0, std::abs(tb_ - ta_));
  if (t < ta_ - slack || t > tb_ + slack)
    throw ValidationError("OperatorRectangle: t outside interval");
  HermitianOperator sample =
      sampler_(std::clamp(s, 0.0, 1.0), std::clamp(t, ta_, tb_));
  if (sample.dim() != dim_)
    throw ValidationError("OperatorRectangle: sample dimension differs from declared dim");
  return sample;
}

OperatorPath linear_segment(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim())
    throw ValidationError("linear_segment: dimension mismatch");
  const Matrix ma = a.entries();
  const Matrix mb = b.entries();
  return OperatorPath(
      0.0, 1.0, a.dim(),
      [ma, mb](double t) {
        return HermitianOperator::symmetrized((1.0 - t) * ma + t * mb);
      },
      {Smoothness::analytic, 0.0});
}

OperatorPath concatenate(const OperatorPath& p, const OperatorPath& q) {
  if (p.dim() != q.dim())
    throw ValidationError("concatenate: dimension mismatch");
  const HermitianOperator pe = p.at(p.end());
  const HermitianOperator qs = q.at(q.begin());
  const double scale =
      std::max({1.0, pe.entries().cwiseAbs().maxCoeff(), qs.entries().cwiseAbs().maxCoeff()});
  const double gap = operator_norm(pe.entries() - qs.entries());
  const double tau_cat = 1e-9 * scale;
  if (gap > tau_cat) {
    std::ostringstream os;
    os << "concatenate: endpoint mismatch, gap norm " << gap;
    throw ConcatenationError(os.str(), gap);
  }

  // junction placed proportionally to the original lengths
  const double lp = p.end() - p.begin();
  const double lq = q.end() - q.begin();
  const double c = lp / (lp + lq);
  const double pa = p.begin(), pb = p.end(), qa = q.begin(), qb = q.end();
  const OperatorPath pc = p, qc = q;
  SmoothnessHint hint;
  if (p.hint().kind == Smoothness::lipschitz && q.hint().kind == Smoothness::lipschitz) {
    hint.kind = Smoothness::lipschitz;
    hint.lipschitz_constant =
        std::max(p.hint().lipschitz_constant * lp / c,
                 q.hint().lipschitz_constant * lq / (1.0 - c));
  }
  return OperatorPath(
      0.0, 1.0, p.dim(),
      [pc, qc, c, pa, pb, qa, qb](double t) {
        if (t <= c) return pc.at(pa + (pb - pa) * (t / c));
        return qc.at(qa + (qb - qa) * ((t - c) / (1.0 - c)));
      },
      hint);
}

OperatorPath reverse(const OperatorPath& p) {
  const OperatorPath pc = p;
  const double a = p.begin(), b = p.end();
  return OperatorPath(
      a, b, p.dim(), [pc, a, b](double t) { return pc.at(a + b - t); }, p.hint());
}

OperatorPath conjugate(const OperatorPath& p, const UnitaryPath& u) {
  if (p.dim() != u.dim())
    throw ValidationError("conjugate: dimension mismatch");
  if (std::abs(p.begin() - u.begin()) > kParamSlack ||
      std::abs(p.end() - u.end()) > kParamSlack)
    throw ValidationError("conjugate: interval mismatch");
  const OperatorPath pc = p;
  const UnitaryPath uc = u;
  return OperatorPath(
      p.begin(), p.end(), p.dim(),
      [pc, uc](double t) {
        const Matrix ut = uc.at(t);
        return HermitianOperator::symmetrized(ut * pc.at(t).entries() * ut.adjoint());
      },
      {Smoothness::unknown, 0.0});
}

OperatorPath pushforward(const OperatorPath& p, const std::function<double(double)>& f) {
  // spectral range from endpoint and midpoint samples
  double radius = 0.0;
  for (double t : {p.begin(), 0.5 * (p.begin() + p.end()), p.end()})
    radius = std::max(radius, hermitian_norm(p.at(t)));
  const double r = std::max(radius, 1.0);

  if (std::abs(f(0.0)) > 1e-12)
    throw ValidationError("pushforward: f(0) must be 0");
  // monotonicity probe on a 1024-point grid over [-r, r]
  double prev = f(-r);
  for (int i = 1; i < 1024; ++i) {
    const double x = -r + 2.0 * r * i / 1023.0;
    const double y = f(x);
    if (y < prev - 1e-12 * std::max(1.0, std::abs(prev)))
      throw ValidationError("pushforward: f fails the monotonicity probe");
    prev = y;
  }
  if (!(f(r) > 0.0) || !(f(-r) < 0.0))
    throw ValidationError("pushforward: f must be nonzero off 0 (sign check at +-radius)");

  const OperatorPath pc = p;
  return OperatorPath(
      p.begin(), p.end(), p.dim(),
      [pc, f](double t) { return apply_function(pc.at(t), f); },
      {Smoothness::unknown, 0.0});
}

std::array<OperatorPath, 4> boundary_edges(const OperatorRectangle& r) {
  const OperatorRectangle rc = r;
  const double ta = r.t_begin(), tb = r.t_end();
  OperatorPath s0(ta, tb, r.dim(), [rc](double t) { return rc.at(0.0, t); });
  OperatorPath top(0.0, 1.0, r.dim(), [rc, tb](double s) { return rc.at(s, tb); });
  OperatorPath s1(ta, tb, r.dim(), [rc](double t) { return rc.at(1.0, t); });
  OperatorPath bottom(0.0, 1.0, r.dim(), [rc, ta](double s) { return rc.at(s, ta); });
  return {std::move(s0), std::move(top), std::move(s1), std::move(bottom)};
}

}  // namespace sflow
