#ifndef SFLOW_PATHS_HPP
#define SFLOW_PATHS_HPP

#include <array>
#include <functional>

#include "sflow/functional_calculus.hpp"
#include "sflow/hermitian.hpp"

namespace sflow {

enum class Smoothness { analytic, lipschitz, unknown };

struct SmoothnessHint {
  Smoothness kind = Smoothness::unknown;
  double lipschitz_constant = 0.0;
};

/// One-parameter family t -> D_t over [a, b]. Paths are samplers, not sample
/// arrays: algorithms choose their own resolution.
class OperatorPath {
public:
  using Sampler = std::function<HermitianOperator(double)>;

  OperatorPath(double a, double b, Eigen::Index dim, Sampler sampler,
               SmoothnessHint hint = {});

  HermitianOperator at(double t) const;
  double begin() const { return a_; }
  double end() const { return b_; }
  Eigen::Index dim() const { return dim_; }
  const SmoothnessHint& hint() const { return hint_; }

private:
  double a_, b_;
  Eigen::Index dim_;
  Sampler sampler_;
  SmoothnessHint hint_;
};

/// Path of unitaries; samples validated U*U = I within tau_eig * dim.
class UnitaryPath {
public:
  using Sampler = std::function<Matrix(double)>;

  UnitaryPath(double a, double b, Eigen::Index dim, Sampler sampler);

  Matrix at(double t) const;
  double begin() const { return a_; }
  double end() const { return b_; }
  Eigen::Index dim() const { return dim_; }

private:
  double a_, b_;
  Eigen::Index dim_;
  Sampler sampler_;
};

/// Two-parameter family (s, t) -> D_{(s,t)}, s in [0, 1], t in [a, b].
class OperatorRectangle {
public:
  using Sampler = std::function<HermitianOperator(double, double)>;

  OperatorRectangle(double ta, double tb, Eigen::Index dim, Sampler sampler);

  HermitianOperator at(double s, double t) const;
  double t_begin() const { return ta_; }
  double t_end() const { return tb_; }
  Eigen::Index dim() const { return dim_; }

private:
  double ta_, tb_;
  Eigen::Index dim_;
  Sampler sampler_;
};

/// t -> (1-t) A + t B on [0, 1].
OperatorPath linear_segment(const HermitianOperator& a, const HermitianOperator& b);

/// Joins p and q (p must end where q starts, within tau_cat = 1e-9 * max norm).
/// Both pieces are reparametrized affinely onto adjacent subintervals of [0, 1],
/// proportionally to their original lengths.
OperatorPath concatenate(const OperatorPath& p, const OperatorPath& q);

/// Orientation reversal t -> p(a + b - t).
OperatorPath reverse(const OperatorPath& p);

/// t -> U(t) D(t) U(t)*.
OperatorPath conjugate(const OperatorPath& p, const UnitaryPath& u);

/// t -> f(D_t) for non-decreasing f with f^{-1}(0) = {0}. Monotonicity is
/// probed on a 1024-point grid over the sampled spectral range, plus sign
/// checks at +-spectral radius.
OperatorPath pushforward(const OperatorPath& p, const std::function<double(double)>& f);

/// The four boundary edges of a rectangle, in the orientation of the
/// alternating sum: {s=0 (t: a->b), t=b (s: 0->1), s=1 (t: a->b), t=a (s: 0->1)}.
std::array<OperatorPath, 4> boundary_edges(const OperatorRectangle& r);

}  // namespace sflow

#endif
