#include <doctest.h>

#include <cmath>

#include "test_support.hpp"

using namespace sflow;

TEST_CASE("linear segment recovers endpoints and interpolates") {
  std::mt19937_64 rng(1);
  const HermitianOperator a = testing::random_hermitian(4, rng);
  const HermitianOperator b = testing::random_hermitian(4, rng);
  const OperatorPath p = linear_segment(a, b);
  CHECK(operator_norm(p.at(0.0).entries() - a.entries()) < 1e-12);
  CHECK(operator_norm(p.at(1.0).entries() - b.entries()) < 1e-12);

  const OperatorPath c = linear_segment(a, a);
  CHECK(operator_norm(c.at(0.37).entries() - a.entries()) < 1e-12);

  const HermitianOperator mi(Matrix(-Matrix::Identity(3, 3)));
  const HermitianOperator pi(Matrix(Matrix::Identity(3, 3)));
  const OperatorPath ramp = linear_segment(mi, pi);
  CHECK(ramp.at(0.75).entries()(0, 0).real() == doctest::Approx(0.5));

  CHECK_THROWS_AS(linear_segment(a, testing::random_hermitian(5, rng)), ValidationError);
}

TEST_CASE("concatenation joins matching endpoints and rejects gaps") {
  std::mt19937_64 rng(2);
  const HermitianOperator a = testing::random_hermitian(3, rng);
  const HermitianOperator b = testing::random_hermitian(3, rng);
  const HermitianOperator c = testing::random_hermitian(3, rng);

  const OperatorPath pq = concatenate(linear_segment(a, b), linear_segment(b, c));
  CHECK(operator_norm(pq.at(0.0).entries() - a.entries()) < 1e-12);
  CHECK(operator_norm(pq.at(1.0).entries() - c.entries()) < 1e-12);
  // junction agrees from both sides
  CHECK(operator_norm(pq.at(0.5 - 1e-12).entries() - pq.at(0.5 + 1e-12).entries()) <
        1e-9);

  const OperatorPath p = linear_segment(a, b);
  const OperatorPath loop = concatenate(p, reverse(p));
  CHECK(operator_norm(loop.at(0.0).entries() - loop.at(1.0).entries()) < 1e-12);

  const HermitianOperator shifted = HermitianOperator::symmetrized(
      b.entries() + 0.5 * Matrix::Identity(3, 3));
  CHECK_THROWS_AS(concatenate(p, linear_segment(shifted, c)), ConcatenationError);
}

TEST_CASE("conjugation preserves pointwise spectra") {
  std::mt19937_64 rng(3);
  const OperatorPath p = testing::random_smooth_path(5, rng);

  // u == identity leaves the path unchanged
  const UnitaryPath id(0.0, 1.0, 5, [](double) { return Matrix(Matrix::Identity(5, 5)); });
  CHECK(operator_norm(conjugate(p, id).at(0.4).entries() - p.at(0.4).entries()) < 1e-12);

  // constant unitary: pointwise similarity
  const Matrix v = testing::random_unitary(5, rng);
  const UnitaryPath constant(0.0, 1.0, 5, [v](double) { return v; });
  const OperatorPath pc = conjugate(p, constant);
  for (double t : {0.0, 0.3, 0.9}) {
    const RealVector before = eigh(p.at(t)).eigenvalues;
    const RealVector after = eigh(pc.at(t)).eigenvalues;
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-9);
  }

  const UnitaryPath u = testing::random_unitary_path(5, rng);
  const OperatorPath pu = conjugate(p, u);
  for (double t : {0.1, 0.5, 0.8}) {
    const RealVector before = eigh(p.at(t)).eigenvalues;
    const RealVector after = eigh(pu.at(t)).eigenvalues;
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("pushforward applies f spectrally and validates f") {
  std::mt19937_64 rng(4);
  const OperatorPath p = testing::random_smooth_path(4, rng);

  const OperatorPath ident = pushforward(p, [](double x) { return x; });
  CHECK(operator_norm(ident.at(0.6).entries() - p.at(0.6).entries()) < 1e-8);

  const OperatorPath cubed = pushforward(p, [](double x) { return x * x * x; });
  const RealVector before = eigh(p.at(0.3)).eigenvalues;
  const RealVector after = eigh(cubed.at(0.3)).eigenvalues;
  for (Eigen::Index i = 0; i < before.size(); ++i)
    CHECK(after(i) == doctest::Approx(std::pow(before(i), 3.0)));

  // clamp keeps invertible samples invertible
  const OperatorPath clamped = pushforward(
      testing::random_pw_linear_path(4, 1, rng, 0.4),
      [](double x) { return std::clamp(5.0 * x, -1.0, 1.0); });
  CHECK(eigh(clamped.at(0.0)).eigenvalues.cwiseAbs().minCoeff() > 0.0);

  CHECK_THROWS_AS(pushforward(p, [](double x) { return -x; }), ValidationError);
  CHECK_THROWS_AS(pushforward(p, [](double x) { return x + 1.0; }), ValidationError);
}

TEST_CASE("pushforward commutes with conjugation") {
  std::mt19937_64 rng(5);
  const OperatorPath p = testing::random_smooth_path(4, rng);
  const UnitaryPath u = testing::random_unitary_path(4, rng);
  auto f = [](double x) { return std::atan(x); };
  const OperatorPath lhs = pushforward(conjugate(p, u), f);
  const OperatorPath rhs = conjugate(pushforward(p, f), u);
  for (double t : {0.2, 0.7})
    CHECK(operator_norm(lhs.at(t).entries() - rhs.at(t).entries()) < 1e-8);
}

TEST_CASE("boundary edges of rectangles") {
  std::mt19937_64 rng(6);
  const Matrix a = testing::random_hermitian(3, rng).entries();

  const OperatorRectangle constant(0.0, 1.0, 3, [a](double, double) {
    return HermitianOperator::symmetrized(a);
  });
  for (const OperatorPath& e : boundary_edges(constant))
    CHECK(operator_norm(e.at(e.begin()).entries() - a) < 1e-12);

  // r(s, t) = t A: the s = 0 and s = 1 edges coincide
  const OperatorRectangle ramp(0.0, 1.0, 3, [a](double, double t) {
    return HermitianOperator::symmetrized(t * a);
  });
  const auto edges = boundary_edges(ramp);
  for (double t : {0.0, 0.5, 1.0})
    CHECK(operator_norm(edges[0].at(t).entries() - edges[2].at(t).entries()) < 1e-12);

  // product family (1-s) p(t) + s q(t): edges recover p and q
  const OperatorPath p = testing::random_smooth_path(3, rng);
  const OperatorPath q = testing::random_smooth_path(3, rng);
  const OperatorRectangle blend(0.0, 1.0, 3, [p, q](double s, double t) {
    return HermitianOperator::symmetrized((1.0 - s) * p.at(t).entries() +
                                          s * q.at(t).entries());
  });
  const auto be = boundary_edges(blend);
  CHECK(operator_norm(be[0].at(0.3).entries() - p.at(0.3).entries()) < 1e-12);
  CHECK(operator_norm(be[2].at(0.3).entries() - q.at(0.3).entries()) < 1e-12);
}

TEST_CASE("unitary path validates samples") {
  const UnitaryPath bad(0.0, 1.0, 2, [](double t) {
    return Matrix((1.0 + t) * Matrix::Identity(2, 2));
  });
  CHECK_THROWS_AS(bad.at(0.5), ValidationError);
}
