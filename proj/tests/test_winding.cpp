#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sflow/winding.hpp"
#include "test_support.hpp"

using namespace sflow;

namespace {

constexpr double kPi = std::numbers::pi;

UnitaryLoop phase_loop(Eigen::Index dim, std::vector<int> winds) {
  return UnitaryLoop(dim, [winds, dim](double x) {
    Matrix u = Matrix::Identity(dim, dim);
    for (size_t i = 0; i < winds.size(); ++i)
      u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
          std::exp(Complex(0.0, 2.0 * kPi * winds[i] * x));
    return u;
  });
}

}  // namespace

TEST_CASE("winding number of basic loops") {
  CHECK(winding_number(phase_loop(3, {0, 0, 0})) == 0);
  CHECK(winding_number(phase_loop(3, {1, 0, 0})) == 1);
  CHECK(winding_number(phase_loop(2, {-2, 0})) == -2);
  CHECK(winding_number(phase_loop(4, {3, -1, 2, 0})) == 4);
}

TEST_CASE("winding diagnostics are small for smooth loops") {
  const WindingDiagnostics d = winding_number_full(phase_loop(2, {1, -1}), 257);
  CHECK(d.value == 0);
  CHECK(d.trace_residual < 1e-6);
  CHECK(d.det_residual < 1e-6);
  CHECK(d.points_used >= 257);
}

TEST_CASE("winding is additive under pointwise product") {
  std::mt19937_64 rng(30);
  const Matrix u0 = testing::random_unitary(3, rng);
  const UnitaryLoop a(3, [u0](double x) {
    Matrix u = u0;
    u.col(0) *= std::exp(Complex(0.0, 2.0 * kPi * x));
    return Matrix(u * u0.adjoint());
  });
  const UnitaryLoop b = phase_loop(3, {0, -2, 1});
  const UnitaryLoop product(3,
                            [a, b](double x) { return Matrix(a.at(x) * b.at(x)); });
  CHECK(winding_number(product) == winding_number(a) + winding_number(b));
}

TEST_CASE("winding negates under reversal and adds under direct sum") {
  const UnitaryLoop a = phase_loop(2, {2, -1});
  const UnitaryLoop reversed(2, [a](double x) { return a.at(1.0 - x); });
  CHECK(winding_number(reversed) == -winding_number(a));

  const UnitaryLoop b = phase_loop(3, {1, 1, 0});
  const UnitaryLoop sum(5, [a, b](double x) {
    Matrix u = Matrix::Zero(5, 5);
    u.topLeftCorner(2, 2) = a.at(x);
    u.bottomRightCorner(3, 3) = b.at(x);
    return u;
  });
  CHECK(winding_number(sum) == winding_number(a) + winding_number(b));
}

TEST_CASE("winding is invariant under conjugation by a loop of unitaries") {
  std::mt19937_64 rng(31);
  const UnitaryLoop a = phase_loop(3, {1, 0, -1});
  const UnitaryPath v = testing::random_unitary_path(3, rng);
  const UnitaryLoop conjugated(3, [a, v](double x) {
    const Matrix w = v.at(v.begin() + x * (v.end() - v.begin()));
    return Matrix(w * a.at(x) * w.adjoint());
  });
  CHECK(winding_number(conjugated) == winding_number(a));
}

TEST_CASE("basepoint mismatch is rejected") {
  CHECK_THROWS_AS(UnitaryLoop(2,
                              [](double x) {
                                Matrix u = Matrix::Identity(2, 2);
                                u(0, 0) = std::exp(Complex(0.0, kPi * x));
                                return u;
                              }),
                  ValidationError);
}

TEST_CASE("unresolvable loop raises WindingResolutionError") {
  // winds so fast that even the capped refinement cannot resolve the phase steps
  const UnitaryLoop fast(1, [](double x) {
    Matrix u(1, 1);
    u << std::exp(Complex(0.0, 2.0 * kPi * 2.0e7 * x));
    return u;
  });
  CHECK_THROWS_AS(winding_number_full(fast, 17), WindingResolutionError);
}

TEST_CASE("exp_loop of a scalar crossing winds once") {
  const OperatorPath ramp(0.0, 1.0, 1, [](double t) {
    Matrix m(1, 1);
    m << 2.0 * t - 1.0;
    return HermitianOperator(std::move(m));
  });
  const NormalizingFunction chi(1);
  const UnitaryLoop loop = exp_loop(ramp, chi);
  CHECK(winding_number(loop) == 1);
  CHECK((loop.at(0.0) - Matrix::Identity(1, 1)).norm() < 1e-12);
  CHECK((loop.at(1.0) - Matrix::Identity(1, 1)).norm() < 1e-12);
}

TEST_CASE("exp_loop rejects paths without the endpoint structure") {
  const OperatorPath open_path(0.0, 1.0, 1, [](double t) {
    Matrix m(1, 1);
    m << 0.5 + t;  // spectrum stays inside (0, 2): chi-image not an involution
    return HermitianOperator(std::move(m));
  });
  CHECK_THROWS_AS(exp_loop(open_path, NormalizingFunction(1)), PreconditionError);
}

TEST_CASE("exp_loop turns closed paths into closed loops with zero winding") {
  std::mt19937_64 rng(32);
  const OperatorPath p = testing::random_pw_linear_path(3, 2, rng);
  const OperatorPath closed = concatenate(p, reverse(p));
  const UnitaryLoop loop = exp_loop(closed, NormalizingFunction(2));
  CHECK(winding_number(loop) == 0);
}

TEST_CASE("spectral flow equals winding of the exponential loop") {
  std::mt19937_64 rng(33);
  const NormalizingFunction chi(1);
  std::uniform_int_distribution<Eigen::Index> neg(0, 4);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianOperator f0 = testing::random_involution(4, neg(rng), rng);
    const HermitianOperator f1 = testing::random_involution(4, neg(rng), rng);
    const OperatorPath p = testing::involution_ended_path(f0, f1, rng);
    const long flow = spectral_flow(p).value;
    CHECK(winding_number(exp_loop(p, chi)) == flow);
  }
}

TEST_CASE("generator loop has flow one and winding one") {
  CHECK_THROWS_AS(generator_loop(1), ValidationError);
  for (Eigen::Index dim : {2, 3, 4, 7}) {
    const GeneratorLoop gen = generator_loop(dim);
    CHECK(gen.expected_flow == 1);
    CHECK(spectral_flow(gen.path).value == 1);
    const UnitaryLoop image = exp_loop(gen.path, NormalizingFunction(1));
    CHECK(winding_number(image) == 1);
    // endpoints are involutions, so the unitary image closes at the identity
    CHECK((image.at(0.0) - image.at(1.0)).norm() < 1e-10);
  }
}

TEST_CASE("generator loop endpoints are involutions") {
  const GeneratorLoop gen = generator_loop(3);
  const Matrix f0 = gen.path.at(gen.path.begin()).entries();
  const Matrix f1 = gen.path.at(gen.path.end()).entries();
  CHECK((f0 * f0 - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((f1 * f1 - Matrix::Identity(3, 3)).norm() < 1e-12);
}
