#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Eigenvalues>
#include <cmath>

#include "cylq/closed_forms.hpp"
#include "cylq/quantizer.hpp"
#include "doctest.h"

using namespace cylq;

namespace {

const Epsilon kEps(1.0);
const BasisWindow kWindow(6);

QuadratureConfig default_quad() {
  QuadratureConfig quad;
  quad.gh_nodes = 48;
  return quad;
}

ObservableSpec constant_one() {
  return LaurentCoefficients{{{0, 0}, complex{1.0, 0.0}}};
}

}  // namespace

TEST_CASE("quantize(1) is the identity") {
  const OperatorMatrix id = quantize(constant_one(), kEps, kWindow, default_quad());
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n) {
      if (m == n)
        CHECK(std::abs(id.at(m, n) - complex{1.0, 0.0}) < 1e-10);
      else
        CHECK(id.at(m, n) == complex{0.0, 0.0});  // structural zero, exact
    }
}

TEST_CASE("quantized A matches the closed-form band") {
  ObservableSpec obs = LaurentCoefficients{{{0, 1}, complex{1.0, 0.0}}};
  const OperatorMatrix m = quantize(obs, kEps, kWindow, default_quad());
  // only band m - n = 1 is populated; entry (1,0) = e^{1/2}
  CHECK(m.at(1, 0).real() == doctest::Approx(std::exp(0.5)).epsilon(1e-10));
  CHECK(m.at(0, 1) == complex{0.0, 0.0});
  CHECK(m.at(0, 0) == complex{0.0, 0.0});
}

TEST_CASE("quantized A*A is the diagonal e^{eps(2n+1)}") {
  ObservableSpec obs = LaurentCoefficients{{{1, 1}, complex{1.0, 0.0}}};
  const OperatorMatrix m = quantize(obs, kEps, kWindow, default_quad());
  for (int n = -4; n <= 4; ++n)
    CHECK(m.at(n, n).real() == doctest::Approx(std::exp(2.0 * n + 1.0)).epsilon(1e-10));
  CHECK(m.at(0, 0).real() == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
}

TEST_CASE("quantized J is the number operator via the pointwise route") {
  PointwiseObservable obs;
  obs.f = [](double, double momentum) { return complex{momentum, 0.0}; };
  obs.bandwidth = 0;
  const OperatorMatrix m = quantize(obs, kEps, kWindow, default_quad());
  for (int n = -6; n <= 6; ++n)
    CHECK(std::abs(m.at(n, n) - complex{static_cast<double>(n), 0.0}) < 1e-10);
}

TEST_CASE("fourier observable lands on its single band") {
  FourierObservable obs;
  obs.modes[2] = [](double) { return complex{1.0, 0.0}; };
  obs.growth_bound = 0.0;
  const OperatorMatrix m = quantize(ObservableSpec(obs), kEps, kWindow, default_quad());
  for (int row = -6; row <= 6; ++row)
    for (int col = -6; col <= 6; ++col)
      if (row - col != 2) CHECK(m.at(row, col) == complex{0.0, 0.0});
  CHECK(std::abs(m.at(2, 0)) > 0.0);
}

TEST_CASE("hermiticity for real observables") {
  // pointwise real
  PointwiseObservable cos_obs;
  cos_obs.f = [](double beta, double) { return complex{2.0 + std::cos(beta), 0.0}; };
  cos_obs.bandwidth = 1;
  const OperatorMatrix a = quantize(cos_obs, kEps, kWindow, default_quad());
  CHECK((a.entries() - a.entries().adjoint()).cwiseAbs().maxCoeff() < 1e-10);

  // laurent with c_pq = conj(c_qp)
  LaurentCoefficients c;
  c.set(0, 1, {0.5, 0.25});
  c.set(1, 0, {0.5, -0.25});
  c.set(1, 1, {1.0, 0.0});
  const OperatorMatrix b = quantize(ObservableSpec(c), kEps, kWindow, default_quad());
  CHECK((b.entries() - b.entries().adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("positivity of nonnegative observables") {
  auto smallest_eigenvalue = [](const OperatorMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.entries());
    return solver.eigenvalues().minCoeff();
  };
  CHECK(smallest_eigenvalue(quantize(constant_one(), kEps, kWindow, default_quad())) >
        -1e-9);
  ObservableSpec exp_obs = LaurentCoefficients{{{1, 1}, complex{1.0, 0.0}}};
  CHECK(smallest_eigenvalue(quantize(exp_obs, kEps, kWindow, default_quad())) > -1e-9);
  PointwiseObservable shifted_cos;
  shifted_cos.f = [](double beta, double) { return complex{2.0 + std::cos(beta), 0.0}; };
  shifted_cos.bandwidth = 1;
  CHECK(smallest_eigenvalue(quantize(shifted_cos, kEps, kWindow, default_quad())) > -1e-9);
}

TEST_CASE("quadrature refinement does not move entries") {
  LaurentCoefficients c;
  c.set(1, 2, {1.0, 0.0});
  c.set(0, 1, {0.0, 1.0});
  QuadratureConfig coarse = default_quad();
  QuadratureConfig fine = coarse;
  fine.gh_nodes = 2 * coarse.gh_nodes;
  const OperatorMatrix a = quantize(ObservableSpec(c), kEps, kWindow, coarse);
  const OperatorMatrix b = quantize(ObservableSpec(c), kEps, kWindow, fine);
  const double rel = ((a.entries() - b.entries()).cwiseAbs().array() /
                      (1.0 + a.entries().cwiseAbs().array()))
                         .maxCoeff();
  CHECK(rel < 1e-10);
}

TEST_CASE("aliasing and growth-bound misuse are rejected") {
  PointwiseObservable wide;
  wide.f = [](double, double) { return complex{1.0, 0.0}; };
  wide.bandwidth = 3;
  QuadratureConfig quad = default_quad();
  quad.beta_points = 5;  // below 2*(2N+K)+1
  CHECK_THROWS_AS(quantize(ObservableSpec(wide), kEps, kWindow, quad),
                  std::invalid_argument);

  PointwiseObservable runaway;
  runaway.f = [](double, double momentum) { return complex{std::exp(momentum), 0.0}; };
  runaway.bandwidth = 0;
  runaway.growth_bound = 100.0;
  CHECK_THROWS_AS(quantize(ObservableSpec(runaway), kEps, kWindow, default_quad()),
                  std::invalid_argument);
}

TEST_CASE("band-limited pointwise and fourier routes agree") {
  // f = e^{0.4 J} cos(beta)
  FourierObservable fourier;
  fourier.modes[1] = [](double momentum) { return complex{0.5 * std::exp(0.4 * momentum), 0.0}; };
  fourier.modes[-1] = fourier.modes[1];
  fourier.growth_bound = 0.4;
  PointwiseObservable pointwise;
  pointwise.f = [](double beta, double momentum) {
    return complex{std::exp(0.4 * momentum) * std::cos(beta), 0.0};
  };
  pointwise.bandwidth = 1;
  pointwise.growth_bound = 0.4;
  const OperatorMatrix a = quantize(ObservableSpec(fourier), kEps, kWindow, default_quad());
  const OperatorMatrix b = quantize(ObservableSpec(pointwise), kEps, kWindow, default_quad());
  CHECK((a.entries() - b.entries()).cwiseAbs().maxCoeff() < 1e-10);
}
