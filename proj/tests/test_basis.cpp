#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "cylq/basis.hpp"
#include "doctest.h"

using namespace cylq;

TEST_CASE("phi values") {
  const Epsilon eps(1.0);
  CHECK(phi(0, PhasePoint(1.234, -5.6), Epsilon(0.3)) == complex{1.0, 0.0});
  CHECK(phi(1, PhasePoint(0.0, 0.0), eps).real() == doctest::Approx(std::exp(-0.5)));
  // n=-2 at beta=pi: phase e^{-2 i pi} = 1
  const complex value = phi(-2, PhasePoint(pi, 0.0), eps);
  CHECK(value.real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  CHECK(value.imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("phi modulus is beta independent") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * pi);
  const Epsilon eps(0.5);
  for (int n = -4; n <= 4; ++n) {
    const double momentum = 1.3;
    const double reference = phi_abs2(n, momentum, eps);
    for (int i = 0; i < 20; ++i) {
      const complex value = phi(n, PhasePoint(dist(rng), momentum), eps);
      CHECK(std::norm(value) == doctest::Approx(reference).epsilon(1e-13));
    }
  }
}

// Direct symmetric partial sum, the independent oracle for the series.
static double normalization_brute(double momentum, double e) {
  double total = 0.0;
  for (int n = -200; n <= 200; ++n) total += std::exp(-e * n * n + 2.0 * e * n * momentum);
  return total;
}

TEST_CASE("normalization series at J=0, eps=1") {
  const NormalizationResult r = normalization(0.0, Epsilon(1.0));
  CHECK(r.value == doctest::Approx(1.7726372).epsilon(1e-7));
  CHECK(r.value == doctest::Approx(normalization_brute(0.0, 1.0)).epsilon(1e-15));
  CHECK(r.tail_bound < 1e-15);
  CHECK(r.terms_used >= 3);
}

TEST_CASE("normalization tends to 1 for large eps") {
  CHECK(normalization(0.0, Epsilon(80.0)).value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normalization is even in J") {
  for (double momentum : {0.3, 1.0, 2.7, 6.2}) {
    const double plus = normalization(momentum, Epsilon(1.0)).value;
    const double minus = normalization(-momentum, Epsilon(1.0)).value;
    CHECK(plus == doctest::Approx(minus).epsilon(1e-14));
  }
}

TEST_CASE("normalization matches brute force at large J") {
  for (double momentum : {4.0, 10.0, 25.5}) {
    const double expected = normalization_brute(momentum, 0.7);
    CHECK(normalization(momentum, Epsilon(0.7)).value ==
          doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("normalization equals windowed sum of |phi|^2 plus tail") {
  const Epsilon eps(1.0);
  const double momentum = 1.9;
  const BasisWindow w = choose_window(eps, 2.5, 1e-13);
  double windowed = 0.0;
  for (int n = -w.n_max(); n <= w.n_max(); ++n) windowed += phi_abs2(n, momentum, eps);
  CHECK(normalization(momentum, eps).value == doctest::Approx(windowed).epsilon(1e-12));
}

TEST_CASE("window selection formula") {
  CHECK(choose_window(Epsilon(1.0), 3.0, 1e-12).n_max() == 11);
  CHECK(choose_window(Epsilon(1.0), 0.1, 1e-6).n_max() == 6);
  // monotone in eps
  CHECK(choose_window(Epsilon(4.0), 3.0, 1e-12).n_max() <
        choose_window(Epsilon(1.0), 3.0, 1e-12).n_max());
  CHECK_THROWS_AS(choose_window(Epsilon(1.0), 3.0, 1.5), std::invalid_argument);
}

TEST_CASE("window selection drops nothing above tol") {
  for (double J_max : {0.5, 3.0, 10.0}) {
    for (double e : {0.2, 1.0, 2.0}) {
      const double tol = 1e-12;
      const BasisWindow w = choose_window(Epsilon(e), J_max, tol);
      for (int n = w.n_max() + 1; n <= w.n_max() + 40; ++n)
        CHECK(std::exp(-0.5 * e * n * n + e * n * J_max) < tol);
    }
  }
}

TEST_CASE("gram matrix is the identity under adequate quadrature") {
  QuadratureConfig quad;
  CHECK(orthonormality_defect(BasisWindow(5), Epsilon(1.0), quad) < 1e-10);
  CHECK(orthonormality_defect(BasisWindow(0), Epsilon(1.0), quad) < 1e-12);
}

TEST_CASE("undersampled beta grid aliases and is flagged") {
  QuadratureConfig quad;
  quad.beta_points = 7;  // fewer than 2N+1 for N=5
  const GramReport report = gram_by_quadrature(BasisWindow(5), Epsilon(0.1), quad);
  CHECK(report.aliased);
  CHECK(report.defect > 0.01);
}
