#pragma once

// Gaussian-weighted Fourier basis Phi_n(beta, J) = e^{-eps n^2/2} e^{n(eps J + i beta)},
// the normalization series N_eps(J), window selection and the Gram check.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "cylq/core.hpp"
#include "cylq/quadrature.hpp"

namespace cylq {

inline complex phi(int n, const PhasePoint& x, const Epsilon& eps) {
  const double e = eps.value();
  const double arg = -0.5 * e * n * n + n * e * x.momentum();
  const double r = detail::checked_exp(arg, "phi");
  return std::polar(r, n * x.beta());
}

/// |phi(n,x)|^2 = e^{-eps n^2 + 2 eps n J}, beta-independent.
inline double phi_abs2(int n, double momentum, const Epsilon& eps) {
  const double e = eps.value();
  return detail::checked_exp(-e * n * n + 2.0 * e * n * momentum, "phi_abs2");
}

struct NormalizationResult {
  double value = 0.0;
  int terms_used = 0;
  double tail_bound = 0.0;
};

/// N_eps(J) = sum_n e^{-eps n^2 + 2 eps n J}, summed symmetrically outward
/// from the summand's peak n ~ J until a geometric majorant of the tail
/// drops below tol. The bound is recorded, not silently trusted.
inline NormalizationResult normalization(double momentum, const Epsilon& eps,
                                         double tol = 1e-15) {
  if (!(tol > 0.0)) throw std::invalid_argument("normalization: tol must be > 0");
  const double e = eps.value();
  const int peak = static_cast<int>(std::llround(momentum));

  auto term = [&](int n) { return phi_abs2(n, momentum, eps); };
  // Ratio of consecutive terms moving away from the peak; < 1 once past it.
  auto up_ratio = [&](int n) { return std::exp(-e * (2.0 * n + 1.0 - 2.0 * momentum)); };
  auto down_ratio = [&](int n) { return std::exp(e * (2.0 * n - 1.0 - 2.0 * momentum)); };

  NormalizationResult out;
  out.value = term(peak);
  out.terms_used = 1;

  int hi = peak, lo = peak;
  double tail_hi = 0.0, tail_lo = 0.0;
  for (;;) {
    const double r_hi = up_ratio(hi + 1);
    tail_hi = (r_hi < 1.0) ? term(hi + 1) / (1.0 - r_hi)
                           : std::numeric_limits<double>::infinity();
    const double r_lo = down_ratio(lo - 1);
    tail_lo = (r_lo < 1.0) ? term(lo - 1) / (1.0 - r_lo)
                           : std::numeric_limits<double>::infinity();
    if (tail_hi + tail_lo < tol) break;
    if (tail_hi >= tail_lo) {
      out.value += term(++hi);
    } else {
      out.value += term(--lo);
    }
    ++out.terms_used;
  }
  out.tail_bound = tail_hi + tail_lo;
  return out;
}

/// Smallest N with e^{-eps n^2/2 + eps |n| J_max} < tol for all |n| > N,
/// not below the estimate N >= ceil(J_max + sqrt(2 ln(1/tol) / eps)).
inline BasisWindow choose_window(const Epsilon& eps, double J_max, double tol) {
  if (!(J_max > 0.0)) throw std::invalid_argument("choose_window: J_max must be > 0");
  if (!(tol > 0.0 && tol < 1.0))
    throw std::invalid_argument("choose_window: tol must be in (0, 1)");
  const double e = eps.value();
  const double log_inv_tol = -std::log(tol);
  int n_max = static_cast<int>(std::ceil(J_max + std::sqrt(2.0 * log_inv_tol / e)));
  // The estimate can undershoot for large J_max; beyond the peak n = J_max
  // the dropped-coefficient bound is monotone, so checking n = N+1 suffices.
  auto dropped = [&](int n) { return -0.5 * e * n * n + e * n * J_max; };
  while (static_cast<double>(n_max + 1) <= J_max || dropped(n_max + 1) >= std::log(tol))
    ++n_max;
  return BasisWindow(n_max);
}

struct GramReport {
  double defect = 0.0;     // max-norm deviation of the Gram matrix from Id
  bool aliased = false;    // beta grid cannot resolve all modes up to 2N
  Eigen::MatrixXcd gram;
};

/// Gram matrix G_{mn} = integral of Phi_m^* Phi_n d mu by quadrature
/// (uniform trapezoid in beta, Gauss-Hermite in J recentered per element).
inline GramReport gram_by_quadrature(const BasisWindow& window, const Epsilon& eps,
                                     const QuadratureConfig& quad) {
  quad.validate();
  const int n_max = window.n_max();
  const int points = quad.resolved_beta_points(n_max, 0);
  GramReport report;
  report.aliased = points < QuadratureConfig::min_beta_points(n_max, 0);

  const GaussHermiteRule rule = gauss_hermite_rule(quad.gh_nodes);
  const double e = eps.value();
  const int dim = window.size();
  report.gram = Eigen::MatrixXcd::Zero(dim, dim);

  // Global (uncentered) Gauss-Hermite in J, the same rule the resolution
  // check uses, so the two paths agree entry by entry to round-off.
  const double sqrt_e = std::sqrt(e);
  for (int m = -n_max; m <= n_max; ++m) {
    for (int n = -n_max; n <= n_max; ++n) {
      // beta average of e^{i(n-m)beta} on the uniform grid
      complex beta_sum{0.0, 0.0};
      for (int l = 0; l < points; ++l)
        beta_sum += std::polar(1.0, (n - m) * (2.0 * pi * l / points));
      beta_sum /= static_cast<double>(points);

      double j_sum = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        j_sum += rule.weights[k] *
                 std::exp(-0.5 * e * (m * m + n * n) + (m + n) * sqrt_e * rule.nodes[k]);
      j_sum /= std::sqrt(pi);
      report.gram(window.offset(m), window.offset(n)) = beta_sum * j_sum;
    }
  }

  const Eigen::MatrixXcd defect =
      report.gram - Eigen::MatrixXcd::Identity(dim, dim);
  report.defect = defect.cwiseAbs().maxCoeff();
  return report;
}

inline double orthonormality_defect(const BasisWindow& window, const Epsilon& eps,
                                    const QuadratureConfig& quad) {
  return gram_by_quadrature(window, eps, quad).defect;
}

}  // namespace cylq
