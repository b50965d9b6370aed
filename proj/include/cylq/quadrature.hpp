#pragma once

// Gauss-Hermite rule (weight e^{-t^2}) via the Golub-Welsch eigenvalue
// method, plus the quadrature configuration shared by the oracle paths.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylq/core.hpp"

namespace cylq {

struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline constexpr int gauss_hermite_max_nodes = 160;

/// Nodes/weights of the count-point Gauss-Hermite rule, exact for
/// polynomials of degree <= 2*count - 1 against weight e^{-t^2}.
///
/// Newton iteration on the orthonormal Hermite recurrence. Unlike the
/// Golub-Welsch eigenvector route this keeps full relative accuracy in the
/// exponentially small extreme-node weights, which the resolution check
/// multiplies by exponentially large integrand values.
inline GaussHermiteRule gauss_hermite_rule(int count) {
  if (count < 1) throw std::invalid_argument("gauss_hermite_rule: count must be >= 1");
  if (count > gauss_hermite_max_nodes)
    throw std::invalid_argument("gauss_hermite_rule: count " + std::to_string(count) +
                                " exceeds cap " + std::to_string(gauss_hermite_max_nodes));

  GaussHermiteRule rule;
  rule.nodes.assign(count, 0.0);
  rule.weights.assign(count, 0.0);
  const int upper = (count + 1) / 2;
  const double quarter_root_pi = std::pow(pi, -0.25);
  double z = 0.0, prev_z = 0.0, prev_prev_z = 0.0;
  for (int i = 0; i < upper; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * count + 1.0) - 1.85575 * std::pow(2.0 * count + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(count, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * prev_prev_z;
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * prev_prev_z;
    } else {
      z = 2.0 * z - prev_prev_z;
    }
    double deriv = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = quarter_root_pi, p2 = 0.0;
      for (int j = 1; j <= count; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      deriv = std::sqrt(2.0 * count) * p2;
      const double step = p1 / deriv;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw std::runtime_error("gauss_hermite_rule: Newton iteration failed at root " +
                               std::to_string(i) + " of " + std::to_string(count));
    prev_prev_z = prev_z;
    prev_z = z;
    rule.nodes[count - 1 - i] = z;
    rule.nodes[i] = -z;
    const double weight = 2.0 / (deriv * deriv);
    rule.weights[count - 1 - i] = weight;
    rule.weights[i] = weight;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;  // exact symmetry
  for (int k = 1; k < count; ++k)
    if (!(rule.nodes[k] > rule.nodes[k - 1]))
      throw std::runtime_error("gauss_hermite_rule: roots not strictly increasing");
  return rule;
}

/// Quadrature settings for the oracle integrals: Gauss-Hermite node count
/// in J, uniform beta grid size, and the reporting bound J_max.
struct QuadratureConfig {
  int gh_nodes = 64;
  int beta_points = 0;  // 0 = auto: 2*(2N + K) + 1
  double J_max = 3.0;
  double tol = 1e-10;

  /// Smallest aliasing-free beta grid for window N and max beta-mode K.
  static int min_beta_points(int n_max, int max_mode) {
    return 2 * (2 * n_max + max_mode) + 1;
  }
  int resolved_beta_points(int n_max, int max_mode) const {
    return beta_points > 0 ? beta_points : min_beta_points(n_max, max_mode);
  }

  void validate() const {
    if (gh_nodes < 1) throw std::invalid_argument("QuadratureConfig: gh_nodes must be >= 1");
    if (!(J_max > 0.0)) throw std::invalid_argument("QuadratureConfig: J_max must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("QuadratureConfig: tol must be > 0");
  }
};

}  // namespace cylq
