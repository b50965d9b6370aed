#pragma once

// Coherent-state coefficient vectors |x> = (1/sqrt(N(J))) sum Phi_n^*(x) |n>,
// overlaps, and the resolution-of-identity check.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "cylq/basis.hpp"
#include "cylq/core.hpp"
#include "cylq/quadrature.hpp"

namespace cylq {

struct CoherentVector {
  BasisWindow window;
  Eigen::VectorXcd coeffs;     // index n -> coeffs[window.offset(n)]
  PhasePoint point;
  Epsilon eps;
  double norm_defect = 0.0;    // 1 - ||c||^2, truncation loss

  complex at(int n) const { return coeffs(window.offset(n)); }
};

inline CoherentVector coherent_vector(const PhasePoint& x, const Epsilon& eps,
                                      const BasisWindow& window) {
  const double norm_factor = normalization(x.momentum(), eps).value;
  const double inv_sqrt = 1.0 / std::sqrt(norm_factor);
  CoherentVector out{window, Eigen::VectorXcd(window.size()), x, eps};
  for (int n = -window.n_max(); n <= window.n_max(); ++n)
    out.coeffs(window.offset(n)) = std::conj(phi(n, x, eps)) * inv_sqrt;
  out.norm_defect = 1.0 - out.coeffs.squaredNorm();
  return out;
}

/// <x1|x2> = sum_n Phi_n(x1) conj(Phi_n(x2)) / sqrt(N(J1) N(J2)) on the window.
inline complex overlap(const PhasePoint& x1, const PhasePoint& x2, const Epsilon& eps,
                       const BasisWindow& window) {
  const CoherentVector a = coherent_vector(x1, eps, window);
  const CoherentVector b = coherent_vector(x2, eps, window);
  return a.coeffs.dot(b.coeffs);  // Eigen dot conjugates the left factor
}

struct ResolutionReport {
  double defect = 0.0;           // max-norm deviation of M from Id
  double neglected_mass = 0.0;   // mu-mass of |J| > J_max, reported not integrated
  Eigen::MatrixXcd matrix;
};

/// M_{mn} = integral <m|x><x|n> N(J) mu(dx) by quadrature, through the
/// literal coherent-vector path so the N-cancellation bookkeeping of
/// nu = N mu is exercised rather than assumed.
inline ResolutionReport resolution_check(const Epsilon& eps, const BasisWindow& window,
                                         const QuadratureConfig& quad) {
  quad.validate();
  const int n_max = window.n_max();
  const int points = quad.resolved_beta_points(n_max, 0);
  const GaussHermiteRule rule = gauss_hermite_rule(quad.gh_nodes);
  const double e = eps.value();
  const double scale = 1.0 / std::sqrt(e);
  const int dim = window.size();

  ResolutionReport report;
  report.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  // GH weight e^{-t^2} carries the Gaussian of mu; remaining density
  // factor at J = t/sqrt(eps) is 1/(2 pi sqrt(pi)) per node after the
  // substitution dJ = dt/sqrt(eps).
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double momentum = rule.nodes[k] * scale;
    const double norm_factor = normalization(momentum, eps).value;
    for (int l = 0; l < points; ++l) {
      const double beta = 2.0 * pi * l / points;
      const CoherentVector c = coherent_vector(PhasePoint(beta, momentum), eps, window);
      const double weight =
          rule.weights[k] / std::sqrt(pi) * norm_factor / points;
      report.matrix.noalias() += weight * (c.coeffs * c.coeffs.adjoint());
    }
  }
  report.defect =
      (report.matrix - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  report.neglected_mass = std::erfc(std::sqrt(e) * quad.J_max);
  return report;
}

inline double resolution_defect(const Epsilon& eps, const BasisWindow& window,
                                const QuadratureConfig& quad) {
  return resolution_check(eps, window, quad).defect;
}

}  // namespace cylq
