#pragma once

// Analytic operator matrices on the cylinder basis:
//   O_{J^m}      diagonal, Hermite closed form
//   O_beta       pi*Id plus i e^{-eps(n-n')^2/4}/(n-n') off the diagonal
//   O_{A*^p}, O_{A^q}, O_{A*^p A^q}   single-band shift operators
// together with the ordering-identity verifier O_{A*^p} O_{A^q} = O_{A*^p A^q}
// and the Laurent quantizer that puts every A* factor leftmost.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "cylq/core.hpp"
#include "cylq/quantizer.hpp"

namespace cylq {

namespace detail {

/// Hermite H_m at purely imaginary argument via the three-term recurrence
/// H_{k+1}(z) = 2 z H_k(z) - 2 k H_{k-1}(z), in complex arithmetic.
inline complex hermite(int m, complex z) {
  complex prev{1.0, 0.0};        // H_0
  if (m == 0) return prev;
  complex cur = 2.0 * z;         // H_1
  for (int k = 1; k < m; ++k) {
    const complex next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace detail

/// O_{J^m}: diagonal entries (i/(2 sqrt(eps)))^m H_m(-i sqrt(eps) n).
/// The value is real; a nonzero imaginary residue signals a recurrence bug.
inline OperatorMatrix op_J_power(int power, const Epsilon& eps, const BasisWindow& window) {
  if (power < 0) throw std::invalid_argument("op_J_power: power must be >= 0");
  const double sqrt_e = std::sqrt(eps.value());
  const complex prefactor = std::pow(complex{0.0, 1.0} / (2.0 * sqrt_e), power);
  OperatorMatrix out(window, eps);
  for (int n = -window.n_max(); n <= window.n_max(); ++n) {
    const complex value = prefactor * detail::hermite(power, complex{0.0, -sqrt_e * n});
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real())))
      throw std::logic_error("op_J_power: imaginary residue " +
                             std::to_string(value.imag()) + " at n=" + std::to_string(n));
    out.set(n, n, complex{value.real(), 0.0});
  }
  return out;
}

/// O_beta for the sawtooth branch beta in [0, 2pi): pi on the diagonal,
/// i e^{-eps (n-n')^2 / 4} / (n-n') elsewhere.
inline OperatorMatrix op_beta(const Epsilon& eps, const BasisWindow& window) {
  OperatorMatrix out(window, eps);
  for (int n = -window.n_max(); n <= window.n_max(); ++n)
    for (int np = -window.n_max(); np <= window.n_max(); ++np) {
      if (n == np) {
        out.set(n, np, complex{pi, 0.0});
      } else {
        const int d = n - np;
        out.set(n, np, complex{0.0, 1.0} * std::exp(-0.25 * eps.value() * d * d) /
                           static_cast<double>(d));
      }
    }
  return out;
}

/// O_{A*^p}: entries e^{(eps/2) p (p + 2n)} at (row n, column n+p).
/// Shifts falling outside the window are truncated; the count is reported.
inline OperatorMatrix op_A_star_p(int p, const Epsilon& eps, const BasisWindow& window,
                                  int* dropped = nullptr) {
  if (std::abs(p) > 2 * window.n_max())
    throw std::invalid_argument("op_A_star_p: |p| exceeds window span");
  OperatorMatrix out(window, eps);
  int lost = 0;
  for (int n = -window.n_max(); n <= window.n_max(); ++n) {
    if (!window.contains(n + p)) {
      ++lost;
      continue;
    }
    // exponent (eps/2) p (p + 2n), integer part exact before exponentiation
    const long long exponent2 = static_cast<long long>(p) * (p + 2LL * n);
    out.set(n, n + p, complex{std::exp(0.5 * eps.value() * exponent2), 0.0});
  }
  if (dropped) *dropped = lost;
  return out;
}

/// O_{A^q}: entries e^{-(eps/2) q (q - 2n)} at (row n, column n-q).
inline OperatorMatrix op_A_q(int q, const Epsilon& eps, const BasisWindow& window,
                             int* dropped = nullptr) {
  if (std::abs(q) > 2 * window.n_max())
    throw std::invalid_argument("op_A_q: |q| exceeds window span");
  OperatorMatrix out(window, eps);
  int lost = 0;
  for (int n = -window.n_max(); n <= window.n_max(); ++n) {
    if (!window.contains(n - q)) {
      ++lost;
      continue;
    }
    const long long exponent2 = -static_cast<long long>(q) * (q - 2LL * n);
    out.set(n, n - q, complex{std::exp(0.5 * eps.value() * exponent2), 0.0});
  }
  if (dropped) *dropped = lost;
  return out;
}

/// O_{A*^p A^q}: entries e^{(eps/2)(2pq - (p+q)(q - p - 2n))} on the
/// band m - n = q - p (row n, column n - (q - p)).
inline OperatorMatrix op_A_star_p_A_q(int p, int q, const Epsilon& eps,
                                      const BasisWindow& window, int* dropped = nullptr) {
  if (std::abs(q - p) > 2 * window.n_max())
    throw std::invalid_argument("op_A_star_p_A_q: band exceeds window span");
  OperatorMatrix out(window, eps);
  int lost = 0;
  for (int n = -window.n_max(); n <= window.n_max(); ++n) {
    if (!window.contains(n - (q - p))) {
      ++lost;
      continue;
    }
    const long long exponent2 =
        2LL * p * q - static_cast<long long>(p + q) * (q - p - 2LL * n);
    out.set(n, n - (q - p), complex{std::exp(0.5 * eps.value() * exponent2), 0.0});
  }
  if (dropped) *dropped = lost;
  return out;
}

struct OrderingReport {
  int p = 0, q = 0;
  double eps_value = 0.0;
  int n_max = 0;
  int interior_margin = 0;
  double interior_defect = 0.0;  // must vanish to round-off
  double edge_defect = 0.0;      // truncation artifact, reported not failed
};

/// Checks O_{A*^p} O_{A^q} = O_{A*^p A^q} entrywise on the interior
/// sub-window; the truncation edge is reported separately.
inline OrderingReport verify_ordering(int p, int q, const Epsilon& eps,
                                      const BasisWindow& window) {
  const int margin = std::max({std::abs(p), std::abs(q), std::abs(p - q)});
  if (window.n_max() <= margin)
    throw std::invalid_argument("verify_ordering: window too small for interior margin " +
                                std::to_string(margin));
  const OperatorMatrix product = op_A_star_p(p, eps, window) * op_A_q(q, eps, window);
  const OperatorMatrix closed = op_A_star_p_A_q(p, q, eps, window);
  // Entries grow like e^{(eps/2) 2N (p+q)}; the defect is measured relative
  // to entry magnitude so round-off on huge entries does not mask the check.
  OrderingReport report;
  report.p = p;
  report.q = q;
  report.eps_value = eps.value();
  report.n_max = window.n_max();
  report.interior_margin = margin;
  const int n_max = window.n_max();
  const int inner = n_max - margin;
  for (int m = -n_max; m <= n_max; ++m)
    for (int n = -n_max; n <= n_max; ++n) {
      const double scale = std::max(1.0, std::abs(closed.at(m, n)));
      const double defect = std::abs(product.at(m, n) - closed.at(m, n)) / scale;
      if (std::abs(m) <= inner && std::abs(n) <= inner)
        report.interior_defect = std::max(report.interior_defect, defect);
      else
        report.edge_defect = std::max(report.edge_defect, defect);
    }
  return report;
}

/// Anti-Wick quantization of a finite Laurent series: every A*^p factor
/// acts leftmost, O_f = sum c_{pq} O_{A*^p} O_{A^q}. Consumers read the
/// interior sub-window; the edge carries truncation artifacts.
inline OperatorMatrix quantize_laurent(const LaurentCoefficients& c, const Epsilon& eps,
                                       const BasisWindow& window) {
  OperatorMatrix out(window, eps);
  for (const auto& [key, coeff] : c.entries()) {
    const auto [p, q] = key;
    out = out + (op_A_star_p(p, eps, window) * op_A_q(q, eps, window)).scaled(coeff);
  }
  return out;
}

/// Interior defect of O_{A^{-1}} O_A - Id and O_A O_{A^{-1}} - Id.
inline double inverse_relation_check(const Epsilon& eps, const BasisWindow& window) {
  if (window.n_max() < 2)
    throw std::invalid_argument("inverse_relation_check: need n_max >= 2");
  const OperatorMatrix id = OperatorMatrix::identity(window, eps);
  const OperatorMatrix fwd = op_A_q(-1, eps, window) * op_A_q(1, eps, window) - id;
  const OperatorMatrix rev = op_A_q(1, eps, window) * op_A_q(-1, eps, window) - id;
  return std::max(fwd.interior_max_abs(1), rev.interior_max_abs(1));
}

}  // namespace cylq
