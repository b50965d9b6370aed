#pragma once

// Phase-space domain types for the cylinder T*(S^1) and the elementary
// classical observables A = e^{eps*J + i*beta}, A*, J, beta.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace cylq {

using complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// Regularization parameter eps > 0 governing all Gaussians.
class Epsilon {
 public:
  explicit Epsilon(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value))
      throw std::invalid_argument("Epsilon must be finite and > 0, got " +
                                  std::to_string(value));
  }
  double value() const { return value_; }

 private:
  double value_;
};

/// A point (beta, J) of the cylinder; beta is reduced mod 2*pi at
/// construction so downstream code never branches on range.
class PhasePoint {
 public:
  PhasePoint(double beta, double momentum) : momentum_(momentum) {
    if (!std::isfinite(beta) || !std::isfinite(momentum))
      throw std::invalid_argument("PhasePoint coordinates must be finite");
    beta_ = std::fmod(beta, 2.0 * pi);
    if (beta_ < 0.0) beta_ += 2.0 * pi;
  }
  double beta() const { return beta_; }
  double momentum() const { return momentum_; }

 private:
  double beta_;
  double momentum_;
};

/// Symmetric truncation window {-N, ..., N} of the integer basis index.
class BasisWindow {
 public:
  explicit BasisWindow(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw std::invalid_argument("BasisWindow n_max must be >= 0");
  }
  int n_max() const { return n_max_; }
  int size() const { return 2 * n_max_ + 1; }
  bool contains(int n) const { return -n_max_ <= n && n <= n_max_; }
  /// Matrix row/column offset of basis index n.
  int offset(int n) const {
    if (!contains(n)) throw std::out_of_range("index outside basis window");
    return n + n_max_;
  }

 private:
  int n_max_;
};

/// Finite-support coefficients c_{pq} of a Laurent observable
/// sum c_{pq} A*^p A^q.
class LaurentCoefficients {
 public:
  using Key = std::pair<int, int>;  // (p, q)

  LaurentCoefficients() = default;
  LaurentCoefficients(std::initializer_list<std::pair<const Key, complex>> init)
      : entries_(init) {
    prune();
  }

  void set(int p, int q, complex c) {
    if (c == complex{0.0, 0.0})
      entries_.erase({p, q});
    else
      entries_[{p, q}] = c;
  }
  const std::map<Key, complex>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Coefficients of the complex-conjugate observable: c'_{pq} = conj(c_{qp}).
  LaurentCoefficients conjugated() const {
    LaurentCoefficients out;
    for (const auto& [key, c] : entries_) out.set(key.second, key.first, std::conj(c));
    return out;
  }

 private:
  void prune() {
    for (auto it = entries_.begin(); it != entries_.end();)
      it = (it->second == complex{0.0, 0.0}) ? entries_.erase(it) : std::next(it);
  }
  std::map<Key, complex> entries_;
};

namespace detail {
// Largest exponent with finite exp() in double.
inline constexpr double exp_arg_max = 709.0;

inline double checked_exp(double arg, const char* what) {
  if (arg > exp_arg_max)
    throw std::overflow_error(std::string(what) + ": exponent " +
                              std::to_string(arg) + " exceeds floating range");
  return std::exp(arg);
}
}  // namespace detail

/// Density of the measure mu(dbeta, dJ) with respect to dbeta dJ:
/// sqrt(eps/pi) * (1/2pi) * e^{-eps J^2}.
inline double measure_weight(const PhasePoint& x, const Epsilon& eps) {
  const double e = eps.value();
  return std::sqrt(e / pi) / (2.0 * pi) * std::exp(-e * x.momentum() * x.momentum());
}

/// A(beta, J) = e^{eps*J} * e^{i beta}.
inline complex classical_A(const PhasePoint& x, const Epsilon& eps) {
  const double r = detail::checked_exp(eps.value() * x.momentum(), "classical_A");
  return std::polar(r, x.beta());
}

inline complex classical_A_star(const PhasePoint& x, const Epsilon& eps) {
  return std::conj(classical_A(x, eps));
}

/// sum c_{pq} (A*)^p A^q = sum c_{pq} e^{eps (p+q) J} e^{i (q-p) beta}.
inline complex eval_laurent(const LaurentCoefficients& c, const PhasePoint& x,
                            const Epsilon& eps) {
  complex acc{0.0, 0.0};
  for (const auto& [key, coeff] : c.entries()) {
    const auto [p, q] = key;
    const double radial =
        detail::checked_exp(eps.value() * (p + q) * x.momentum(), "eval_laurent");
    acc += coeff * radial * std::polar(1.0, (q - p) * x.beta());
  }
  return acc;
}

}  // namespace cylq
