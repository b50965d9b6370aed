#pragma once

// The quadrature oracle: builds O_f as a matrix from the defining integral
//   <m|O_f|n> = integral f(x) Phi_m^*(x) Phi_n(x) mu(dx)
// for any observable spec, independently of every closed form.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <variant>

#include "cylq/basis.hpp"
#include "cylq/core.hpp"
#include "cylq/quadrature.hpp"

namespace cylq {

/// Observable given by a finite set of beta-Fourier modes k with
/// J-profiles g_k; growth_bound declares |g_k(J)| <= C e^{a |J|}.
struct FourierObservable {
  std::map<int, std::function<complex(double)>> modes;
  double growth_bound = 0.0;
};

/// Bandlimited pointwise observable f(beta, J) with declared beta-bandwidth.
struct PointwiseObservable {
  std::function<complex(double, double)> f;
  int bandwidth = 0;
  double growth_bound = 0.0;
};

using ObservableSpec = std::variant<LaurentCoefficients, FourierObservable, PointwiseObservable>;

/// Dense (2N+1)x(2N+1) complex matrix indexed by a basis window.
class OperatorMatrix {
 public:
  OperatorMatrix(const BasisWindow& window, const Epsilon& eps)
      : window_(window),
        eps_(eps),
        entries_(Eigen::MatrixXcd::Zero(window.size(), window.size())) {}
  OperatorMatrix(const BasisWindow& window, const Epsilon& eps, Eigen::MatrixXcd entries)
      : window_(window), eps_(eps), entries_(std::move(entries)) {
    if (entries_.rows() != window.size() || entries_.cols() != window.size())
      throw std::invalid_argument("OperatorMatrix: entries do not match window");
  }

  const BasisWindow& window() const { return window_; }
  const Epsilon& eps() const { return eps_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  complex at(int m, int n) const {
    return entries_(window_.offset(m), window_.offset(n));
  }
  void set(int m, int n, complex value) {
    entries_(window_.offset(m), window_.offset(n)) = value;
  }

  OperatorMatrix adjoint() const {
    return OperatorMatrix(window_, eps_, entries_.adjoint());
  }
  OperatorMatrix operator*(const OperatorMatrix& other) const {
    require_compatible(other);
    return OperatorMatrix(window_, eps_, entries_ * other.entries_);
  }
  OperatorMatrix operator+(const OperatorMatrix& other) const {
    require_compatible(other);
    return OperatorMatrix(window_, eps_, entries_ + other.entries_);
  }
  OperatorMatrix operator-(const OperatorMatrix& other) const {
    require_compatible(other);
    return OperatorMatrix(window_, eps_, entries_ - other.entries_);
  }
  OperatorMatrix scaled(complex factor) const {
    return OperatorMatrix(window_, eps_, factor * entries_);
  }

  double max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

  /// Max |entry| over rows and columns with |index| <= N - margin.
  double interior_max_abs(int margin) const {
    const int inner = window_.n_max() - margin;
    if (inner < 0) throw std::invalid_argument("interior_max_abs: window too small");
    const int lo = window_.offset(-inner);
    const int span = 2 * inner + 1;
    return entries_.block(lo, lo, span, span).cwiseAbs().maxCoeff();
  }
  /// Max |entry| over the complement of the interior sub-window.
  double edge_max_abs(int margin) const {
    const int inner = window_.n_max() - margin;
    if (inner < 0) return max_abs();
    double worst = 0.0;
    for (int m = -window_.n_max(); m <= window_.n_max(); ++m)
      for (int n = -window_.n_max(); n <= window_.n_max(); ++n)
        if (std::abs(m) > inner || std::abs(n) > inner)
          worst = std::max(worst, std::abs(at(m, n)));
    return worst;
  }

  /// Max entrywise defect against a reference, relative to the reference
  /// entry magnitude (floored at 1), so exponentially large entries are
  /// judged by round-off rather than absolute size.
  double relative_defect(const OperatorMatrix& reference) const {
    require_compatible(reference);
    return ((entries_ - reference.entries_).cwiseAbs().array() /
            reference.entries_.cwiseAbs().array().max(1.0))
        .maxCoeff();
  }
  /// Same, restricted to rows/columns with |index| <= N - margin.
  double relative_defect(const OperatorMatrix& reference, int margin) const {
    require_compatible(reference);
    const int inner = window_.n_max() - margin;
    if (inner < 0) throw std::invalid_argument("relative_defect: window too small");
    double worst = 0.0;
    for (int m = -inner; m <= inner; ++m)
      for (int n = -inner; n <= inner; ++n)
        worst = std::max(worst, std::abs(at(m, n) - reference.at(m, n)) /
                                    std::max(1.0, std::abs(reference.at(m, n))));
    return worst;
  }

  static OperatorMatrix identity(const BasisWindow& window, const Epsilon& eps) {
    return OperatorMatrix(window, eps,
                          Eigen::MatrixXcd::Identity(window.size(), window.size()));
  }

 private:
  void require_compatible(const OperatorMatrix& other) const {
    if (window_.n_max() != other.window_.n_max() ||
        eps_.value() != other.eps_.value())
      throw std::invalid_argument("OperatorMatrix: mismatched window or epsilon");
  }
  BasisWindow window_;
  Epsilon eps_;
  Eigen::MatrixXcd entries_;
};

namespace detail {

inline int max_beta_mode(const ObservableSpec& obs) {
  return std::visit(
      [](const auto& o) -> int {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LaurentCoefficients>) {
          int k = 0;
          for (const auto& [key, c] : o.entries())
            k = std::max(k, std::abs(key.second - key.first));
          return k;
        } else if constexpr (std::is_same_v<T, FourierObservable>) {
          int k = 0;
          for (const auto& [mode, g] : o.modes) k = std::max(k, std::abs(mode));
          return k;
        } else {
          return o.bandwidth;
        }
      },
      obs);
}

inline double growth_bound_of(const ObservableSpec& obs, const Epsilon& eps) {
  return std::visit(
      [&](const auto& o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LaurentCoefficients>) {
          double a = 0.0;
          for (const auto& [key, c] : o.entries())
            a = std::max(a, eps.value() * std::abs(key.first + key.second));
          return a;
        } else {
          return o.growth_bound;
        }
      },
      obs);
}

/// One-dimensional Gauss-Hermite integral
///   sqrt(eps/pi) * integral g(J) e^{-eps J^2 + eps (m+n) J} dJ
/// with the square completed at J0 = (m+n)/2:
///   e^{eps J0^2} / sqrt(pi) * sum w_k g(t_k / sqrt(eps) + J0).
inline complex profile_integral(const std::function<complex(double)>& profile, int m,
                                int n, double e, const GaussHermiteRule& rule) {
  const double center = 0.5 * (m + n);
  const double scale = 1.0 / std::sqrt(e);
  complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    acc += rule.weights[k] * profile(rule.nodes[k] * scale + center);
  return std::exp(e * center * center) / std::sqrt(pi) * acc;
}

}  // namespace detail

/// Collapse a Laurent observable to the J-profile of a single beta-mode k:
/// g_k(J) = sum over entries with q - p = k of c_{pq} e^{eps (p+q) J}.
inline std::function<complex(double)> laurent_mode_profile(const LaurentCoefficients& c,
                                                           int mode, const Epsilon& eps) {
  std::vector<std::pair<double, complex>> terms;  // (eps*(p+q), c_pq)
  for (const auto& [key, coeff] : c.entries())
    if (key.second - key.first == mode)
      terms.emplace_back(eps.value() * (key.first + key.second), coeff);
  return [terms](double momentum) {
    complex acc{0.0, 0.0};
    for (const auto& [rate, coeff] : terms)
      acc += coeff * cylq::detail::checked_exp(rate * momentum, "laurent profile");
    return acc;
  };
}

inline complex matrix_element(int m, int n, const ObservableSpec& obs, const Epsilon& eps,
                              const QuadratureConfig& quad) {
  quad.validate();
  const double e = eps.value();
  const int n_max = std::max(std::abs(m), std::abs(n));
  const int bandwidth = detail::max_beta_mode(obs);
  const GaussHermiteRule rule = gauss_hermite_rule(quad.gh_nodes);
  const double common = std::exp(-0.5 * e * (m * m + n * n));

  if (const auto* laurent = std::get_if<LaurentCoefficients>(&obs)) {
    // The beta integral selects the single mode k = m - n; every other
    // entry is a structural zero, written exactly.
    const auto profile = laurent_mode_profile(*laurent, m - n, eps);
    return common * detail::profile_integral(profile, m, n, e, rule);
  }
  if (const auto* fourier = std::get_if<FourierObservable>(&obs)) {
    const auto it = fourier->modes.find(m - n);
    if (it == fourier->modes.end()) return {0.0, 0.0};
    return common * detail::profile_integral(it->second, m, n, e, rule);
  }

  const auto& pointwise = std::get<PointwiseObservable>(obs);
  if (std::abs(m - n) > pointwise.bandwidth) return {0.0, 0.0};
  const int points = quad.resolved_beta_points(n_max, pointwise.bandwidth);
  if (points < QuadratureConfig::min_beta_points(n_max, pointwise.bandwidth))
    throw std::invalid_argument(
        "matrix_element: beta grid too coarse for declared bandwidth (aliasing)");
  // Full tensor quadrature: trapezoid in beta, recentered Gauss-Hermite in J.
  const double center = 0.5 * (m + n);
  const double scale = 1.0 / std::sqrt(e);
  complex acc{0.0, 0.0};
  for (int l = 0; l < points; ++l) {
    const double beta = 2.0 * pi * l / points;
    complex j_sum{0.0, 0.0};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      j_sum += rule.weights[k] * pointwise.f(beta, rule.nodes[k] * scale + center);
    acc += std::polar(1.0, (n - m) * beta) * j_sum;
  }
  acc /= static_cast<double>(points);
  return common * std::exp(e * center * center) / std::sqrt(pi) * acc;
}

/// Quadrature-oracle quantization of an observable on a window.
inline OperatorMatrix quantize(const ObservableSpec& obs, const Epsilon& eps,
                               const BasisWindow& window, const QuadratureConfig& quad) {
  quad.validate();
  const double growth = detail::growth_bound_of(obs, eps);
  // Admission rule: the recentered Gaussian must still dominate the
  // declared J-growth inside the reporting domain.
  if (growth / (2.0 * eps.value()) > quad.J_max + window.n_max())
    throw std::invalid_argument("quantize: declared J-growth bound too large for window");

  OperatorMatrix out(window, eps);
  for (int m = -window.n_max(); m <= window.n_max(); ++m)
    for (int n = -window.n_max(); n <= window.n_max(); ++n)
      out.set(m, n, matrix_element(m, n, obs, eps, quad));
  return out;
}

}  // namespace cylq
