#pragma once

// Lower (covariant) symbols <x| O |x> evaluated over phase-space grids.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylq/coherent.hpp"
#include "cylq/core.hpp"
#include "cylq/quantizer.hpp"

namespace cylq {

struct SymbolField {
  std::vector<PhasePoint> points;
  std::vector<complex> values;
  double eps_value = 0.0;
  std::string source;
};

/// Lower symbol at x: c(x)^dagger * op * c(x) with c the coherent vector.
inline complex lower_symbol_at(const OperatorMatrix& op, const PhasePoint& x) {
  const CoherentVector c = coherent_vector(x, op.eps(), op.window());
  const complex value = (c.coeffs.adjoint() * op.entries() * c.coeffs)(0, 0);
  return value;
}

/// Same value through the projector route trace(op * P_x), P_x = c c^dagger.
inline complex lower_symbol_via_projector(const OperatorMatrix& op, const PhasePoint& x) {
  const CoherentVector c = coherent_vector(x, op.eps(), op.window());
  const Eigen::MatrixXcd projector = c.coeffs * c.coeffs.adjoint();
  return (op.entries() * projector).trace();
}

inline SymbolField lower_symbol(const OperatorMatrix& op,
                                const std::vector<PhasePoint>& points,
                                std::string source = {}) {
  SymbolField field;
  field.points = points;
  field.eps_value = op.eps().value();
  field.source = std::move(source);
  field.values.reserve(points.size());
  for (const PhasePoint& x : points) field.values.push_back(lower_symbol_at(op, x));
  return field;
}

/// Rectangular (beta, J) grid in row-major order, J varying fastest.
inline std::vector<PhasePoint> make_grid(int beta_count, int j_count, double J_max) {
  if (beta_count < 1 || j_count < 1)
    throw std::invalid_argument("make_grid: counts must be >= 1");
  std::vector<PhasePoint> grid;
  grid.reserve(static_cast<std::size_t>(beta_count) * j_count);
  for (int b = 0; b < beta_count; ++b) {
    const double beta = 2.0 * pi * b / beta_count;
    for (int j = 0; j < j_count; ++j) {
      const double momentum =
          (j_count == 1) ? 0.0 : -J_max + 2.0 * J_max * j / (j_count - 1);
      grid.emplace_back(beta, momentum);
    }
  }
  return grid;
}

}  // namespace cylq
