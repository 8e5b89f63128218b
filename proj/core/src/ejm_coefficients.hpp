#pragma once

// Coefficient matrices of the elegant joint measurement elements, phases
// exactly as in the standard form of the basis (no re-phasing).

#include <cmath>
#include <numbers>

#include "telerev/linalg.hpp"

namespace telerev::internal {

inline Complex ejm_p_plus(double t) {
  return (1.0 + std::polar(1.0, -t)) / std::numbers::sqrt2;
}

inline Complex ejm_p_minus(double t) {
  return (1.0 - std::polar(1.0, -t)) / std::numbers::sqrt2;
}

/// Row index is Alice's input qubit, column index her half of the channel.
inline CMatrix ejm_element(double t, int r) {
  using std::numbers::pi;
  const Complex pp = ejm_p_plus(t);
  const Complex pm = ejm_p_minus(t);
  const auto e = [](double turns) { return std::polar(1.0, pi * turns); };
  CMatrix w;
  switch (r) {
    case 0: w = CMatrix::from_rows({{e(-0.25), pm}, {pp, e(-0.75)}}); break;
    case 1: w = CMatrix::from_rows({{e(0.75), pm}, {pp, e(0.25)}}); break;
    case 2: w = CMatrix::from_rows({{e(0.25), -pp}, {-pm, e(0.75)}}); break;
    default: w = CMatrix::from_rows({{e(-0.75), -pp}, {-pm, e(-0.25)}}); break;
  }
  return w * Complex(0.5);
}

}  // namespace telerev::internal
