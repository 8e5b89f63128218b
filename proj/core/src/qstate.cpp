#include "telerev/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ejm_coefficients.hpp"
#include "telerev/errors.hpp"

namespace telerev {

namespace {

void require_range(double v, double lo, double hi, const char* what) {
  if (!(v >= lo && v <= hi)) {
    throw DomainError(std::string(what) + " = " + std::to_string(v) + " outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

BipartiteState::BipartiteState(CMatrix coeff, std::string label)
    : coeff_(std::move(coeff)), label_(std::move(label)) {
  if (!coeff_.is_square() || coeff_.rows() < 2) {
    throw DimensionError("BipartiteState: coefficient matrix must be square with d >= 2");
  }
  const double n2 = std::pow(frobenius_norm(coeff_), 2);
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw DomainError("BipartiteState: Tr(E^dag E) = " + std::to_string(n2) + ", expected 1");
  }
}

CVector BipartiteState::amplitudes() const {
  return CVector(coeff_.entries().begin(), coeff_.entries().end());
}

BipartiteState max_entangled(std::size_t d) {
  if (d < 2) throw DimensionError("max_entangled: d must be >= 2");
  return BipartiteState(CMatrix::identity(d) * Complex(1.0 / std::sqrt(static_cast<double>(d))),
                        "max_entangled(d=" + std::to_string(d) + ")");
}

BipartiteState schmidt_channel(double phi, SchmidtBasis basis) {
  require_range(phi, 0.0, std::numbers::pi / 4, "schmidt_channel phi");
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  if (basis == SchmidtBasis::Z) {
    return BipartiteState(CMatrix::from_rows({{c, 0.0}, {0.0, s}}),
                          "schmidt_z(phi=" + std::to_string(phi) + ")");
  }
  // |0_y> = (|0> + i|1>)/sqrt2, |1_y> = (|0> - i|1>)/sqrt2
  const Complex i(0.0, 1.0);
  const CVector y0 = {1.0 / std::numbers::sqrt2, i / std::numbers::sqrt2};
  const CVector y1 = {1.0 / std::numbers::sqrt2, -i / std::numbers::sqrt2};
  CMatrix e(2, 2);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) e(a, b) = c * y0[a] * y0[b] + s * y1[a] * y1[b];
  }
  return BipartiteState(std::move(e), "schmidt_y(phi=" + std::to_string(phi) + ")");
}

BipartiteState ejm_channel(double s) {
  require_range(s, 0.0, std::numbers::pi / 2, "ejm_channel s");
  return BipartiteState(internal::ejm_element(s, 0), "ejm_channel(s=" + std::to_string(s) + ")");
}

double concurrence(const BipartiteState& state) {
  if (state.dim() != 2) {
    throw DimensionError("concurrence: defined for d = 2 only, use g_concurrence");
  }
  return 2.0 * std::abs(det(state.coeff()));
}

double g_concurrence(const CMatrix& coeff) {
  const SvdResult s = svd(coeff);
  const double d = static_cast<double>(coeff.rows());
  if (s.rank_deficient) return 0.0;
  // Product of squared singular values via logs to avoid underflow at larger d.
  double log_prod = 0.0;
  for (double sigma : s.sigmas) log_prod += 2.0 * std::log(sigma);
  return std::min(1.0, d * std::exp(log_prod / d));
}

double g_concurrence(const BipartiteState& state) { return g_concurrence(state.coeff()); }

CMatrix channel_operator(const BipartiteState& state) {
  return conjugate(state.coeff()) * transpose(state.coeff());
}

CMatrix measurement_operator(const CMatrix& element) { return adjoint(element) * element; }

BlochPoint reduced_bloch(const CMatrix& op) {
  if (op.rows() != 2 || op.cols() != 2) throw DimensionError("reduced_bloch: expected 2x2");
  if (max_abs_diff(op, adjoint(op)) > 1e-10) throw DomainError("reduced_bloch: not Hermitian");
  if (std::abs(trace(op) - 1.0) > 1e-10) throw DomainError("reduced_bloch: trace != 1");

  const Vec3 r = {2.0 * op(0, 1).real(), -2.0 * op(0, 1).imag(), (op(0, 0) - op(1, 1)).real()};
  const double radius = std::sqrt(dot(r, r));
  if (radius > 1.0 + 1e-10) throw DomainError("reduced_bloch: operator is not positive");

  BlochPoint out;
  out.radius = std::min(radius, 1.0);
  if (radius >= kDirectionFloor) out.direction = Vec3{r[0] / radius, r[1] / radius, r[2] / radius};
  return out;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace telerev
