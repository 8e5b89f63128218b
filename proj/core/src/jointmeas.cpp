#include "telerev/jointmeas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ejm_coefficients.hpp"
#include "telerev/errors.hpp"

namespace telerev {

namespace {

using std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

std::string fmt_param(const char* name, double v) { return std::string(name) + "=" + std::to_string(v); }

}  // namespace

JointMeasurement::JointMeasurement(std::size_t d, std::vector<CMatrix> elements, std::string label)
    : d_(d), elements_(std::move(elements)), label_(std::move(label)) {
  if (d_ < 2) throw DimensionError("JointMeasurement: d must be >= 2");
  if (elements_.size() != d_ * d_) {
    throw DimensionError("JointMeasurement: expected d^2 = " + std::to_string(d_ * d_) +
                         " elements, got " + std::to_string(elements_.size()));
  }
  for (const auto& w : elements_) {
    if (w.rows() != d_ || w.cols() != d_) throw DimensionError("JointMeasurement: element is not d x d");
  }
}

const CMatrix& JointMeasurement::element(std::size_t r) const {
  if (r >= elements_.size()) {
    throw DimensionError("JointMeasurement: outcome " + std::to_string(r) + " out of range");
  }
  return elements_[r];
}

JointMeasurement bell_basis() {
  const double h = 1.0 / std::numbers::sqrt2;
  std::vector<CMatrix> w = {
      CMatrix::from_rows({{h, 0.0}, {0.0, h}}),   // (|00> + |11>)/sqrt2
      CMatrix::from_rows({{0.0, h}, {h, 0.0}}),   // (|01> + |10>)/sqrt2
      CMatrix::from_rows({{h, 0.0}, {0.0, -h}}),  // (|00> - |11>)/sqrt2
      CMatrix::from_rows({{0.0, h}, {-h, 0.0}}),  // (|01> - |10>)/sqrt2
  };
  return JointMeasurement(2, std::move(w), "bell");
}

JointMeasurement xx_deformed(double t) {
  if (!(t >= 0.0 && t <= pi / 4)) throw DomainError("xx_deformed: t outside [0, pi/4]");
  const double theta = pi / 4 - t;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  std::vector<CMatrix> w = {
      CMatrix::from_rows({{s, 0.0}, {0.0, kI * c}}),
      CMatrix::from_rows({{0.0, s}, {kI * c, 0.0}}),
      CMatrix::from_rows({{c, 0.0}, {0.0, -kI * s}}),
      CMatrix::from_rows({{0.0, c}, {-kI * s, 0.0}}),
  };
  return JointMeasurement(2, std::move(w), "xx_deformed(" + fmt_param("t", t) + ")");
}

JointMeasurement ejm(double t) {
  if (!(t >= 0.0 && t <= pi / 2)) throw DomainError("ejm: t outside [0, pi/2]");
  std::vector<CMatrix> w;
  for (int r = 0; r < 4; ++r) w.push_back(internal::ejm_element(t, r));
  return JointMeasurement(2, std::move(w), "ejm(" + fmt_param("t", t) + ")");
}

double zx_zz_t_max() { return std::sqrt(3.0) * pi / 4; }

double zx_zz_rotation(double t) { return std::sqrt(pi * pi + 16.0 * t * t) / 4.0; }

Complex zx_zz_alpha(double t) {
  const double r = zx_zz_rotation(t);
  return Complex(pi / (4.0 * r) * std::sin(r) + std::cos(r), t / r * std::sin(r));
}

Complex zx_zz_beta(double t) {
  const double r = zx_zz_rotation(t);
  return kI * (pi / (4.0 * r) * std::sin(r) - std::cos(r)) - t / r * std::sin(r);
}

JointMeasurement zx_zz(double t) {
  if (!(t >= 0.0 && t < zx_zz_t_max())) throw DomainError("zx_zz: t outside [0, sqrt(3) pi/4)");
  const Complex a = zx_zz_alpha(t);
  const Complex b = zx_zz_beta(t);
  const Complex ac = std::conj(a);
  const Complex bc = std::conj(b);
  std::vector<CMatrix> w = {
      CMatrix::from_rows({{a, b}, {-b, a}}),
      CMatrix::from_rows({{-bc, ac}, {ac, bc}}),
      CMatrix::from_rows({{a, b}, {b, -a}}),
      CMatrix::from_rows({{-bc, ac}, {-ac, -bc}}),
  };
  for (auto& m : w) m *= 0.5;
  return JointMeasurement(2, std::move(w), "zx_zz(" + fmt_param("t", t) + ")");
}

BasisReport validate(const JointMeasurement& jm) {
  BasisReport rep;
  const std::size_t n = jm.size();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      const auto& wr = jm.elements()[r].entries();
      const auto& ws = jm.elements()[s].entries();
      const Complex g = inner(wr, ws);
      const double expected = r == s ? 1.0 : 0.0;
      rep.ortho_residual = std::max(rep.ortho_residual, std::abs(g - expected));
    }
  }
  // sum_r |w_r><w_r| over C^{d^2}
  CMatrix frame(n, n);
  for (const auto& w : jm.elements()) frame += CMatrix::outer(w.entries(), w.entries());
  rep.completeness_residual = max_abs_diff(frame, CMatrix::identity(n));
  return rep;
}

double element_entanglement(const JointMeasurement& jm, std::size_t r) {
  const CMatrix& w = jm.element(r);
  if (jm.dim() == 2) return 2.0 * std::abs(det(w));
  return g_concurrence(w);
}

BlochPoint element_bloch(const JointMeasurement& jm, std::size_t r) {
  if (jm.dim() != 2) throw DimensionError("element_bloch: qubits only");
  return reduced_bloch(measurement_operator(jm.element(r)));
}

}  // namespace telerev
