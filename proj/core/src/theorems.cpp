#include "telerev/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "telerev/errors.hpp"

namespace telerev {

namespace {

constexpr int kBisectionMaxIter = 200;

double sq(double v) { return v * v; }

void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(what) + " outside [0, 1]");
}

}  // namespace

double qubit_outcome_success(const QubitOutcomeInputs& in) {
  require_unit(in.e_c, "e_c");
  require_unit(in.e_r, "e_r");
  if (in.bar_c) require_unit(*in.bar_c, "bar_c");
  if (in.bar_r) require_unit(*in.bar_r, "bar_r");
  if (in.x_r && !(*in.x_r >= -1.0 && *in.x_r <= 1.0)) throw DomainError("x_r outside [-1, 1]");
  const double bar_c = in.bar_c.value_or(std::sqrt(1.0 - in.e_c * in.e_c));
  const double bar_r = in.bar_r.value_or(std::sqrt(1.0 - in.e_r * in.e_r));
  const double x = in.x_r.value_or(0.0);
  const double ee = in.e_c * in.e_r;
  const double a = 1.0 + bar_c * bar_r * x;
  // a - ee = (1 - bar_c bar_r - ee) + bar_c bar_r (1 + x), the first bracket as
  // a sum of squares so that it never cancels.
  const double a_minus_ee = 0.5 * (sq(in.e_c - in.e_r) + sq(bar_c - bar_r)) + bar_c * bar_r * (1.0 + x);
  // (a - sqrt(a^2 - ee^2)) rewritten as ee^2 / (a + sqrt(...)) to avoid cancellation.
  const double denom = a + std::sqrt(std::max(0.0, a_minus_ee * (a + ee)));
  if (denom == 0.0) return 0.0;
  return 0.25 * ee * ee / denom;
}

namespace {

// (E, sqrt(1 - E^2)) taken from whichever of concurrence and Bloch radius is
// smaller, with the other derived from it so the pair is consistent.
std::pair<double, double> entanglement_pair(double e, double radius) {
  e = std::min(1.0, e);
  radius = std::min(1.0, radius);
  if (radius < e) return {std::sqrt(1.0 - radius * radius), radius};
  return {e, std::sqrt(1.0 - e * e)};
}

}  // namespace

std::optional<double> alignment_x(const BipartiteState& channel, const JointMeasurement& jm, std::size_t r) {
  if (channel.dim() != 2 || jm.dim() != 2) throw DimensionError("alignment_x: qubits only");
  const BlochPoint u = reduced_bloch(channel_operator(channel));
  const BlochPoint n = element_bloch(jm, r);
  if (!u.direction || !n.direction) return std::nullopt;
  return std::clamp(dot(*u.direction, *n.direction), -1.0, 1.0);
}

double qubit_total_success(const BipartiteState& channel, const JointMeasurement& jm) {
  if (channel.dim() != 2 || jm.dim() != 2) throw DimensionError("qubit_total_success: qubits only");
  const auto [e_c, bar_c] = entanglement_pair(concurrence(channel), reduced_bloch(channel_operator(channel)).radius);
  double total = 0.0;
  for (std::size_t r = 0; r < jm.size(); ++r) {
    const auto [e_r, bar_r] = entanglement_pair(element_entanglement(jm, r), element_bloch(jm, r).radius);
    total += qubit_outcome_success({e_c, e_r, alignment_x(channel, jm, r), bar_c, bar_r});
  }
  return total;
}

double g_of_t(std::size_t d, double t) {
  const double dm1 = static_cast<double>(d) - 1.0;
  return t * std::pow((1.0 - t) / dm1, dm1);
}

double solve_tr(std::size_t d, double e_r) {
  if (d < 2) throw DimensionError("solve_tr: d must be >= 2");
  require_unit(e_r, "e_r");
  const double dd = static_cast<double>(d);
  if (e_r == 0.0) return 0.0;
  if (e_r == 1.0) return 1.0 / dd;
  const double target = std::pow(e_r / dd, dd);
  // g is strictly increasing on [0, 1/d]; run until the bracket stops shrinking.
  double lo = 0.0;
  double hi = 1.0 / dd;
  for (int it = 0; it < kBisectionMaxIter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g_of_t(d, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(g_of_t(d, lo) - target) <= std::abs(g_of_t(d, hi) - target) ? lo : hi;
}

double tr_closed_form_d3(double e_r) {
  require_unit(e_r, "e_r");
  using std::numbers::pi;
  const double arg = std::clamp(2.0 * e_r * e_r * e_r - 1.0, -1.0, 1.0);
  const double t = 2.0 / 3.0 + (2.0 / 3.0) * std::cos(std::acos(arg) / 3.0 + 2.0 * pi / 3.0);
  return std::max(0.0, t);
}

Thm2Bounds thm2_bounds(std::size_t d, const std::vector<double>& e_list) {
  if (d < 2) throw DomainError("thm2_bounds: d must be >= 2");
  if (e_list.size() != d * d) {
    throw DomainError("thm2_bounds: expected " + std::to_string(d * d) + " entanglement values");
  }
  Thm2Bounds b;
  const double dd = static_cast<double>(d);
  for (double e : e_list) {
    require_unit(e, "e_r");
    const double t = solve_tr(d, e);
    b.t_values.push_back(t);
    b.lower += t;
    b.upper += e;
  }
  b.lower /= dd;
  b.upper /= dd * dd;
  return b;
}

std::vector<double> saturating_spectrum(std::size_t d, double e_r) {
  const double t = solve_tr(d, e_r);
  const double big = std::sqrt((1.0 - t) / (static_cast<double>(d) - 1.0));
  std::vector<double> out(d, big);
  out.back() = std::sqrt(t);
  return out;
}

std::optional<JointMeasurement> saturating_basis(std::size_t d, double e_r) {
  const double dd = static_cast<double>(d);
  const double t = solve_tr(d, e_r);
  const double x = (1.0 - t) / (dd - 1.0);
  const double cos_psi = -dd * std::sqrt(x) / 2.0;
  if (cos_psi < -1.0) return std::nullopt;
  // V = I + gamma J is unitary iff 2 Re(gamma) + d |gamma|^2 = 0; then
  // |1 + gamma|^2 = 1 - (d-1)|gamma|^2 = t.
  const Complex gamma = std::polar(std::sqrt(x), std::acos(cos_psi));
  std::vector<CMatrix> elements;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t k = 0; k < d; ++k) {
      CMatrix w(d, d);
      for (std::size_t j = 0; j < d; ++j) {
        const Complex v = (j == k ? 1.0 : 0.0) + gamma;  // V_jk
        w((j + a) % d, j) = v;                           // X^a shifts row j to j+a
      }
      elements.push_back(std::move(w));
    }
  }
  return JointMeasurement(d, std::move(elements), "saturating(d=" + std::to_string(d) + ", e=" + std::to_string(e_r) + ")");
}

double ejm_aligned_success(double e_c, double e_m) {
  const double bar_c = std::sqrt(1.0 - e_c * e_c);
  const double bar_m = std::sqrt(1.0 - e_m * e_m);
  const double x = bar_c * bar_m;
  const double ee = e_c * e_m;
  const double one_minus_x_minus_ee = 0.5 * (sq(e_c - e_m) + sq(bar_c - bar_m));
  const double r1 = std::max(0.0, one_minus_x_minus_ee * (1.0 - x + ee));
  const double r2 = std::max(0.0, (3.0 + x) * (3.0 + x) - 9.0 * ee * ee);
  return 1.0 - 0.25 * (std::sqrt(r1) + std::sqrt(r2));
}

double ejm_success(double t) { return 1.0 - std::sqrt(3.0) / 2.0 * std::cos(t); }

double ejm_leakage(double t) { return 0.5 + std::sqrt(3.0) / 12.0 * std::cos(t); }

double ejm_standard_fidelity(double t) {
  const double c = std::cos(t);
  return 2.0 / 3.0 + std::sqrt(4.0 - 3.0 * c * c) / 6.0;
}

double ejm_concurrence(double t) {
  const double c = std::cos(t);
  return std::sqrt(1.0 - 0.75 * c * c);
}

double xx_success(double e_c, double e_m) {
  const double m = std::min(e_c, e_m);
  return 1.0 - std::sqrt(std::max(0.0, 1.0 - m * m));
}

double xx_standard_fidelity(double e_c, double e_m) { return (2.0 + e_c * e_m) / 3.0; }

double zx_zz_success(double phi, double t) {
  const double r = zx_zz_rotation(t);
  return 1.0 - std::max(std::cos(2.0 * phi), std::abs(std::cos(2.0 * r)));
}

}  // namespace telerev
