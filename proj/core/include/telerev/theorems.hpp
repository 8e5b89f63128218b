#pragma once

// Closed forms for the success probability of faithful teleportation: the
// exact qubit expression in terms of channel entanglement, measurement
// entanglement and Bloch alignment, and the G-concurrence bounds for a
// maximally entangled qudit channel.

#include <optional>
#include <vector>

#include "telerev/jointmeas.hpp"
#include "telerev/qstate.hpp"

namespace telerev {

struct QubitOutcomeInputs {
  double e_c = 1.0;               // channel concurrence
  double e_r = 1.0;               // measurement-element concurrence
  std::optional<double> x_r;      // Bloch alignment u . n_r; absent when a radius vanishes
  // sqrt(1 - E^2), i.e. the Bloch radii. Recomputing them from E loses about
  // half the digits near E = 1, so pass them when they are known directly.
  std::optional<double> bar_c;
  std::optional<double> bar_r;
};

struct Thm2Bounds {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> t_values;
};

/// sigma_min^2 of M_r from (E_c, E_r, x_r). Result in [0, 1/4].
/// Throws DomainError for out-of-range inputs.
double qubit_outcome_success(const QubitOutcomeInputs& in);

/// u . n_r, or nullopt when either Bloch radius is below kDirectionFloor.
std::optional<double> alignment_x(const BipartiteState& channel, const JointMeasurement& jm, std::size_t r);

/// Sum of qubit_outcome_success over all four outcomes.
double qubit_total_success(const BipartiteState& channel, const JointMeasurement& jm);

/// g(t) = t ((1 - t)/(d - 1))^{d-1}.
double g_of_t(std::size_t d, double t);

/// Root of g(t) = (e_r/d)^d on [0, 1/d] by bisection.
double solve_tr(std::size_t d, double e_r);

/// Trigonometric root for d = 3.
double tr_closed_form_d3(double e_r);

/// lower = (1/d) sum t_r, upper = (1/d^2) sum e_r. Needs d^2 entries in [0,1].
Thm2Bounds thm2_bounds(std::size_t d, const std::vector<double>& e_list);

/// Singular values of W_r attaining the lower bound: d-1 copies of
/// sqrt((1-t_r)/(d-1)) followed by sqrt(t_r).
std::vector<double> saturating_spectrum(std::size_t d, double e_r);

/// Full orthonormal basis {X^a diag(v_k)} whose d^2 elements all have the
/// saturating spectrum for e_r, built from the unitary V = I + gamma J.
/// Exists only when d sqrt(x) <= 2 with x = (1 - t_r)/(d - 1).
std::optional<JointMeasurement> saturating_basis(std::size_t d, double e_r);

// Closed forms for the standard channel/measurement families.

/// EJM-aligned channel family: 1 - [sqrt((1-X)^2 - (E_c E_M)^2) + sqrt((3+X)^2 - 9 (E_c E_M)^2)]/4.
double ejm_aligned_success(double e_c, double e_m);
/// Maximally entangled channel with EJM(t): 1 - (sqrt3/2) cos t.
double ejm_success(double t);
/// (1/2) + (sqrt3/12) cos t.
double ejm_leakage(double t);
/// 2/3 + sqrt(4 - 3 cos^2 t)/6.
double ejm_standard_fidelity(double t);
/// sqrt(1 - (3/4) cos^2 t).
double ejm_concurrence(double t);
/// XX model: 1 - sqrt(1 - min(E_c, E_M)^2).
double xx_success(double e_c, double e_m);
/// (2 + E_c E_M)/3 for the XX model with Schmidt channel.
double xx_standard_fidelity(double e_c, double e_m);
/// ZX+ZZ model: 1 - max(cos 2phi, |cos 2R(t)|).
double zx_zz_success(double phi, double t);

}  // namespace telerev
