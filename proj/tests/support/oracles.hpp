#pragma once

// Test-side oracles: independent reference computations that do not go
// through the library code they check.

#include <complex>
#include <vector>

#include "telerev/jointmeas.hpp"
#include "telerev/linalg.hpp"
#include "telerev/montecarlo.hpp"
#include "telerev/qstate.hpp"

namespace telerev::testing {

/// Singular values (descending) from Eigen's JacobiSVD.
std::vector<double> eigen_sigmas(const CMatrix& m);

/// max |a * phase - b| with the phase fixed by b's largest-modulus entry.
double phase_aligned_diff(const CMatrix& a, const CMatrix& b);

/// Random normalised d x d coefficient matrix (complex Gaussian entries).
BipartiteState random_state(std::size_t d, Rng& rng);

/// Random orthonormal basis of d x d elements: columns of a Haar unitary on
/// C^{d^2} reshaped row-major.
JointMeasurement random_basis(std::size_t d, Rng& rng);

/// Random element with Tr(W^dag W) = 1 (a single basis element).
CMatrix random_element(std::size_t d, Rng& rng);

/// Reshape column r of u (n^2 x n^2) into an n x n matrix, row-major.
CMatrix reshape_column(const CMatrix& u, std::size_t r, std::size_t n);

// Closed-form operators quoted with the model definitions.

/// EJM Kraus M_0 for the maximally entangled channel:
/// (1/(2 sqrt2)) [[e^{i pi/4}, p+*], [p-*, e^{3 i pi/4}]].
CMatrix ejm_kraus0(double t);
/// EJM reverser R_0 = kappa [[e^{-i pi/4}, p+*], [p-*, e^{-3 i pi/4}]],
/// kappa = 4 sqrt2 lambda1 / (3 - e^{2it}).
CMatrix ejm_reverser0(double t);
/// XX model with Schmidt channel (phi, Z): the four reversers, branch on theta vs phi.
std::vector<CMatrix> xx_reversers(double phi, double t);
/// ZX+ZZ model with Schmidt channel (phi, Y): the four reversers, branch at t_phi.
std::vector<CMatrix> zz_reversers(double phi, double t);

}  // namespace telerev::testing
