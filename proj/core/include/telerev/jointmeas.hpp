#pragma once

// Rank-one joint measurements on Alice's input and her half of the channel.
// Element r is the coefficient matrix W_r of |w_r> = sum_mn (W_r)_mn |m>|n>,
// where m indexes the input qubit (qudit) and n the channel half.

#include <string>
#include <vector>

#include "telerev/linalg.hpp"
#include "telerev/qstate.hpp"

namespace telerev {

class JointMeasurement {
 public:
  /// Checks shapes only (d*d square elements of size d); orthonormality is
  /// reported by validate() so that corrupted bases can still be inspected.
  JointMeasurement(std::size_t d, std::vector<CMatrix> elements, std::string label);

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<CMatrix>& elements() const noexcept { return elements_; }
  const CMatrix& element(std::size_t r) const;
  const std::string& label() const noexcept { return label_; }

 private:
  std::size_t d_;
  std::vector<CMatrix> elements_;
  std::string label_;
};

struct BasisReport {
  double ortho_residual = 0.0;         // max |Tr(W_r^dag W_s) - delta_rs|
  double completeness_residual = 0.0;  // max |sum_r vec(W_r) vec(W_r)^dag - I|
};

/// Ideal Bell basis, W_r = sigma_r / sqrt2 with sigma = (I, X, Z, XZ).
JointMeasurement bell_basis();

/// Bell basis rotated by a residual XX interaction; theta = pi/4 - t, 0 <= t <= pi/4.
JointMeasurement xx_deformed(double t);

/// Elegant joint measurement, 0 <= t <= pi/2 (t = pi/2 is locally a Bell basis).
JointMeasurement ejm(double t);

/// ZX-based Bell measurement with a coherent ZZ error, 0 <= t < sqrt(3) pi / 4.
JointMeasurement zx_zz(double t);

/// R(t) = sqrt(pi^2 + 16 t^2) / 4 of the ZX+ZZ model.
double zx_zz_rotation(double t);
/// alpha(t), beta(t) of the ZX+ZZ deformed basis.
Complex zx_zz_alpha(double t);
Complex zx_zz_beta(double t);
/// Exclusive upper end of the ZX+ZZ parameter range.
double zx_zz_t_max();

/// Never throws; see BasisReport.
BasisReport validate(const JointMeasurement& jm);

/// G-concurrence of |w_r> (2|det W_r| for qubits).
double element_entanglement(const JointMeasurement& jm, std::size_t r);
/// Bloch point of B_r = W_r^dag W_r; qubits only.
BlochPoint element_bloch(const JointMeasurement& jm, std::size_t r);

}  // namespace telerev
