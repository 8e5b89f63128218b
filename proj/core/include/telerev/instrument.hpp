#pragma once

// Effective quantum instrument of a teleportation round, M_r = E^T W_r^dag, and
// Bob's outcome-conditioned corrections: the optimal heralded reversal
// R_r = sigma_min Q_r Sigma_r^{-1} P_r^dag and the best unitary correction of
// the standard protocol.

#include <string>
#include <vector>

#include "telerev/jointmeas.hpp"
#include "telerev/linalg.hpp"
#include "telerev/qstate.hpp"

namespace telerev {

class Instrument {
 public:
  Instrument(std::size_t d, std::vector<CMatrix> kraus, std::string provenance);

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return kraus_.size(); }
  const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }
  const CMatrix& kraus(std::size_t r) const { return kraus_.at(r); }
  const std::string& provenance() const noexcept { return provenance_; }

 private:
  std::size_t d_;
  std::vector<CMatrix> kraus_;
  std::string provenance_;
};

struct ReversalPlan {
  std::vector<CMatrix> reversers;       // R_r; zero matrix for degenerate outcomes
  std::vector<double> outcome_success;  // (sigma_min^r)^2
  std::vector<bool> degenerate;         // sigma_min^r == 0
};

struct PerformanceReport {
  double p_succ_max = 0.0;
  double f_tele_standard = 0.0;
  double f_tele_mr = 0.0;  // heralded; 1 for pure resources unless every outcome is degenerate
  double leakage_max = 0.0;
  double tradeoff_lhs = 0.0;  // d(d+1) L + (d-1) P, bounded by 2d
};

/// Throws DimensionError when channel and measurement dimensions differ.
Instrument build_instrument(const BipartiteState& channel, const JointMeasurement& jm);

/// max |sum_r M_r^dag M_r - I|.
double completeness_residual(const Instrument& inst);

/// <w_r| (|phi> (x) |Phi>) evaluated on the full d^3 product vector.
CVector apply_kraus_oracle(const BipartiteState& channel, const JointMeasurement& jm,
                           std::span<const Complex> input, std::size_t r);

ReversalPlan optimal_reversal(const Instrument& inst);

/// max over non-degenerate r of |R_r M_r - sigma_min^r I|.
double reversal_residual(const Instrument& inst, const ReversalPlan& plan);

/// sum_r (sigma_min^r)^2.
double success_probability(const ReversalPlan& plan);

/// (d + sum_r (sigma_max^r)^2) / (d (d+1)).
double leakage_max(const Instrument& inst);

/// Alice's best guess for outcome r: top right-singular vector of M_r.
CVector leakage_guess(const Instrument& inst, std::size_t r);

double tradeoff_lhs(const Instrument& inst, const ReversalPlan& plan);

/// Per-outcome unitary corrections of the standard protocol (polar factors).
std::vector<CMatrix> standard_corrections(const Instrument& inst);

/// (d F_ent + 1)/(d + 1), F_ent = sum_r ||M_r||_*^2 / d^2.
double standard_fidelity(const Instrument& inst);

/// Haar-averaged fidelity of the heralded output, conditioned on success.
/// Returns NaN when no outcome is recoverable.
double heralded_fidelity(const Instrument& inst, const ReversalPlan& plan);

PerformanceReport evaluate(const Instrument& inst);

}  // namespace telerev
