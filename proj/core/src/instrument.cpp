#include "telerev/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "telerev/errors.hpp"

namespace telerev {

Instrument::Instrument(std::size_t d, std::vector<CMatrix> kraus, std::string provenance)
    : d_(d), kraus_(std::move(kraus)), provenance_(std::move(provenance)) {
  if (kraus_.empty()) throw DimensionError("Instrument: no Kraus operators");
  for (const auto& m : kraus_) {
    if (m.rows() != d_ || m.cols() != d_) throw DimensionError("Instrument: Kraus operator is not d x d");
  }
}

Instrument build_instrument(const BipartiteState& channel, const JointMeasurement& jm) {
  if (channel.dim() != jm.dim()) {
    throw DimensionError("build_instrument: channel d=" + std::to_string(channel.dim()) +
                         " but measurement d=" + std::to_string(jm.dim()));
  }
  const CMatrix et = transpose(channel.coeff());
  std::vector<CMatrix> kraus;
  kraus.reserve(jm.size());
  for (const auto& w : jm.elements()) kraus.push_back(et * adjoint(w));
  return Instrument(channel.dim(), std::move(kraus), channel.label() + " + " + jm.label());
}

double completeness_residual(const Instrument& inst) {
  CMatrix sum(inst.dim(), inst.dim());
  for (const auto& m : inst.kraus()) sum += adjoint(m) * m;
  return max_abs_diff(sum, CMatrix::identity(inst.dim()));
}

CVector apply_kraus_oracle(const BipartiteState& channel, const JointMeasurement& jm,
                           std::span<const Complex> input, std::size_t r) {
  const std::size_t d = channel.dim();
  if (jm.dim() != d || input.size() != d) throw DimensionError("apply_kraus_oracle: dimension mismatch");
  const CVector w = [&] {
    const auto e = jm.element(r).entries();
    return CVector(e.begin(), e.end());
  }();
  const CVector channel_amps = channel.amplitudes();

  // |psi> = |phi>_abar (x) |Phi>_ab, index (p * d + i) * d + j
  CVector psi(d * d * d);
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t ij = 0; ij < d * d; ++ij) psi[p * d * d + ij] = input[p] * channel_amps[ij];
  }
  CVector out(d, 0.0);
  for (std::size_t mn = 0; mn < d * d; ++mn) {
    const Complex bra = std::conj(w[mn]);
    for (std::size_t j = 0; j < d; ++j) out[j] += bra * psi[mn * d + j];
  }
  return out;
}

ReversalPlan optimal_reversal(const Instrument& inst) {
  ReversalPlan plan;
  const std::size_t d = inst.dim();
  for (const auto& m : inst.kraus()) {
    const SvdResult s = svd(m);
    const double smin = s.sigma_min();
    if (smin == 0.0) {
      plan.reversers.push_back(CMatrix::zeros(d, d));
      plan.outcome_success.push_back(0.0);
      plan.degenerate.push_back(true);
      continue;
    }
    std::vector<double> inv(d);
    for (std::size_t i = 0; i < d; ++i) inv[i] = smin / s.sigmas[i];
    plan.reversers.push_back(s.right * CMatrix::diagonal(std::span<const double>(inv)) *
                             adjoint(s.left));
    plan.outcome_success.push_back(smin * smin);
    plan.degenerate.push_back(false);
  }
  return plan;
}

double reversal_residual(const Instrument& inst, const ReversalPlan& plan) {
  double worst = 0.0;
  for (std::size_t r = 0; r < inst.size(); ++r) {
    if (plan.degenerate[r]) continue;
    const CMatrix target = CMatrix::identity(inst.dim()) * Complex(std::sqrt(plan.outcome_success[r]));
    worst = std::max(worst, max_abs_diff(plan.reversers[r] * inst.kraus(r), target));
  }
  return worst;
}

double success_probability(const ReversalPlan& plan) {
  double p = 0.0;
  for (double x : plan.outcome_success) p += x;
  return p;
}

double leakage_max(const Instrument& inst) {
  const double d = static_cast<double>(inst.dim());
  double top = 0.0;
  for (const auto& m : inst.kraus()) {
    const double s = svd(m).sigma_max();
    top += s * s;
  }
  return (d + top) / (d * (d + 1.0));
}

CVector leakage_guess(const Instrument& inst, std::size_t r) {
  return svd(inst.kraus(r)).right.column(0);
}

double tradeoff_lhs(const Instrument& inst, const ReversalPlan& plan) {
  const double d = static_cast<double>(inst.dim());
  return d * (d + 1.0) * leakage_max(inst) + (d - 1.0) * success_probability(plan);
}

std::vector<CMatrix> standard_corrections(const Instrument& inst) {
  std::vector<CMatrix> out;
  out.reserve(inst.size());
  for (const auto& m : inst.kraus()) out.push_back(polar_unitary(m));
  return out;
}

double standard_fidelity(const Instrument& inst) {
  const double d = static_cast<double>(inst.dim());
  double sum_nu2 = 0.0;
  for (const auto& m : inst.kraus()) {
    const double nu = nuclear_norm(m);
    sum_nu2 += nu * nu;
  }
  const double f_ent = sum_nu2 / (d * d);
  return (d * f_ent + 1.0) / (d + 1.0);
}

double heralded_fidelity(const Instrument& inst, const ReversalPlan& plan) {
  // For K = R_r M_r: int |<phi|K|phi>|^2 = (|Tr K|^2 + Tr K^dag K) / (d(d+1)),
  // int <phi|K^dag K|phi> = Tr K^dag K / d.
  const double d = static_cast<double>(inst.dim());
  double overlap = 0.0;
  double weight = 0.0;
  for (std::size_t r = 0; r < inst.size(); ++r) {
    if (plan.degenerate[r]) continue;
    const CMatrix k = plan.reversers[r] * inst.kraus(r);
    const double hs = std::pow(frobenius_norm(k), 2);
    overlap += std::norm(trace(k)) + hs;
    weight += hs;
  }
  if (weight == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return overlap / ((d + 1.0) * weight);
}

PerformanceReport evaluate(const Instrument& inst) {
  const ReversalPlan plan = optimal_reversal(inst);
  PerformanceReport rep;
  rep.p_succ_max = success_probability(plan);
  rep.f_tele_standard = standard_fidelity(inst);
  rep.f_tele_mr = heralded_fidelity(inst, plan);
  rep.leakage_max = leakage_max(inst);
  rep.tradeoff_lhs = tradeoff_lhs(inst, plan);
  return rep;
}

}  // namespace telerev
