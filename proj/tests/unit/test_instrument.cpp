#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "telerev/errors.hpp"
#include "telerev/instrument.hpp"
#include "telerev/montecarlo.hpp"
#include "telerev/theorems.hpp"

using namespace telerev;
using telerev::testing::phase_aligned_diff;
using std::numbers::pi;

namespace {

constexpr Complex kI(0.0, 1.0);

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
  return out;
}

std::vector<std::pair<BipartiteState, JointMeasurement>> family_samples() {
  std::vector<std::pair<BipartiteState, JointMeasurement>> out;
  for (double a : grid(0.05, pi / 4, 7)) {
    for (double t : grid(0.0, pi / 4 - 0.05, 7)) {
      out.emplace_back(schmidt_channel(a, SchmidtBasis::Z), xx_deformed(t));
      out.emplace_back(schmidt_channel(a, SchmidtBasis::Y), zx_zz(t));
    }
  }
  for (double s : grid(0.0, pi / 2, 7)) {
    for (double t : grid(0.0, pi / 2, 7)) out.emplace_back(ejm_channel(s), ejm(t));
  }
  return out;
}

}  // namespace

TEST(BuildInstrument, IdealTeleportationGivesPaulis) {
  const auto inst = build_instrument(max_entangled(2), bell_basis());
  const std::vector<CMatrix> paulis = {
      CMatrix::identity(2), CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}),
      CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}), CMatrix::from_rows({{0.0, -1.0}, {1.0, 0.0}})};
  for (std::size_t r = 0; r < 4; ++r) EXPECT_LT(max_abs_diff(inst.kraus(r), paulis[r] * Complex(0.5)), 1e-15);
}

TEST(BuildInstrument, EjmKrausMatchesClosedForm) {
  for (double t : grid(0.0, pi / 2, 25)) {
    const auto inst = build_instrument(max_entangled(2), ejm(t));
    EXPECT_LT(max_abs_diff(inst.kraus(0), telerev::testing::ejm_kraus0(t)), 1e-15);
  }
}

TEST(BuildInstrument, XxKrausMatchesClosedForm) {
  for (double phi : grid(0.0, pi / 4, 9)) {
    for (double t : grid(0.0, pi / 4, 9)) {
      const double th = pi / 4 - t;
      const CMatrix expected =
          CMatrix::from_rows({{std::cos(phi) * std::sin(th), 0.0}, {0.0, -kI * std::sin(phi) * std::cos(th)}});
      const auto inst = build_instrument(schmidt_channel(phi, SchmidtBasis::Z), xx_deformed(t));
      EXPECT_LT(max_abs_diff(inst.kraus(0), expected), 1e-15);
    }
  }
}

TEST(BuildInstrument, DimensionMismatchThrows) {
  EXPECT_THROW(build_instrument(max_entangled(3), bell_basis()), DimensionError);
}

TEST(KrausOracle, Examples) {
  const CVector zero = {1.0, 0.0};
  const auto out = apply_kraus_oracle(max_entangled(2), bell_basis(), zero, 0);
  EXPECT_NEAR(std::abs(out[0] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[1]), 0.0, 1e-15);
  const CVector wrong = {1.0, 0.0, 0.0};
  EXPECT_THROW(apply_kraus_oracle(max_entangled(2), bell_basis(), wrong, 0), DimensionError);
  EXPECT_THROW(apply_kraus_oracle(max_entangled(3), bell_basis(), wrong, 0), DimensionError);
}

TEST(KrausOracle, AgreesWithBuildInstrument) {
  Rng rng({41, 0});
  const auto e = ejm(0.4);
  const auto inst = build_instrument(ejm_channel(1.1), e);
  for (int k = 0; k < 200; ++k) {
    const CVector phi = haar_state(2, rng);
    const std::size_t r = static_cast<std::size_t>(rng.uniform() * 4);
    const CVector a = apply_kraus_oracle(ejm_channel(1.1), e, phi, r);
    const CVector b = inst.kraus(r) * std::span<const Complex>(phi);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-12);
  }
  for (int k = 0; k < 50; ++k) {
    const auto ch = telerev::testing::random_state(3, rng);
    const auto m = telerev::testing::random_basis(3, rng);
    const auto i3 = build_instrument(ch, m);
    const CVector phi = haar_state(3, rng);
    const std::size_t r = static_cast<std::size_t>(rng.uniform() * 9);
    const CVector a = apply_kraus_oracle(ch, m, phi, r);
    const CVector b = i3.kraus(r) * std::span<const Complex>(phi);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-12);
  }
}

TEST(OptimalReversal, Examples) {
  const auto ideal = optimal_reversal(build_instrument(max_entangled(2), bell_basis()));
  for (double p : ideal.outcome_success) EXPECT_NEAR(p, 0.25, 1e-15);
  EXPECT_NEAR(success_probability(ideal), 1.0, 1e-14);

  for (double t : grid(0.0, pi / 2, 50)) {
    const auto inst = build_instrument(max_entangled(2), ejm(t));
    const auto plan = optimal_reversal(inst);
    for (double p : plan.outcome_success) EXPECT_NEAR(p, (2.0 - std::sqrt(3.0) * std::cos(t)) / 8.0, 1e-14);
    EXPECT_LT(phase_aligned_diff(plan.reversers[0], telerev::testing::ejm_reverser0(t)), 1e-9) << "t=" << t;
  }
}

TEST(OptimalReversal, DegenerateOutcomesAreFlagged) {
  const auto inst = build_instrument(schmidt_channel(0.0, SchmidtBasis::Z), bell_basis());
  const auto plan = optimal_reversal(inst);
  for (std::size_t r = 0; r < 4; ++r) {
    EXPECT_TRUE(plan.degenerate[r]);
    EXPECT_EQ(plan.outcome_success[r], 0.0);
    EXPECT_EQ(frobenius_norm(plan.reversers[r]), 0.0);
  }
  EXPECT_EQ(success_probability(plan), 0.0);
  EXPECT_TRUE(std::isnan(heralded_fidelity(inst, plan)));
}

TEST(Metrics, SuccessProbabilityExamples) {
  EXPECT_NEAR(evaluate(build_instrument(max_entangled(2), ejm(0.0))).p_succ_max, 1.0 - std::sqrt(3.0) / 2, 1e-14);
  EXPECT_NEAR(evaluate(build_instrument(max_entangled(2), ejm(0.0))).p_succ_max, 0.133975, 1e-6);
  const auto r = evaluate(build_instrument(schmidt_channel(pi / 8, SchmidtBasis::Z), xx_deformed(pi / 8)));
  EXPECT_NEAR(r.p_succ_max, 1.0 - std::sqrt(2.0) / 2, 1e-14);
  EXPECT_NEAR(r.p_succ_max, 0.292893, 1e-6);
  EXPECT_LE(r.tradeoff_lhs, 4.0 + 1e-9);
}

TEST(Metrics, LeakageExamples) {
  EXPECT_NEAR(leakage_max(build_instrument(max_entangled(2), bell_basis())), 0.5, 1e-15);
  EXPECT_NEAR(leakage_max(build_instrument(max_entangled(2), ejm(0.0))), 0.5 + std::sqrt(3.0) / 12, 1e-14);
  EXPECT_NEAR(leakage_max(build_instrument(max_entangled(2), ejm(0.0))), 0.644338, 1e-6);
  EXPECT_NEAR(leakage_max(build_instrument(max_entangled(2), ejm(pi / 2))), 0.5, 1e-14);
}

TEST(Metrics, TradeoffExamples) {
  for (double t : grid(0.0, pi / 2, 50)) {
    EXPECT_NEAR(evaluate(build_instrument(max_entangled(2), ejm(t))).tradeoff_lhs, 4.0, 1e-12);
  }
  EXPECT_NEAR(evaluate(build_instrument(max_entangled(2), bell_basis())).tradeoff_lhs, 4.0, 1e-14);
}

TEST(Metrics, StandardFidelityExamples) {
  for (double t : grid(0.0, pi / 4, 30)) {
    EXPECT_NEAR(standard_fidelity(build_instrument(max_entangled(2), xx_deformed(t))), (2 + std::cos(2 * t)) / 3,
                1e-13);
  }
  EXPECT_NEAR(standard_fidelity(build_instrument(max_entangled(2), xx_deformed(pi / 4))), 2.0 / 3, 1e-14);
  for (double t : grid(0.0, pi / 2, 30)) {
    EXPECT_NEAR(standard_fidelity(build_instrument(max_entangled(2), ejm(t))),
                2.0 / 3 + std::sqrt(4 - 3 * std::pow(std::cos(t), 2)) / 6, 1e-13);
  }
  EXPECT_NEAR(standard_fidelity(build_instrument(max_entangled(2), ejm(0.0))), 5.0 / 6, 1e-14);
  for (double phi : grid(0.0, pi / 4, 9)) {
    for (double t : grid(0.0, pi / 4, 9)) {
      EXPECT_NEAR(standard_fidelity(build_instrument(schmidt_channel(phi, SchmidtBasis::Z), xx_deformed(t))),
                  (2 + std::sin(2 * phi) * std::cos(2 * t)) / 3, 1e-13);
    }
  }
}

TEST(InstrumentProperties, CompletenessOnSweepsAndRandomPairs) {
  for (const auto& [ch, m] : family_samples()) EXPECT_LT(completeness_residual(build_instrument(ch, m)), 1e-10);
  Rng rng({42, 0});
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = k % 4 == 3 ? 3 : 2;
    const auto inst = build_instrument(telerev::testing::random_state(d, rng), telerev::testing::random_basis(d, rng));
    EXPECT_LT(completeness_residual(inst), 1e-10);
  }
}

TEST(InstrumentProperties, ReversalIdentityOnHaarInputs) {
  Rng rng({43, 0});
  for (int k = 0; k < 40; ++k) {
    const std::size_t d = 2 + k % 3;
    const auto inst = build_instrument(telerev::testing::random_state(d, rng), telerev::testing::random_basis(d, rng));
    const auto plan = optimal_reversal(inst);
    EXPECT_LT(reversal_residual(inst, plan), 1e-9);
    for (std::size_t r = 0; r < inst.size(); ++r) {
      if (plan.degenerate[r]) continue;
      const CMatrix k_r = plan.reversers[r] * inst.kraus(r);
      const double smin = std::sqrt(plan.outcome_success[r]);
      for (int j = 0; j < 100; ++j) {
        const CVector phi = haar_state(d, rng);
        const CVector out = k_r * std::span<const Complex>(phi);
        double err = 0.0;
        for (std::size_t i = 0; i < d; ++i) err += std::norm(out[i] - smin * phi[i]);
        EXPECT_LT(std::sqrt(err), 1e-9);
      }
    }
  }
}

TEST(InstrumentProperties, HeraldedFidelityIsOne) {
  for (const auto& [ch, m] : family_samples()) {
    const auto inst = build_instrument(ch, m);
    EXPECT_NEAR(heralded_fidelity(inst, optimal_reversal(inst)), 1.0, 1e-9);
  }
  Rng rng({44, 0});
  for (int k = 0; k < 100; ++k) {
    const auto inst = build_instrument(telerev::testing::random_state(3, rng), telerev::testing::random_basis(3, rng));
    EXPECT_NEAR(heralded_fidelity(inst, optimal_reversal(inst)), 1.0, 1e-9);
  }
}

TEST(InstrumentProperties, StandardFidelityAboveClassicalLimit) {
  const auto check = [](const JointMeasurement& m) {
    const double f = standard_fidelity(build_instrument(max_entangled(2), m));
    EXPECT_GE(f, 2.0 / 3 - 1e-9);
    EXPECT_LE(f, 1.0 + 1e-9);
  };
  for (double t : grid(0.0, pi / 4, 50)) check(xx_deformed(t));
  for (double t : grid(0.0, pi / 2, 50)) check(ejm(t));
  for (double t : grid(0.0, zx_zz_t_max() * (1 - 1e-9), 50)) check(zx_zz(t));
  check(bell_basis());
}

TEST(InstrumentProperties, TradeoffBound) {
  for (const auto& [ch, m] : family_samples()) {
    const auto inst = build_instrument(ch, m);
    EXPECT_LE(tradeoff_lhs(inst, optimal_reversal(inst)), 4.0 + 1e-9);
  }
  Rng rng({45, 0});
  for (int k = 0; k < 300; ++k) {
    const std::size_t d = 2 + k % 3;
    const auto inst = build_instrument(telerev::testing::random_state(d, rng), telerev::testing::random_basis(d, rng));
    EXPECT_LE(tradeoff_lhs(inst, optimal_reversal(inst)), 2.0 * d + 1e-9);
  }
  // Saturation for Bell-derived families with a maximally entangled channel.
  for (double t : grid(0.0, pi / 4, 30)) {
    const auto inst = build_instrument(max_entangled(2), xx_deformed(t));
    EXPECT_NEAR(tradeoff_lhs(inst, optimal_reversal(inst)), 4.0, 1e-9);
  }
  for (double t : grid(0.0, zx_zz_t_max() * (1 - 1e-9), 30)) {
    const auto inst = build_instrument(max_entangled(2), zx_zz(t));
    EXPECT_NEAR(tradeoff_lhs(inst, optimal_reversal(inst)), 4.0, 1e-9);
  }
}

TEST(ReverserForms, XxModelIncludingBranchSwitch) {
  std::vector<std::pair<double, double>> points;
  for (double phi : grid(0.05, pi / 4, 15)) {
    for (double t : grid(0.0, pi / 4 - 0.05, 15)) points.emplace_back(phi, t);
    const double t_switch = pi / 4 - phi;  // theta = phi
    for (double dt : {-1e-6, 0.0, 1e-6}) {
      const double t = t_switch + dt;
      if (t >= 0.0 && t < pi / 4 - 1e-3) points.emplace_back(phi, t);
    }
  }
  for (const auto& [phi, t] : points) {
    const auto plan = optimal_reversal(build_instrument(schmidt_channel(phi, SchmidtBasis::Z), xx_deformed(t)));
    const auto expected = telerev::testing::xx_reversers(phi, t);
    for (std::size_t r = 0; r < 4; ++r) {
      EXPECT_LT(phase_aligned_diff(plan.reversers[r], expected[r]), 1e-9) << "phi=" << phi << " t=" << t << " r=" << r;
    }
  }
}

TEST(ReverserForms, ZzModelIncludingBranchSwitch) {
  std::vector<std::pair<double, double>> points;
  for (double phi : grid(0.05, pi / 4, 15)) {
    for (double t : grid(0.0, zx_zz_t_max() - 0.05, 15)) points.emplace_back(phi, t);
    const double t_phi = std::sqrt(std::max(0.0, std::pow(pi / 2 - phi, 2) - pi * pi / 16));
    for (double dt : {-1e-6, 0.0, 1e-6}) points.emplace_back(phi, t_phi + dt);
  }
  for (const auto& [phi, t] : points) {
    if (t < 0.0 || t >= zx_zz_t_max() - 1e-3) continue;
    const auto plan = optimal_reversal(build_instrument(schmidt_channel(phi, SchmidtBasis::Y), zx_zz(t)));
    const auto expected = telerev::testing::zz_reversers(phi, t);
    for (std::size_t r = 0; r < 4; ++r) {
      EXPECT_LT(phase_aligned_diff(plan.reversers[r], expected[r]), 1e-9) << "phi=" << phi << " t=" << t << " r=" << r;
    }
  }
}
