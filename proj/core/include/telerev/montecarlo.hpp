#pragma once

// Haar-random inputs and sampled estimates of the teleportation figures of
// merit. Every estimator is a pure function of (instrument, n, RngSpec): the
// same spec replays bit-for-bit, and shards with distinct stream indices are
// independent.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "telerev/instrument.hpp"
#include "telerev/linalg.hpp"

namespace telerev {

struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Seeded engine with portable uniform and normal draws.
class Rng {
 public:
  explicit Rng(const RngSpec& spec);

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();
  /// Standard normal (Box-Muller, cached second value).
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

/// |mean - target| <= k * std_error (+1e-12 for rounding when std_error is 0).
bool within_sigma(const McEstimate& est, double target, double k = 5.0);

struct PerformanceSample {
  McEstimate p_succ;
  std::optional<McEstimate> f_cond;  // absent if no trial succeeded
  std::vector<McEstimate> outcome_success;  // per outcome: P(outcome r and herald)
};

/// Unit vector with 2d iid normal real/imaginary parts, normalised.
CVector haar_state(std::size_t d, Rng& rng);
/// Haar-random unitary from Gram-Schmidt on a complex Ginibre matrix.
CMatrix haar_unitary(std::size_t n, Rng& rng);

/// Simulates n heralded rounds: draw |phi>, sample the outcome r, herald
/// success with probability ||R_r M_r phi||^2 / p_r, score the output fidelity.
PerformanceSample estimate_performance(const Instrument& inst, const ReversalPlan& plan, std::size_t n,
                                       const RngSpec& rng, std::size_t shards = 1);

/// Alice's estimation fidelity with the top-eigenvector guess.
McEstimate estimate_leakage(const Instrument& inst, std::size_t n, const RngSpec& rng, std::size_t shards = 1);

/// Standard protocol with the polar-factor unitary corrections.
McEstimate estimate_standard_fidelity(const Instrument& inst, std::size_t n, const RngSpec& rng,
                                      std::size_t shards = 1);

}  // namespace telerev
