#include "telerev/montecarlo.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <numbers>

#include "telerev/errors.hpp"

namespace telerev {

namespace {

// Running mean and sum of squared deviations (Welford), mergeable in order.
struct Accumulator {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }

  McEstimate estimate() const {
    McEstimate e;
    e.n = n;
    e.mean = mean;
    if (n > 1) {
      const double var = m2 / static_cast<double>(n - 1);
      e.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return e;
  }
};

// Shard k of a run uses stream (spec.stream, k) folded into one 64-bit value.
RngSpec shard_spec(const RngSpec& spec, std::size_t shard, std::size_t shards) {
  if (shards == 1) return spec;
  return RngSpec{spec.seed, spec.stream * 0x9E3779B97F4A7C15ULL + shard + 1};
}

std::size_t shard_size(std::size_t n, std::size_t shard, std::size_t shards) {
  return n / shards + (shard < n % shards ? 1 : 0);
}

template <typename State>
std::vector<State> run_shards(std::size_t n, const RngSpec& spec, std::size_t shards,
                              const std::function<State(std::size_t, Rng&)>& body) {
  if (n == 0) throw DomainError("Monte Carlo: sample count must be >= 1");
  if (shards == 0) shards = 1;
  std::vector<std::future<State>> jobs;
  for (std::size_t k = 0; k < shards; ++k) {
    jobs.push_back(std::async(shards == 1 ? std::launch::deferred : std::launch::async, [&, k] {
      Rng rng(shard_spec(spec, k, shards));
      return body(shard_size(n, k, shards), rng);
    }));
  }
  std::vector<State> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

double fidelity(std::span<const Complex> input, std::span<const Complex> unnormalised) {
  const double nrm2 = std::pow(norm(unnormalised), 2);
  return std::norm(inner(input, unnormalised)) / nrm2;
}

}  // namespace

Rng::Rng(const RngSpec& spec) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(spec.stream), static_cast<std::uint32_t>(spec.stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

bool within_sigma(const McEstimate& est, double target, double k) {
  return std::abs(est.mean - target) <= k * est.std_error + 1e-12;
}

CVector haar_state(std::size_t d, Rng& rng) {
  CVector v(d);
  for (auto& z : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = Complex(re, im);
  }
  const double nrm = norm(v);
  for (auto& z : v) z /= nrm;
  return v;
}

CMatrix haar_unitary(std::size_t n, Rng& rng) {
  CMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    CVector col(n);
    for (auto& z : col) {
      const double re = rng.normal();
      const double im = rng.normal();
      z = Complex(re, im);
    }
    // Modified Gram-Schmidt, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const CVector prev = u.column(i);
        const Complex proj = inner(prev, col);
        for (std::size_t k = 0; k < n; ++k) col[k] -= proj * prev[k];
      }
    }
    const double nrm = norm(col);
    for (auto& z : col) z /= nrm;
    u.set_column(j, col);
  }
  return u;
}

PerformanceSample estimate_performance(const Instrument& inst, const ReversalPlan& plan, std::size_t n,
                                       const RngSpec& spec, std::size_t shards) {
  struct State {
    Accumulator succ;
    Accumulator fid;
    std::vector<Accumulator> per_outcome;
  };
  const std::size_t outcomes = inst.size();
  const auto body = [&](std::size_t count, Rng& rng) {
    State st;
    st.per_outcome.resize(outcomes);
    std::vector<double> probs(outcomes);
    std::vector<CVector> branches(outcomes);
    for (std::size_t i = 0; i < count; ++i) {
      const CVector phi = haar_state(inst.dim(), rng);
      for (std::size_t r = 0; r < outcomes; ++r) {
        branches[r] = inst.kraus(r) * std::span<const Complex>(phi);
        probs[r] = std::pow(norm(branches[r]), 2);
      }
      // Outcome r with probability p_r = ||M_r phi||^2 (they sum to 1).
      const double u = rng.uniform();
      std::size_t r = 0;
      double acc = probs[0];
      while (u >= acc && r + 1 < outcomes) acc += probs[++r];

      bool success = false;
      CVector out;
      if (!plan.degenerate[r] && probs[r] > 0.0) {
        out = plan.reversers[r] * std::span<const Complex>(branches[r]);
        const double herald = std::pow(norm(out), 2) / probs[r];
        success = rng.uniform() < herald;
      } else {
        rng.uniform();  // keep the draw count per trial fixed
      }
      st.succ.add(success ? 1.0 : 0.0);
      for (std::size_t k = 0; k < outcomes; ++k) st.per_outcome[k].add(success && k == r ? 1.0 : 0.0);
      if (success) st.fid.add(fidelity(phi, out));
    }
    return st;
  };
  const auto parts = run_shards<State>(n, spec, shards, body);
  State total;
  total.per_outcome.resize(outcomes);
  for (const auto& p : parts) {
    total.succ.merge(p.succ);
    total.fid.merge(p.fid);
    for (std::size_t k = 0; k < outcomes; ++k) total.per_outcome[k].merge(p.per_outcome[k]);
  }
  PerformanceSample res;
  res.p_succ = total.succ.estimate();
  if (total.fid.n > 0) res.f_cond = total.fid.estimate();
  for (const auto& a : total.per_outcome) res.outcome_success.push_back(a.estimate());
  return res;
}

McEstimate estimate_leakage(const Instrument& inst, std::size_t n, const RngSpec& spec, std::size_t shards) {
  std::vector<CVector> guesses;
  for (std::size_t r = 0; r < inst.size(); ++r) guesses.push_back(leakage_guess(inst, r));
  const auto body = [&](std::size_t count, Rng& rng) {
    Accumulator acc;
    for (std::size_t i = 0; i < count; ++i) {
      const CVector phi = haar_state(inst.dim(), rng);
      double score = 0.0;
      for (std::size_t r = 0; r < inst.size(); ++r) {
        const double p = std::pow(norm(inst.kraus(r) * std::span<const Complex>(phi)), 2);
        score += p * std::norm(inner(guesses[r], phi));
      }
      acc.add(score);
    }
    return acc;
  };
  Accumulator total;
  for (const auto& p : run_shards<Accumulator>(n, spec, shards, body)) total.merge(p);
  return total.estimate();
}

McEstimate estimate_standard_fidelity(const Instrument& inst, std::size_t n, const RngSpec& spec,
                                      std::size_t shards) {
  std::vector<CMatrix> corrected;
  const auto unitaries = standard_corrections(inst);
  for (std::size_t r = 0; r < inst.size(); ++r) corrected.push_back(unitaries[r] * inst.kraus(r));
  const auto body = [&](std::size_t count, Rng& rng) {
    Accumulator acc;
    for (std::size_t i = 0; i < count; ++i) {
      const CVector phi = haar_state(inst.dim(), rng);
      // sum_r p_r F_r = sum_r |<phi| U_r M_r |phi>|^2
      double score = 0.0;
      for (const auto& k : corrected) score += std::norm(inner(phi, k * std::span<const Complex>(phi)));
      acc.add(score);
    }
    return acc;
  };
  Accumulator total;
  for (const auto& p : run_shards<Accumulator>(n, spec, shards, body)) total.merge(p);
  return total.estimate();
}

}  // namespace telerev
