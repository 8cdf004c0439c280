#include "qlra/slit_sim.hpp"

#include <random>

namespace qlra {

namespace {

// Independent, reproducible substream per (seed, context).
std::mt19937_64 context_rng(std::uint64_t seed, int context) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(context)};
  return std::mt19937_64(seq);
}

void sample_categorical(const Vec3& prob, std::uint64_t n, std::mt19937_64& rng,
                        std::array<std::uint64_t, 3>& counts) {
  double t1 = prob[0];
  double t2 = prob[0] + prob[1];
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::uint64_t k = 0; k < n; ++k) {
    double u = unif(rng);
    int outcome = u < t1 ? 0 : (u < t2 ? 1 : 2);
    ++counts[outcome];
  }
}

}  // namespace

FrequencyData simulate(const SlitExperimentPlan& plan) {
  if (plan.samples_per_context == 0) {
    throw InfeasibleError("samples_per_context must be positive");
  }
  ProbabilityData exact = generate(plan.instance);

  std::array<Vec3, kNumContexts> dist;
  dist[0] = exact.p_b;
  for (int i = 0; i < kOutcomes; ++i) {
    dist[1 + i] = {exact.cond[0][i], exact.cond[1][i], exact.cond[2][i]};
  }
  for (int p = 0; p < kNumPairs; ++p) {
    dist[4 + p] = exact.pair_cond[p];
  }
  dist[7] = exact.p_a;

  FrequencyData f;
  f.samples_per_context = plan.samples_per_context;
  for (int c = 0; c < kNumContexts; ++c) {
    auto rng = context_rng(plan.seed, c);
    sample_categorical(dist[c], plan.samples_per_context, rng, f.counts[c]);
  }

  const double n = static_cast<double>(plan.samples_per_context);
  auto freq = [&](int c, int l) { return static_cast<double>(f.counts[c][l]) / n; };
  for (int l = 0; l < kOutcomes; ++l) {
    f.frequencies.p_b[l] = freq(0, l);
    f.frequencies.p_a[l] = freq(7, l);
    for (int i = 0; i < kOutcomes; ++i) {
      f.frequencies.cond[l][i] = freq(1 + i, l);
    }
    for (int p = 0; p < kNumPairs; ++p) {
      f.frequencies.pair_cond[p][l] = freq(4 + p, l);
    }
  }
  return f;
}

ProbabilityData to_probability_data(const FrequencyData& f) {
  return f.frequencies;
}

}  // namespace qlra
