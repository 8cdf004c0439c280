#pragma once

#include <cstdint>

#include "qlra/forward_oracle.hpp"
#include "qlra/prob_data.hpp"

namespace qlra {

// Monte Carlo triple-slit experiment plan: one detection context per
// probability block of the data. Context layout:
//   0        all slits open, b-detector          -> p_b
//   1..3     single slit alpha_i open            -> cond column i
//   4..6     slit pair {1,2}, {1,3}, {2,3} open  -> pair_cond slice
//   7        slit monitor (which-slit detector)  -> p_a
inline constexpr int kNumContexts = 8;

struct SlitExperimentPlan {
  QuantumInstance instance;
  std::uint64_t seed = 0;
  std::uint64_t samples_per_context = 0;
};

// Raw counts plus the count/N frequency table in ProbabilityData shape.
struct FrequencyData {
  ProbabilityData frequencies;
  std::uint64_t samples_per_context = 0;
  std::array<std::array<std::uint64_t, 3>, kNumContexts> counts{};
};

// Draws samples_per_context outcomes per context from the exact categorical
// distribution of the instance, using an independent RNG substream per
// (seed, context) pair. Deterministic for a fixed plan. Throws
// InfeasibleError for zero samples and propagates generate() errors
// (degenerate contexts cannot be sampled).
FrequencyData simulate(const SlitExperimentPlan& plan);

// Frequency table as plain probability data (exact count ratios, so each
// context block sums to 1 up to division rounding).
ProbabilityData to_probability_data(const FrequencyData& f);

}  // namespace qlra
