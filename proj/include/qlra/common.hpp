#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

namespace qlra {

// Default numeric tolerance used by checks and solvers.
inline constexpr double kDefaultTol = 1e-9;

// A product of probabilities below this floor is treated as a vanishing
// denominator: the corresponding interference coefficient stays undefined
// instead of overflowing.
inline constexpr double kDenominatorFloor = 1e-300;

// Three outcomes per observable throughout.
inline constexpr int kOutcomes = 3;
inline constexpr int kNumPairs = 3;

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// Unordered outcome pairs in fixed order: {0,1} -> 0, {0,2} -> 1, {1,2} -> 2.
constexpr int pair_index(int i, int j) { return i + j - 1; }

constexpr std::pair<int, int> pair_members(int p) {
  return p == 0 ? std::pair<int, int>{0, 1}
       : p == 1 ? std::pair<int, int>{0, 2}
                : std::pair<int, int>{1, 2};
}

// One-based labels used in documents and messages.
constexpr const char* pair_label(int p) {
  return p == 0 ? "12" : p == 1 ? "13" : "23";
}

// Input document is malformed: missing keys, wrong shapes, unreadable stream.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Data is well-formed but outside the domain of the requested operation.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qlra
