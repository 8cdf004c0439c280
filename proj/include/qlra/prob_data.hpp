#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qlra/common.hpp"

namespace qlra {

// Probability data for two trichotomous observables a and b:
//   p_b[l]            marginal of b
//   p_a[i]            marginal of a
//   cond[l][i]        P(b = l | a = i)
//   pair_cond[p][l]   P(b = l | a in {i,j}), pair p = {i,j}, see pair_index()
struct ProbabilityData {
  Vec3 p_b{};
  Vec3 p_a{};
  Mat3 cond{};
  Mat3 pair_cond{};

  double pc(int l, int i, int j) const { return pair_cond[pair_index(i, j)][l]; }
  double& pc(int l, int i, int j) { return pair_cond[pair_index(i, j)][l]; }
};

struct Violation {
  std::string constraint;  // which constraint failed, one-based outcome labels
  double residual = 0.0;
  double tolerance = 0.0;
};

struct ValidationOutcome {
  bool passed = true;
  std::vector<Violation> violations;
};

// Checks normalization of every block (marginals sum to 1, each cond column
// sums to 1 over l, each pair slice sums to 1 over l) and entry ranges.
// Violations are reported as data, not thrown.
ValidationOutcome validate(const ProbabilityData& d, double tol = kDefaultTol);

// Checks that each row of cond sums to 1 over i. Needed for the two-observable
// reconstruction where the transition matrix must be doubly stochastic.
ValidationOutcome check_double_stochastic(const ProbabilityData& d,
                                          double tol = kDefaultTol);

// JSON document I/O. The document shape is
//   {"p_b":[...], "p_a":[...], "cond":[[...]x3], "pair_cond":{"12":[...],"13":[...],"23":[...]}}
// with cond rows indexed by l and pair arrays indexed by l. Unknown keys are
// ignored; missing keys, wrong lengths, non-numbers and entries outside
// [0,1] beyond tol raise SchemaError. save emits a canonical byte-stable
// document (fixed key order, 17 significant digits); load(save(d)) == d.
ProbabilityData load_probability_data(std::istream& in, double tol = kDefaultTol);
void save_probability_data(std::ostream& out, const ProbabilityData& d);

}  // namespace qlra
