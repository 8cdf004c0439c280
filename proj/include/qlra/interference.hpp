#pragma once

#include "qlra/common.hpp"
#include "qlra/prob_data.hpp"

namespace qlra {

// Interference coefficients lambda[p][l] for outcome l and pair p = {i,j}.
// An entry is defined only when the denominator 2*sqrt(p_a[i]*cond[l][i]*
// p_a[j]*cond[l][j]) does not vanish; see kDenominatorFloor.
struct InterferenceTable {
  Mat3 lambda{};
  std::array<std::array<bool, 3>, 3> defined{};

  double at(int l, int i, int j) const { return lambda[pair_index(i, j)][l]; }
  bool is_defined(int l, int i, int j) const { return defined[pair_index(i, j)][l]; }
};

// lambda_{l,ij} = [(p_a[i]+p_a[j])*pair_cond[l,{i,j}]
//                  - (p_a[i]*cond[l][i] + p_a[j]*cond[l][j])]
//                / (2*sqrt(p_a[i]*cond[l][i]*p_a[j]*cond[l][j])).
// For data of quantum origin this equals the cosine of the sub-amplitude
// phase difference of the pair.
InterferenceTable interference_coefficients(const ProbabilityData& d);

// Passes iff every defined entry satisfies |lambda| <= 1 + tol. |lambda| <= 1
// is necessary for the coefficients to be cosines of phases.
ValidationOutcome boundedness_check(const InterferenceTable& t,
                                    double tol = kDefaultTol);

// Total-probability formula with the interference term, per outcome l:
//   sum_i p_a[i]*cond[l][i]
//   + 2 * sum_{i<j} lambda_{l,ij} * sqrt(p_a[i]*cond[l][i]*p_a[j]*cond[l][j]).
// Equals p_b[l] exactly when the Sorkin residual vanishes. Throws
// InfeasibleError naming the first undefined entry.
Vec3 ftp_with_interference(const ProbabilityData& d, const InterferenceTable& t);

// Second-order (pairwise) interference residual per outcome l:
//   p_b[l] - [p_a1*(pc_12 + pc_13 - c_1) + p_a2*(pc_12 + pc_23 - c_2)
//             + p_a3*(pc_13 + pc_23 - c_3)]
// where pc_ij = pair_cond[l,{i,j}] and c_i = cond[l][i]. Zero for any data
// admitting a pairwise (Born-type) decomposition; third-order interference
// shifts it away from zero.
Vec3 sorkin_residual(const ProbabilityData& d);

// Inverts the lambda definition to recover the pair-conditional block:
//   pair_cond[l,{i,j}] = (p_a[i]*cond[l][i] + p_a[j]*cond[l][j]
//                         + 2*lambda*sqrt(p_a[i]*cond[l][i]*p_a[j]*cond[l][j]))
//                        / (p_a[i]+p_a[j]).
// Throws InfeasibleError if a needed entry is undefined or |lambda| > 1 + tol.
Mat3 triple_prob_from_lambda(const ProbabilityData& d, const InterferenceTable& t,
                             double tol = kDefaultTol);

// Per-pair normalization residual sum_l lambda_{l,ij}*sqrt(cond[l][i]*cond[l][j]).
// Zero iff the pair-conditional slices are normalized (given column-stochastic
// cond); also the real part of the basis-orthogonality condition. Throws
// InfeasibleError if an entry of a pair is undefined.
Vec3 lambda_normalization_residual(const ProbabilityData& d,
                                   const InterferenceTable& t);

}  // namespace qlra
