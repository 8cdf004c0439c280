#pragma once

#include <vector>

#include "qlra/common.hpp"
#include "qlra/interference.hpp"

namespace qlra {

// Consistency of one row system
//   cos(phi_1 - phi_2) = l12, cos(phi_1 - phi_3) = l13, cos(phi_2 - phi_3) = l23.
// Eliminating phases gives the two candidates
//   l12*l13 +- sqrt((1 - l12^2)(1 - l13^2));
// the row is solvable iff l23 matches one of them within tol.
struct BranchReport {
  int row = -1;  // 0-based outcome index; -1 when not tied to a table row
  bool consistent = false;
  std::array<double, 2> lhs_candidates{};  // {plus, minus}
  double target = 0.0;
  bool plus_matched = false;
  bool minus_matched = false;
};

// Throws InfeasibleError if |l12| or |l13| exceeds 1 + tol.
BranchReport row_consistency(double l12, double l13, double l23,
                             double tol = kDefaultTol);

// One solution of a row system: phi[0] is the gauge anchor nu, phi[1] =
// nu + e2*arccos(l12), phi[2] = nu + e3*arccos(l13). branch is the sign of
// the highest-index varying offset. Angles reduced to [0, 2*pi).
struct RowSolution {
  Vec3 phi{};
  int branch = +1;
  std::array<bool, 3> unconstrained{};  // zero-amplitude entries pinned to nu
};

// All distinct solutions of one row (up to two; one when the offsets collapse,
// e.g. an arccos of +-1). Ordered by branch sign. Throws InfeasibleError when
// no sign pairing reproduces l23 within tol.
std::vector<RowSolution> solve_row(double l12, double l13, double l23,
                                   double gauge, double tol = kDefaultTol);

// Phase matrix for all three rows. branches holds the per-row branch sign.
// unconstrained marks phases that were free (zero amplitude) and were pinned
// to the row's gauge anchor.
struct PhaseSolution {
  Mat3 phi{};  // phi[l][i], radians in [0, 2*pi)
  Vec3 gauge{};
  std::array<int, 3> branches{};
  std::array<std::array<bool, 3>, 3> unconstrained{};
};

// Cartesian product of per-row solutions, deterministic order (row solutions
// ordered by branch sign, last row varying fastest). Rows with undefined
// lambda entries lose the corresponding constraints: zero-amplitude phases
// are pinned to the gauge anchor and flagged. Throws InfeasibleError listing
// (one-based) inconsistent rows if any row has no solution.
std::vector<PhaseSolution> solve_all(const InterferenceTable& t,
                                     const Vec3& gauge = {0.0, 0.0, 0.0},
                                     double tol = kDefaultTol);

}  // namespace qlra
