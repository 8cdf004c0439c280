#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "qlra/phase_solver.hpp"
#include "qlra/prob_data.hpp"

namespace qlra {

// A reconstructed quantum-like representation: state vector psi in the
// b-outcome basis, the a-outcome basis as columns of a_basis, and the
// sub-amplitudes whose row sums give psi.
struct AmplitudeModel {
  Eigen::Vector3cd psi;
  Eigen::Matrix3cd a_basis;          // a_basis(l, i) = sqrt(cond[l][i]) * e^{i phi}
  Eigen::Matrix3cd sub_amplitudes;   // sub(l, i) = sqrt(p_a[i]*cond[l][i]) * e^{i phi}
  Mat3 phases{};                     // phi[l][i] actually used
};

AmplitudeModel build_amplitude(const ProbabilityData& d, const PhaseSolution& s);

// Orthogonality sums of the a-basis columns, one complex number per pair
// {i,j}: sum_m sqrt(cond[m][i]*cond[m][j]) * exp(I*(phi[m][i] - phi[m][j])).
// All zero (with unit column norms) iff a_basis is unitary.
std::array<std::complex<double>, 3> unitarity_residuals(const ProbabilityData& d,
                                                        const PhaseSolution& s);

// Born-rule verification of a model against the data:
//   (a) |psi[l]|^2 == p_b[l]
//   (b) |<a_basis col i, psi>|^2 == p_a[i]
//   (c) |a_basis(l,i)|^2 == cond[l][i]
// single_observable restricts to check (a).
ValidationOutcome born_verify(const AmplitudeModel& m, const ProbabilityData& d,
                              double tol = kDefaultTol,
                              bool single_observable = false);

// Stage-by-stage feasibility record of run_qlra. residuals holds named
// diagnostics in a fixed order (max |lambda|, max |Sorkin residual|, ...).
struct FeasibilityReport {
  bool lambda_bounded = false;
  bool rows_consistent = false;
  bool sorkin_ok = false;
  bool lambda_norm_ok = false;
  bool double_stochastic_ok = false;
  bool unitarity_ok = false;
  bool single_observable = false;
  std::vector<std::pair<std::string, double>> residuals;
  std::optional<PhaseSolution> selected_solution;

  bool feasible() const {
    return lambda_bounded && rows_consistent && sorkin_ok && lambda_norm_ok &&
           double_stochastic_ok && unitarity_ok;
  }
};

struct QlraResult {
  FeasibilityReport report;
  std::vector<AmplitudeModel> models;
  InterferenceTable table;
};

// Full pipeline: interference coefficients -> boundedness -> Sorkin residual
// -> lambda normalization -> double stochasticity -> phase solving (all
// branches) -> unitarity filter (at 10*tol in the max norm of U^H U - I) ->
// model construction with Born verification. The model list is empty iff some
// gate fails. single_observable reconstructs Born for b only: it skips the
// double-stochasticity and unitarity gates and Born checks (b), (c);
// unitarity diagnostics are still reported.
QlraResult run_qlra(const ProbabilityData& d, double tol = kDefaultTol,
                    bool single_observable = false,
                    const Vec3& gauge = {0.0, 0.0, 0.0});

}  // namespace qlra
