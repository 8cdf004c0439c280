#include "qlra/qlra_engine.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "qlra/interference.hpp"

namespace qlra {

namespace {

using cplx = std::complex<double>;

// Worst absolute Born deviation of a model against the data. born_verify only
// records deviations beyond tol; the pipeline wants the actual number.
double born_max_deviation(const AmplitudeModel& m, const ProbabilityData& d,
                          bool single_observable) {
  double worst = 0.0;
  for (int l = 0; l < kOutcomes; ++l) {
    worst = std::max(worst, std::abs(std::norm(m.psi(l)) - d.p_b[l]));
  }
  if (!single_observable) {
    Eigen::Vector3cd proj = m.a_basis.adjoint() * m.psi;
    for (int i = 0; i < kOutcomes; ++i) {
      worst = std::max(worst, std::abs(std::norm(proj(i)) - d.p_a[i]));
      for (int l = 0; l < kOutcomes; ++l) {
        worst = std::max(worst,
                         std::abs(std::norm(m.a_basis(l, i)) - d.cond[l][i]));
      }
    }
  }
  return worst;
}

double unitarity_deviation(const Eigen::Matrix3cd& u) {
  return (u.adjoint() * u - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace

AmplitudeModel build_amplitude(const ProbabilityData& d, const PhaseSolution& s) {
  AmplitudeModel m;
  m.phases = s.phi;
  for (int l = 0; l < kOutcomes; ++l) {
    cplx row_sum = 0.0;
    for (int i = 0; i < kOutcomes; ++i) {
      cplx phase = std::polar(1.0, s.phi[l][i]);
      m.a_basis(l, i) = std::sqrt(d.cond[l][i]) * phase;
      m.sub_amplitudes(l, i) = std::sqrt(d.p_a[i] * d.cond[l][i]) * phase;
      row_sum += m.sub_amplitudes(l, i);
    }
    m.psi(l) = row_sum;
  }
  return m;
}

std::array<cplx, 3> unitarity_residuals(const ProbabilityData& d,
                                        const PhaseSolution& s) {
  std::array<cplx, 3> out{};
  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = pair_members(p);
    cplx sum = 0.0;
    for (int m = 0; m < kOutcomes; ++m) {
      sum += std::sqrt(d.cond[m][i] * d.cond[m][j]) *
             std::polar(1.0, s.phi[m][i] - s.phi[m][j]);
    }
    out[p] = sum;
  }
  return out;
}

ValidationOutcome born_verify(const AmplitudeModel& m, const ProbabilityData& d,
                              double tol, bool single_observable) {
  ValidationOutcome out;
  auto record = [&](const std::string& what, double dev) {
    if (dev > tol) {
      out.passed = false;
      out.violations.push_back({what, dev, tol});
    }
  };
  for (int l = 0; l < kOutcomes; ++l) {
    record("born_b[" + std::to_string(l + 1) + "]",
           std::abs(std::norm(m.psi(l)) - d.p_b[l]));
  }
  if (!single_observable) {
    Eigen::Vector3cd proj = m.a_basis.adjoint() * m.psi;
    for (int i = 0; i < kOutcomes; ++i) {
      record("born_a[" + std::to_string(i + 1) + "]",
             std::abs(std::norm(proj(i)) - d.p_a[i]));
    }
    for (int l = 0; l < kOutcomes; ++l) {
      for (int i = 0; i < kOutcomes; ++i) {
        record("born_cond[" + std::to_string(l + 1) + "][" +
                   std::to_string(i + 1) + "]",
               std::abs(std::norm(m.a_basis(l, i)) - d.cond[l][i]));
      }
    }
  }
  return out;
}

QlraResult run_qlra(const ProbabilityData& d, double tol, bool single_observable,
                    const Vec3& gauge) {
  QlraResult res;
  FeasibilityReport& rep = res.report;
  rep.single_observable = single_observable;

  res.table = interference_coefficients(d);

  double max_abs_lambda = 0.0;
  for (int p = 0; p < kNumPairs; ++p) {
    for (int l = 0; l < kOutcomes; ++l) {
      if (res.table.defined[p][l]) {
        max_abs_lambda = std::max(max_abs_lambda, std::abs(res.table.lambda[p][l]));
      }
    }
  }
  rep.residuals.emplace_back("max_abs_lambda", max_abs_lambda);
  rep.lambda_bounded = max_abs_lambda <= 1.0 + tol;

  Vec3 sorkin = sorkin_residual(d);
  double sorkin_max = 0.0;
  for (double r : sorkin) sorkin_max = std::max(sorkin_max, std::abs(r));
  rep.residuals.emplace_back("sorkin_max_abs", sorkin_max);
  rep.sorkin_ok = sorkin_max <= tol;

  // Normalization of the pair slices, expressed through lambda. Pairs with an
  // undefined coefficient drop out: the corresponding cross term has a
  // vanishing weight, so the constraint is vacuous there.
  double norm_max = 0.0;
  for (int p = 0; p < kNumPairs; ++p) {
    if (!(res.table.defined[p][0] && res.table.defined[p][1] &&
          res.table.defined[p][2])) {
      continue;
    }
    auto [i, j] = pair_members(p);
    double sum = 0.0;
    for (int l = 0; l < kOutcomes; ++l) {
      sum += res.table.lambda[p][l] * std::sqrt(d.cond[l][i] * d.cond[l][j]);
    }
    norm_max = std::max(norm_max, std::abs(sum));
  }
  rep.residuals.emplace_back("lambda_norm_max_abs", norm_max);
  rep.lambda_norm_ok = norm_max <= tol;

  double ds_dev = 0.0;
  for (int l = 0; l < kOutcomes; ++l) {
    double row = d.cond[l][0] + d.cond[l][1] + d.cond[l][2];
    ds_dev = std::max(ds_dev, std::abs(row - 1.0));
  }
  rep.residuals.emplace_back("double_stochastic_max_dev", ds_dev);
  rep.double_stochastic_ok = single_observable ? true : ds_dev <= tol;

  std::vector<PhaseSolution> solutions;
  try {
    solutions = solve_all(res.table, gauge, tol);
    rep.rows_consistent = true;
  } catch (const InfeasibleError&) {
    rep.rows_consistent = false;
  }

  std::vector<PhaseSolution> candidates;
  if (!solutions.empty()) {
    double best_unit = std::numeric_limits<double>::infinity();
    for (const auto& sol : solutions) {
      Eigen::Matrix3cd u;
      for (int l = 0; l < kOutcomes; ++l) {
        for (int i = 0; i < kOutcomes; ++i) {
          u(l, i) = std::sqrt(d.cond[l][i]) * std::polar(1.0, sol.phi[l][i]);
        }
      }
      double dev = unitarity_deviation(u);
      best_unit = std::min(best_unit, dev);
      if (single_observable || dev <= 10.0 * tol) {
        candidates.push_back(sol);
      }
    }
    rep.residuals.emplace_back("unitarity_best", best_unit);
    rep.unitarity_ok = single_observable || !candidates.empty();
  } else {
    rep.unitarity_ok = single_observable;
  }

  if (!candidates.empty()) {
    double born_best = std::numeric_limits<double>::infinity();
    rep.selected_solution = candidates.front();
    for (const auto& sol : candidates) {
      AmplitudeModel model = build_amplitude(d, sol);
      born_best = std::min(born_best,
                           born_max_deviation(model, d, single_observable));
      res.models.push_back(std::move(model));
    }
    rep.residuals.emplace_back("born_best_max_abs", born_best);
  }

  if (!rep.feasible()) {
    res.models.clear();
    rep.selected_solution.reset();
  }
  return res;
}

}  // namespace qlra
