#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "doctest.h"
#include "qlra/forward_oracle.hpp"
#include "qlra/qlra_engine.hpp"

using namespace qlra;
using cplx = std::complex<double>;

namespace {

constexpr double kMu = std::numbers::sqrt2 / 2.0;
constexpr double kS = std::numbers::sqrt2 / 2.0;  // 1/sqrt(2)

std::optional<double> residual_named(const FeasibilityReport& rep,
                                     const std::string& name) {
  for (const auto& [n, v] : rep.residuals) {
    if (n == name) return v;
  }
  return std::nullopt;
}

bool psi_matches(const Eigen::Vector3cd& psi, const Eigen::Vector3cd& want,
                 double tol) {
  return (psi - want).cwiseAbs().maxCoeff() <= tol;
}

// the plus-sign member of the reconstructed family for the cyclic table at
// mu = +1/sqrt(2): all imaginary parts taken with the upper sign
Eigen::Vector3cd upper_state_plus_mu() {
  Eigen::Vector3cd v;
  v << cplx(1.0 + kS, 1.0 - kS), cplx(1.0, std::numbers::sqrt2),
      cplx(1.0 - kS, 1.0 + kS);
  return v / 3.0;
}

// ... and for mu = -1/sqrt(2): first and third components trade places
Eigen::Vector3cd upper_state_minus_mu() {
  Eigen::Vector3cd v;
  v << cplx(1.0 - kS, 1.0 + kS), cplx(1.0, std::numbers::sqrt2),
      cplx(1.0 + kS, 1.0 - kS);
  return v / 3.0;
}

ProbabilityData classical_mixture_data() {
  ProbabilityData d;
  d.p_a = {0.2, 0.3, 0.5};
  for (int l = 0; l < 3; ++l) {
    d.p_b[l] = 1.0 / 3.0;
    for (int i = 0; i < 3; ++i) d.cond[l][i] = 1.0 / 3.0;
    for (int p = 0; p < 3; ++p) d.pair_cond[p][l] = 1.0 / 3.0;
  }
  return d;
}

// Exact sub-amplitude matrix whose transition matrix is column- but not
// row-stochastic: the first outcome is reachable only from the first slit.
Eigen::Matrix3cd lopsided_sub_amplitudes() {
  Eigen::Matrix3cd s = Eigen::Matrix3cd::Zero();
  s(0, 0) = std::sqrt(0.2);
  s(1, 1) = std::sqrt(0.4 * 0.7);
  s(2, 1) = cplx(0.0, std::sqrt(0.4 * 0.3));
  s(1, 2) = cplx(0.0, std::sqrt(0.4 * 0.5));
  s(2, 2) = std::sqrt(0.4 * 0.5);
  return s;
}

ProbabilityData data_from_sub_amplitudes(const Eigen::Matrix3cd& s) {
  ProbabilityData d;
  for (int i = 0; i < 3; ++i) d.p_a[i] = s.col(i).squaredNorm();
  for (int l = 0; l < 3; ++l) {
    d.p_b[l] = std::norm(s(l, 0) + s(l, 1) + s(l, 2));
    for (int i = 0; i < 3; ++i) d.cond[l][i] = std::norm(s(l, i)) / d.p_a[i];
  }
  for (int p = 0; p < 3; ++p) {
    auto [i, j] = pair_members(p);
    for (int l = 0; l < 3; ++l) {
      d.pair_cond[p][l] = std::norm(s(l, i) + s(l, j)) / (d.p_a[i] + d.p_a[j]);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("cyclic data, one-observable mode: both closed-form states emerge") {
  SUBCASE("plus mu") {
    QlraResult res = run_qlra(cyclic_interference_data(kMu), 1e-9, true);
    CHECK(res.report.feasible());
    CHECK(res.report.single_observable);
    REQUIRE(res.models.size() == 8);

    // branch product order: all-minus first, all-plus last
    CHECK(psi_matches(res.models.back().psi, upper_state_plus_mu(), 1e-12));
    CHECK(psi_matches(res.models.front().psi,
                      upper_state_plus_mu().conjugate(), 1e-12));

    for (const auto& m : res.models) {
      for (int l = 0; l < 3; ++l) {
        CHECK(std::norm(m.psi(l)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
      }
      CHECK(born_verify(m, cyclic_interference_data(kMu), 1e-9, true).passed);
    }

    // two-observable Born checks cannot hold: the a-basis is not orthogonal
    CHECK_FALSE(
        born_verify(res.models.back(), cyclic_interference_data(kMu), 1e-9, false)
            .passed);

    REQUIRE(res.report.selected_solution.has_value());
    for (int l = 0; l < 3; ++l)
      for (int i = 0; i < 3; ++i)
        CHECK(res.report.selected_solution->phi[l][i] ==
              doctest::Approx(res.models.front().phases[l][i]));
  }
  SUBCASE("minus mu") {
    QlraResult res = run_qlra(cyclic_interference_data(-kMu), 1e-9, true);
    CHECK(res.report.feasible());
    REQUIRE(res.models.size() == 8);
    int found = -1;
    for (int k = 0; k < 8; ++k) {
      if (psi_matches(res.models[k].psi, upper_state_minus_mu(), 1e-12)) found = k;
    }
    REQUIRE(found >= 0);
  }
}

TEST_CASE("cyclic data, two-observable mode fails exactly at unitarity") {
  ProbabilityData d = cyclic_interference_data(kMu);
  QlraResult res = run_qlra(d, 1e-9, false);

  CHECK(res.report.lambda_bounded);
  CHECK(res.report.rows_consistent);
  CHECK(res.report.sorkin_ok);
  CHECK(res.report.lambda_norm_ok);
  CHECK(res.report.double_stochastic_ok);
  CHECK_FALSE(res.report.unitarity_ok);
  CHECK_FALSE(res.report.feasible());
  CHECK(res.models.empty());
  CHECK_FALSE(res.report.selected_solution.has_value());

  // best achievable orthogonality defect over all sign branches is exactly 1/3
  auto best = residual_named(res.report, "unitarity_best");
  REQUIRE(best.has_value());
  CHECK(*best == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("orthogonality sums of the cyclic phase solutions") {
  ProbabilityData d = cyclic_interference_data(kMu);
  auto sols = solve_all(interference_coefficients(d));
  REQUIRE(sols.size() == 8);

  // the all-plus solution: pair {1,2} sums to -i/3, the other pairs spread
  auto r_upper = unitarity_residuals(d, sols.back());
  CHECK(std::abs(r_upper[0] - cplx(0.0, -1.0 / 3.0)) <= 1e-13);
  CHECK(std::abs(r_upper[1]) ==
        doctest::Approx((1.0 + std::numbers::sqrt2) / 3.0).epsilon(1e-13));
  CHECK(std::abs(r_upper[2]) ==
        doctest::Approx((std::numbers::sqrt2 - 1.0) / 3.0).epsilon(1e-13));

  // the branch combination (+,+,-) balances all three pairs at 1/3
  for (const auto& s : sols) {
    if (s.branches == std::array<int, 3>{+1, +1, -1}) {
      auto r = unitarity_residuals(d, s);
      for (const auto& z : r) {
        CHECK(std::abs(z) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("quantum-generated data passes the full two-observable pipeline") {
  QuantumInstance inst = mub_instance(0.7, -0.3);
  ProbabilityData d = generate(inst);
  QlraResult res = run_qlra(d, 1e-9, false);

  CHECK(res.report.feasible());
  REQUIRE(!res.models.empty());
  for (const auto& m : res.models) {
    CHECK(born_verify(m, d, 1e-9, false).passed);
  }

  // the generator's own phase pattern survives as one of the models
  Eigen::Vector3cd proj = inst.u.adjoint() * inst.psi;
  bool generator_found = false;
  for (const auto& m : res.models) {
    double dev = 0.0;
    for (int l = 0; l < 3; ++l) {
      double anchor = std::arg(inst.u(l, 0) * proj(0));
      for (int i = 1; i < 3; ++i) {
        double want = std::arg(inst.u(l, i) * proj(i)) - anchor;
        double got = m.phases[l][i] - m.phases[l][0];
        double diff = std::remainder(want - got, 2.0 * std::numbers::pi);
        dev = std::max(dev, std::abs(diff));
      }
    }
    if (dev <= 1e-9) generator_found = true;
  }
  CHECK(generator_found);
}

TEST_CASE("gauge anchors rotate reconstructed states without touching moduli") {
  ProbabilityData d = generate(mub_instance(0.7, -0.3));
  QlraResult base = run_qlra(d, 1e-9, false);
  QlraResult moved = run_qlra(d, 1e-9, false, {0.5, -0.2, 1.1});
  REQUIRE(base.models.size() == moved.models.size());
  REQUIRE(!base.models.empty());

  Vec3 g{0.5, -0.2, 1.1};
  for (std::size_t k = 0; k < base.models.size(); ++k) {
    for (int l = 0; l < 3; ++l) {
      cplx rotated = base.models[k].psi(l) * std::polar(1.0, g[l]);
      CHECK(std::abs(moved.models[k].psi(l) - rotated) <= 1e-12);
      for (int i = 0; i < 3; ++i) {
        double diff = std::remainder(
            moved.models[k].phases[l][i] - base.models[k].phases[l][i] - g[l],
            2.0 * std::numbers::pi);
        CHECK(std::abs(diff) <= 1e-12);
      }
    }
    CHECK(born_verify(moved.models[k], d, 1e-9, false).passed);
  }
}

TEST_CASE("classical mixture data admits no interference phases") {
  QlraResult res = run_qlra(classical_mixture_data(), 1e-9, false);
  CHECK(res.report.lambda_bounded);
  CHECK(res.report.sorkin_ok);
  CHECK(res.report.lambda_norm_ok);
  CHECK(res.report.double_stochastic_ok);
  CHECK_FALSE(res.report.rows_consistent);   // cos candidates are +-1, data says 0
  CHECK_FALSE(res.report.unitarity_ok);      // nothing survived to filter
  CHECK_FALSE(res.report.feasible());
  CHECK(res.models.empty());
}

TEST_CASE("a marginal perturbation is caught by the interference residual gate") {
  ProbabilityData d = cyclic_interference_data(kMu);
  const double delta = 1e-3;
  d.p_b[0] += delta;
  d.p_b[1] -= delta;

  QlraResult res = run_qlra(d, 1e-9, false);
  CHECK(res.report.lambda_bounded);
  CHECK(res.report.rows_consistent);  // lambda does not read p_b
  CHECK_FALSE(res.report.sorkin_ok);
  CHECK_FALSE(res.report.feasible());
  CHECK(res.models.empty());
  auto sorkin = residual_named(res.report, "sorkin_max_abs");
  REQUIRE(sorkin.has_value());
  CHECK(*sorkin == doctest::Approx(delta).epsilon(1e-12));

  // a hand-built model then reports the mismatch against p_b verbatim
  auto sols = solve_all(res.table);
  AmplitudeModel m = build_amplitude(d, sols.front());
  ValidationOutcome v = born_verify(m, d, 1e-9, true);
  CHECK_FALSE(v.passed);
  bool saw_first = false;
  for (const auto& viol : v.violations) {
    if (viol.constraint == "born_b[1]") {
      saw_first = true;
      CHECK(viol.residual == doctest::Approx(delta).epsilon(1e-12));
    }
  }
  CHECK(saw_first);
}

TEST_CASE("one-observable mode accepts sources with no doubly stochastic matrix") {
  ProbabilityData d = data_from_sub_amplitudes(lopsided_sub_amplitudes());
  REQUIRE(validate(d, 1e-12).passed);
  REQUIRE_FALSE(check_double_stochastic(d, 1e-12).passed);

  QlraResult full = run_qlra(d, 1e-9, false);
  CHECK_FALSE(full.report.double_stochastic_ok);
  CHECK_FALSE(full.report.feasible());
  CHECK(full.models.empty());

  QlraResult single = run_qlra(d, 1e-9, true);
  CHECK(single.report.feasible());
  CHECK(single.report.double_stochastic_ok);  // gate vacuous in this mode
  REQUIRE(!single.models.empty());
  CHECK(single.models.size() == 4);  // one free row, two binary rows
  for (const auto& m : single.models) {
    for (int l = 0; l < 3; ++l) {
      CHECK(std::norm(m.psi(l)) == doctest::Approx(d.p_b[l]).epsilon(1e-12));
    }
  }
}
