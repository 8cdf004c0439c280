#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "doctest.h"
#include "qlra/forward_oracle.hpp"
#include "qlra/interference.hpp"
#include "qlra/phase_solver.hpp"

using namespace qlra;

namespace {

constexpr double kThird = 1.0 / 3.0;

double max_block_dev_from_third(const ProbabilityData& d) {
  double dev = 0.0;
  for (int l = 0; l < 3; ++l) {
    dev = std::max(dev, std::abs(d.p_b[l] - kThird));
    for (int i = 0; i < 3; ++i) dev = std::max(dev, std::abs(d.cond[l][i] - kThird));
  }
  return dev;
}

}  // namespace

TEST_CASE("mutually unbiased family: flat blocks and closed-form marginals") {
  QuantumInstance inst = mub_instance(0.7, -0.3);
  ProbabilityData d = generate(inst);

  CHECK(max_block_dev_from_third(d) <= 1e-14);

  Vec3 closed = mub_marginals_closed_form(0.7, -0.3);
  for (int i = 0; i < 3; ++i) {
    CHECK(d.p_a[i] == doctest::Approx(closed[i]).epsilon(1e-12));
  }

  CHECK(validate(d, 1e-12).passed);
  CHECK(check_double_stochastic(d, 1e-12).passed);

  Vec3 s = sorkin_residual(d);
  for (double r : s) CHECK(std::abs(r) <= 1e-14);
}

TEST_CASE("mutually unbiased closed-form marginals are a distribution") {
  Vec3 flat = mub_marginals_closed_form(0.0, 0.0);
  for (double v : flat) CHECK(v == doctest::Approx(kThird).epsilon(1e-15));

  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> ang(-8.0, 8.0);
  for (int k = 0; k < 20; ++k) {
    double g1 = ang(rng), g2 = ang(rng);
    Vec3 m = mub_marginals_closed_form(g1, g2);
    CHECK(m[0] + m[1] + m[2] == doctest::Approx(1.0).epsilon(1e-14));
    for (double v : m) CHECK(v >= -1e-15);
  }
}

TEST_CASE("generate rejects broken instances and degenerate pair contexts") {
  SUBCASE("eigenstate of the measured basis starves a pair context") {
    QuantumInstance inst;
    inst.psi << 1.0, 0.0, 0.0;
    inst.u = Eigen::Matrix3cd::Identity();
    try {
      generate(inst);
      FAIL("expected a degenerate pair context");
    } catch (const InfeasibleError& e) {
      CHECK(std::string(e.what()).find("pair context {2,3}") != std::string::npos);
    }
  }
  SUBCASE("unnormalized state") {
    QuantumInstance inst;
    inst.psi << 1.0, 1.0, 0.0;
    inst.u = Eigen::Matrix3cd::Identity();
    CHECK_THROWS_AS(generate(inst), InfeasibleError);
  }
  SUBCASE("non-unitary basis") {
    QuantumInstance inst;
    inst.psi << 1.0, 0.0, 0.0;
    inst.u = Eigen::Matrix3cd::Identity();
    inst.u(0, 1) = 0.5;
    CHECK_THROWS_AS(generate(inst), InfeasibleError);
  }
}

TEST_CASE("near-eigenstate in the identity basis pins the pair conditionals") {
  const double eps = 1e-6;
  QuantumInstance inst;
  inst.psi << std::sqrt(1.0 - 2.0 * eps * eps), eps, eps;
  inst.u = Eigen::Matrix3cd::Identity();
  ProbabilityData d = generate(inst);

  for (int l = 0; l < 3; ++l) {
    for (int i = 0; i < 3; ++i) {
      CHECK(d.cond[l][i] == doctest::Approx(l == i ? 1.0 : 0.0).epsilon(1e-14));
    }
  }
  // the dominant amplitude owns its pair contexts...
  CHECK(d.pc(0, 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.pc(0, 0, 2) == doctest::Approx(1.0).epsilon(1e-9));
  // ...while the two small ones split theirs evenly
  CHECK(d.pc(1, 1, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.pc(2, 1, 2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("random instances are deterministic in the seed") {
  QuantumInstance a = random_instance(42);
  QuantumInstance b = random_instance(42);
  QuantumInstance c = random_instance(43);
  CHECK((a.psi - b.psi).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.u - b.u).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.psi - c.psi).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("random instances generate normalized, bounded probability data") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CAPTURE(seed);
    QuantumInstance inst = random_instance(seed);
    CHECK(std::abs(inst.psi.norm() - 1.0) <= 1e-12);
    CHECK((inst.u.adjoint() * inst.u - Eigen::Matrix3cd::Identity())
              .cwiseAbs()
              .maxCoeff() <= 1e-12);

    ProbabilityData d = generate(inst);
    CHECK(validate(d, 1e-12).passed);
    CHECK(check_double_stochastic(d, 1e-12).passed);

    InterferenceTable t = interference_coefficients(d);
    for (int p = 0; p < 3; ++p) {
      for (int l = 0; l < 3; ++l) {
        if (t.defined[p][l]) CHECK(std::abs(t.lambda[p][l]) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("quadratic roots of the uniform-data consistency equation") {
  SUBCASE("equal weights give the half-square-root pair") {
    auto r = ansatz_mu_roots(1.7, 1.7);
    CHECK(r[0] == doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(-std::numbers::sqrt2 / 2.0).epsilon(1e-15));
  }
  SUBCASE("unit gap gives the rational pair") {
    auto r = ansatz_mu_roots(2.0, 1.0);
    CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(-1.0).epsilon(1e-15));
  }
  SUBCASE("random weights: residual and Vieta product") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> pos(0.05, 10.0);
    for (int k = 0; k < 50; ++k) {
      double x = pos(rng), y = pos(rng);
      CAPTURE(x);
      CAPTURE(y);
      auto r = ansatz_mu_roots(x, y);
      for (double mu : r) {
        CHECK(std::abs(2.0 * mu * mu + (x - y) * mu - 1.0) <= 1e-12);
      }
      CHECK(r[0] * r[1] == doctest::Approx(-0.5).epsilon(1e-13));
      CHECK(r[0] > r[1]);
    }
  }
  SUBCASE("admissibility of each root as a cosine") {
    CHECK(ansatz_mu_admissible(3.0, 1.0) == std::array<bool, 2>{true, false});
    CHECK(ansatz_mu_admissible(1.0, 3.0) == std::array<bool, 2>{false, true});
    CHECK(ansatz_mu_admissible(1.0, 1.0) == std::array<bool, 2>{true, true});
    // boundary: x - y = 1 puts the minus root exactly at -1
    CHECK(ansatz_mu_admissible(2.0, 1.0) == std::array<bool, 2>{true, false});
  }
}

TEST_CASE("interference ansatz: equal-weight member reproduces the cyclic triple") {
  AnsatzParams p;
  p.x = 1.0;
  p.y = 1.0;
  p.v = -std::numbers::sqrt2 / 2.0;
  p.lambda12_sign = +1;
  AnsatzFamily fam = ansatz_family(p);

  const double mu = std::numbers::sqrt2 / 2.0;
  for (int l = 0; l < 3; ++l) {
    CHECK(fam.table.at(l, 0, 1) == doctest::Approx(mu).epsilon(1e-12));
    CHECK(fam.table.at(l, 0, 2) == doctest::Approx(-mu).epsilon(1e-12));
    CHECK(fam.table.at(l, 1, 2) == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(fam.lambda23_sign == +1);

  // p_a = (x^2 y^2, y^2, x^2) normalized collapses to uniform here
  for (double w : fam.data.p_a) CHECK(w == doctest::Approx(kThird).epsilon(1e-15));
}

TEST_CASE("interference ansatz: emitted data reproduces the emitted table") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> weight(0.2, 3.0);
  std::uniform_real_distribution<double> cosv(-0.95, 0.95);
  int accepted = 0;
  for (int k = 0; k < 200 && accepted < 50; ++k) {
    AnsatzParams p;
    p.x = weight(rng);
    p.y = weight(rng);
    p.v = cosv(rng);
    p.lambda12_sign = (k % 2 == 0) ? +1 : -1;
    AnsatzFamily fam;
    try {
      fam = ansatz_family(p);
    } catch (const InfeasibleError&) {
      continue;  // negative radicand or out-of-range branch for this draw
    }
    ++accepted;
    CAPTURE(p.x);
    CAPTURE(p.y);
    CAPTURE(p.v);

    // the defining Born constraint ties the row into a consistent system
    BranchReport rep = row_consistency(fam.table.at(0, 0, 1), fam.table.at(0, 0, 2),
                                       fam.table.at(0, 1, 2), 1e-9);
    CHECK(rep.consistent);

    InterferenceTable back = interference_coefficients(fam.data);
    for (int pp = 0; pp < 3; ++pp) {
      for (int l = 0; l < 3; ++l) {
        CHECK(back.defined[pp][l]);
        CHECK(back.lambda[pp][l] ==
              doctest::Approx(fam.table.lambda[pp][l]).epsilon(1e-12));
      }
    }
  }
  CHECK(accepted >= 50);
}

TEST_CASE("interference ansatz rejects out-of-domain parameters") {
  AnsatzParams p;
  SUBCASE("lambda_13 beyond the cosine range") {
    p.v = 1.2;
    CHECK_THROWS_AS(ansatz_family(p), InfeasibleError);
  }
  SUBCASE("negative radicand") {
    p.x = 2.0;
    p.y = 0.5;
    p.v = -0.9;
    try {
      ansatz_family(p);
      FAIL("expected no real branch");
    } catch (const InfeasibleError& e) {
      CHECK(std::string(e.what()).find("no real lambda_12 branch") !=
            std::string::npos);
    }
  }
  SUBCASE("contradictory lambda_23 branch request") {
    p.x = 1.0;
    p.y = 1.0;
    p.v = -std::numbers::sqrt2 / 2.0;
    p.lambda23_sign = -1;  // the Born constraint forces the plus branch here
    try {
      ansatz_family(p);
      FAIL("expected a branch contradiction");
    } catch (const InfeasibleError& e) {
      CHECK(std::string(e.what()).find("contradicts") != std::string::npos);
    }
  }
  SUBCASE("malformed parameters are schema errors") {
    p.x = -1.0;
    CHECK_THROWS_AS(ansatz_family(p), SchemaError);
    p.x = 1.0;
    p.lambda12_sign = 2;
    CHECK_THROWS_AS(ansatz_family(p), SchemaError);
  }
}

TEST_CASE("cyclic uniform family: normalized data realizing the shifted triple") {
  const double mu = 0.6;
  ProbabilityData d = cyclic_interference_data(mu);
  CHECK(validate(d, 1e-12).passed);
  CHECK(check_double_stochastic(d, 1e-12).passed);

  InterferenceTable t = interference_coefficients(d);
  const double expect[3][3] = {{mu, -mu, 0.0}, {0.0, mu, -mu}, {-mu, 0.0, mu}};
  for (int p = 0; p < 3; ++p) {
    for (int l = 0; l < 3; ++l) {
      CHECK(t.defined[p][l]);
      CHECK(t.lambda[p][l] == doctest::Approx(expect[p][l]).epsilon(1e-13));
    }
  }

  Vec3 s = sorkin_residual(d);
  for (double r : s) CHECK(std::abs(r) <= 1e-15);

  CHECK_THROWS_AS(cyclic_interference_data(1.5), InfeasibleError);
}
