#include "qlra/forward_oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace qlra {

namespace {

using cplx = std::complex<double>;

constexpr double kInvariantTol = 1e-12;

void check_instance(const QuantumInstance& inst) {
  double norm_dev = std::abs(inst.psi.norm() - 1.0);
  if (norm_dev > kInvariantTol) {
    throw InfeasibleError("state is not normalized (|deviation| = " +
                          std::to_string(norm_dev) + ")");
  }
  double unit_dev = (inst.u.adjoint() * inst.u - Eigen::Matrix3cd::Identity())
                        .cwiseAbs()
                        .maxCoeff();
  if (unit_dev > kInvariantTol) {
    throw InfeasibleError("basis is not unitary (max deviation = " +
                          std::to_string(unit_dev) + ")");
  }
}

}  // namespace

ProbabilityData generate(const QuantumInstance& inst) {
  check_instance(inst);
  ProbabilityData d;

  Eigen::Vector3cd proj = inst.u.adjoint() * inst.psi;
  Eigen::Matrix3cd sub;
  for (int l = 0; l < kOutcomes; ++l) {
    d.p_b[l] = std::norm(inst.psi(l));
    for (int i = 0; i < kOutcomes; ++i) {
      d.cond[l][i] = std::norm(inst.u(l, i));
      sub(l, i) = inst.u(l, i) * proj(i);
    }
  }
  for (int i = 0; i < kOutcomes; ++i) d.p_a[i] = std::norm(proj(i));

  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = pair_members(p);
    double den = d.p_a[i] + d.p_a[j];
    if (den < kDenominatorFloor) {
      throw InfeasibleError("pair context {" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) +
                            "} is degenerate: p_a[" + std::to_string(i + 1) +
                            "] + p_a[" + std::to_string(j + 1) + "] vanishes");
    }
    for (int l = 0; l < kOutcomes; ++l) {
      d.pair_cond[p][l] = std::norm(sub(l, i) + sub(l, j)) / den;
    }
  }
  return d;
}

QuantumInstance mub_instance(double gamma1, double gamma2) {
  const double s = 1.0 / std::sqrt(3.0);
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const cplx wb = std::conj(w);

  QuantumInstance inst;
  inst.u.col(0) << s, s * w, s;
  inst.u.col(1) << s, s * wb, s * wb;
  inst.u.col(2) << s, s, s * w;
  inst.psi << s, s * std::polar(1.0, gamma1), s * std::polar(1.0, gamma2);
  return inst;
}

Vec3 mub_marginals_closed_form(double gamma1, double gamma2) {
  const double r3 = std::sqrt(3.0);
  double c1 = std::cos(gamma1), s1 = std::sin(gamma1);
  double c2 = std::cos(gamma2), s2 = std::sin(gamma2);
  double cd = std::cos(gamma1 - gamma2), sd = std::sin(gamma1 - gamma2);
  return {
      (3.0 - c1 + r3 * s1 + 2.0 * c2 - cd + r3 * sd) / 9.0,
      (3.0 - c1 - r3 * s1 - c2 - r3 * s2 + 2.0 * cd) / 9.0,
      (3.0 + 2.0 * c1 - c2 + r3 * s2 - cd - r3 * sd) / 9.0,
  };
}

std::array<double, 2> ansatz_mu_roots(double x, double y) {
  double d = x - y;
  double s = std::sqrt(d * d + 8.0);
  return {(-d + s) / 4.0, (-d - s) / 4.0};
}

std::array<bool, 2> ansatz_mu_admissible(double x, double y) {
  return {y - x < 1.0, x - y < 1.0};
}

AnsatzFamily ansatz_family(const AnsatzParams& p) {
  if (!(p.x > 0.0) || !(p.y > 0.0)) {
    throw SchemaError("ansatz parameters x, y must be positive");
  }
  if (p.lambda12_sign != +1 && p.lambda12_sign != -1) {
    throw SchemaError("lambda12_sign must be +1 or -1");
  }
  if (p.lambda23_sign && *p.lambda23_sign != +1 && *p.lambda23_sign != -1) {
    throw SchemaError("lambda23_sign must be +1 or -1");
  }
  const double x = p.x, y = p.y, v = p.v;
  if (std::abs(v) > 1.0) {
    throw InfeasibleError("lambda_13 = " + std::to_string(v) +
                          " cannot be a cosine");
  }

  double rad = (v * v - 1.0) * (v * v * x * x - y * y - 1.0 - 2.0 * y * v);
  if (rad < 0.0) {
    throw InfeasibleError("no real lambda_12 branch: radicand = " +
                          std::to_string(rad));
  }
  double den = y * y + 1.0 + 2.0 * y * v;
  if (den < kDenominatorFloor) {
    throw InfeasibleError("lambda_12 quadratic degenerates (y + v and 1 - v^2 "
                          "both vanish)");
  }
  double l12 = (-x * v * (y + v) + p.lambda12_sign * std::sqrt(rad)) / den;
  double l23 = -(y * l12 + x * v);
  if (std::abs(l12) > 1.0 + 1e-12) {
    throw InfeasibleError("lambda_12 = " + std::to_string(l12) +
                          " cannot be a cosine");
  }
  if (std::abs(l23) > 1.0 + 1e-12) {
    throw InfeasibleError("lambda_23 = " + std::to_string(l23) +
                          " cannot be a cosine");
  }

  // which sign of sqrt((1-l12^2)(1-l13^2)) the derived lambda_23 realizes
  double cross = std::sqrt(std::max(0.0, 1.0 - l12 * l12) *
                           std::max(0.0, 1.0 - v * v));
  double base = l12 * v;
  int derived = std::abs(base + cross - l23) <= std::abs(base - cross - l23)
                    ? +1
                    : -1;
  if (p.lambda23_sign && *p.lambda23_sign != derived) {
    throw InfeasibleError(
        "requested lambda_23 branch sign " + std::to_string(*p.lambda23_sign) +
        " contradicts the value forced by the normalization constraint");
  }

  AnsatzFamily fam;
  fam.lambda23_sign = derived;

  double D = x * x * y * y + y * y + x * x;
  fam.data.p_a = {x * x * y * y / D, y * y / D, x * x / D};
  const double third = 1.0 / 3.0;
  for (int l = 0; l < kOutcomes; ++l) {
    fam.data.p_b[l] = third;
    for (int i = 0; i < kOutcomes; ++i) fam.data.cond[l][i] = third;
  }
  Vec3 lam{l12, v, l23};
  Vec3 scale{x + 1.0 / x, y + 1.0 / y, x / y + y / x};
  for (int pr = 0; pr < kNumPairs; ++pr) {
    double pc = third + 2.0 * lam[pr] / (3.0 * scale[pr]);
    for (int l = 0; l < kOutcomes; ++l) {
      fam.data.pair_cond[pr][l] = pc;
      fam.table.lambda[pr][l] = lam[pr];
      fam.table.defined[pr][l] = true;
    }
  }
  return fam;
}

ProbabilityData cyclic_interference_data(double mu) {
  if (std::abs(mu) > 1.0) {
    throw InfeasibleError("mu = " + std::to_string(mu) +
                          " cannot be a cosine");
  }
  const double third = 1.0 / 3.0;
  // lambda[p][l] with the (mu, 0, -mu) cycle down the rows
  const Mat3 lambda = {{{mu, -mu, 0.0}, {0.0, mu, -mu}, {-mu, 0.0, mu}}};
  ProbabilityData d;
  for (int l = 0; l < kOutcomes; ++l) {
    d.p_b[l] = third;
    d.p_a[l] = third;
    for (int i = 0; i < kOutcomes; ++i) d.cond[l][i] = third;
  }
  for (int p = 0; p < kNumPairs; ++p) {
    for (int l = 0; l < kOutcomes; ++l) {
      d.pair_cond[p][l] = third + lambda[p][l] / 3.0;
    }
  }
  return d;
}

Eigen::Vector3cd random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector3cd z;
  do {
    for (int l = 0; l < kOutcomes; ++l) {
      double re = gauss(rng);
      double im = gauss(rng);
      z(l) = cplx(re, im);
    }
  } while (z.norm() < 1e-6);
  return z / z.norm();
}

Eigen::Matrix3cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3cd g;
  for (int l = 0; l < kOutcomes; ++l) {
    for (int i = 0; i < kOutcomes; ++i) {
      double re = gauss(rng);
      double im = gauss(rng);
      g(l, i) = cplx(re, im);
    }
  }
  // modified Gram-Schmidt on columns
  for (int i = 0; i < kOutcomes; ++i) {
    for (int k = 0; k < i; ++k) {
      g.col(i) -= g.col(k).dot(g.col(i)) * g.col(k);
    }
    double n = g.col(i).norm();
    if (n < 1e-9) return random_unitary(rng);  // astronomical, but be safe
    g.col(i) /= n;
  }
  return g;
}

QuantumInstance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  QuantumInstance inst;
  inst.psi = random_state(rng);
  inst.u = random_unitary(rng);
  return inst;
}

}  // namespace qlra
