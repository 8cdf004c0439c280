#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>

#include "qlra/interference.hpp"
#include "qlra/prob_data.hpp"

namespace qlra {

// A concrete quantum source: state psi (in the b-outcome basis) and the
// a-outcome basis as columns of u. Invariants: ||psi|| = 1 and
// ||u^H u - I||_max <= 1e-12.
struct QuantumInstance {
  Eigen::Vector3cd psi;
  Eigen::Matrix3cd u;
};

// Exact forward map from an instance to probability data:
//   p_b[l] = |psi[l]|^2,  p_a[i] = |<col_i(u), psi>|^2,  cond[l][i] = |u(l,i)|^2,
//   pair_cond[l,{i,j}] = |s_li + s_lj|^2 / (p_a[i] + p_a[j])
// with sub-amplitudes s_li = u(l,i) * <col_i(u), psi>; inner products
// conjugate the first argument. Output always passes validate and
// check_double_stochastic. Throws InfeasibleError on instance-invariant
// violations and on degenerate pair contexts (p_a[i] + p_a[j] below the
// denominator floor).
ProbabilityData generate(const QuantumInstance& inst);

// Mutually unbiased bases family: u columns (1,w,1)/sqrt3, (1,w*,w*)/sqrt3,
// (1,1,w)/sqrt3 with w = exp(2*pi*I/3), and psi = (1, e^{I g1}, e^{I g2})/sqrt3.
// Every cond entry is 1/3 and every p_b entry is 1/3.
QuantumInstance mub_instance(double gamma1, double gamma2);

// Closed-form marginals p_a of the family above; cross-checks generate().
Vec3 mub_marginals_closed_form(double gamma1, double gamma2);

// Roots of 2*mu^2 + (x - y)*mu - 1 = 0 for the uniform-data interference
// ansatz, plus root first: mu = ((y - x) +- sqrt((x - y)^2 + 8)) / 4.
// Root product is -1/2.
std::array<double, 2> ansatz_mu_roots(double x, double y);

// Which roots give |lambda| < 1: both iff |x - y| < 1, else only the plus
// root when x - y > 1, only the minus root when y - x > 1.
std::array<bool, 2> ansatz_mu_admissible(double x, double y);

// Parameters of the one-observable interference family on uniform data:
// x = sqrt(p_a1/p_a2), y = sqrt(p_a1/p_a3), v = lambda_13, and the branch
// sign of the lambda_12 quadratic. lambda_23 is derived from the Born
// constraint y*lambda_12 + x*lambda_13 + lambda_23 = 0; an explicit
// lambda23_sign is checked against it.
struct AnsatzParams {
  double x = 1.0;
  double y = 1.0;
  double v = 0.0;
  int lambda12_sign = +1;
  std::optional<int> lambda23_sign;
};

// The emitted table repeats one (lambda_12, lambda_13, lambda_23) triple on
// all three rows; data has uniform cond and p_b, p_a = (x^2 y^2, y^2, x^2)
// normalized, and pair_cond offset from 1/3 by 2*lambda/(3*(x + 1/x)) and the
// analogous factors. Note the pair slices are intentionally not normalized
// (the family only enforces the b-observable Born constraint), so data does
// not promise to pass validate. Throws InfeasibleError when the radicand is
// negative, |v| > 1, a produced |lambda| exceeds 1, or lambda23_sign
// contradicts the Born constraint.
struct AnsatzFamily {
  InterferenceTable table;
  ProbabilityData data;
  int lambda23_sign = +1;  // derived branch of the row-consistency equation
};

AnsatzFamily ansatz_family(const AnsatzParams& p);

// Uniform-data family (all marginals and conditionals 1/3) whose interference
// table cycles the triple (mu, 0, -mu) across rows:
//   row 1: lambda_12 = mu,  lambda_13 = 0,   lambda_23 = -mu
//   row 2: lambda_12 = -mu, lambda_13 = mu,  lambda_23 = 0
//   row 3: lambda_12 = 0,   lambda_13 = -mu, lambda_23 = mu
// realized by pair_cond[p][l] = 1/3 + lambda[p][l]/3. Every row satisfies the
// cosine-consistency equation iff 2*mu^2 - 1 = 0 (the x = y = 1 case of
// ansatz_mu_roots), so mu = +-1/sqrt(2) are the interesting members. All
// blocks are normalized; the Sorkin residual vanishes identically.
ProbabilityData cyclic_interference_data(double mu);

// Haar-ish random instances: psi from normalized independent complex
// Gaussians, u from Gram-Schmidt on a complex Gaussian matrix.
Eigen::Vector3cd random_state(std::mt19937_64& rng);
Eigen::Matrix3cd random_unitary(std::mt19937_64& rng);
QuantumInstance random_instance(std::uint64_t seed);

}  // namespace qlra
