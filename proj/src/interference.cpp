#include "qlra/interference.hpp"

#include <cmath>
#include <string>

namespace qlra {

namespace {

std::string entry_name(int l, int p) {
  return "lambda[" + std::to_string(l + 1) + ",{" + pair_label(p) + "}]";
}

}  // namespace

InterferenceTable interference_coefficients(const ProbabilityData& d) {
  InterferenceTable t;
  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = pair_members(p);
    for (int l = 0; l < 3; ++l) {
      double wi = d.p_a[i] * d.cond[l][i];
      double wj = d.p_a[j] * d.cond[l][j];
      if (wi * wj < kDenominatorFloor) {
        t.defined[p][l] = false;
        t.lambda[p][l] = 0.0;
        continue;
      }
      double num = (d.p_a[i] + d.p_a[j]) * d.pair_cond[p][l] - (wi + wj);
      t.lambda[p][l] = num / (2.0 * std::sqrt(wi * wj));
      t.defined[p][l] = true;
    }
  }
  return t;
}

ValidationOutcome boundedness_check(const InterferenceTable& t, double tol) {
  ValidationOutcome out;
  for (int p = 0; p < kNumPairs; ++p) {
    for (int l = 0; l < 3; ++l) {
      if (!t.defined[p][l]) continue;
      double excess = std::abs(t.lambda[p][l]) - 1.0;
      if (excess > tol) {
        out.violations.push_back({"|" + entry_name(l, p) + "| <= 1", excess, tol});
      }
    }
  }
  out.passed = out.violations.empty();
  return out;
}

Vec3 ftp_with_interference(const ProbabilityData& d, const InterferenceTable& t) {
  Vec3 out{};
  for (int l = 0; l < 3; ++l) {
    double classical = 0.0;
    for (int i = 0; i < 3; ++i) classical += d.p_a[i] * d.cond[l][i];
    double cross = 0.0;
    for (int p = 0; p < kNumPairs; ++p) {
      if (!t.defined[p][l]) {
        throw InfeasibleError(entry_name(l, p) +
                              " is undefined (vanishing amplitude)");
      }
      auto [i, j] = pair_members(p);
      cross += t.lambda[p][l] *
               std::sqrt(d.p_a[i] * d.cond[l][i] * d.p_a[j] * d.cond[l][j]);
    }
    out[l] = classical + 2.0 * cross;
  }
  return out;
}

Vec3 sorkin_residual(const ProbabilityData& d) {
  Vec3 out{};
  for (int l = 0; l < 3; ++l) {
    double pc12 = d.pair_cond[pair_index(0, 1)][l];
    double pc13 = d.pair_cond[pair_index(0, 2)][l];
    double pc23 = d.pair_cond[pair_index(1, 2)][l];
    double rhs = d.p_a[0] * (pc12 + pc13 - d.cond[l][0]) +
                 d.p_a[1] * (pc12 + pc23 - d.cond[l][1]) +
                 d.p_a[2] * (pc13 + pc23 - d.cond[l][2]);
    out[l] = d.p_b[l] - rhs;
  }
  return out;
}

Mat3 triple_prob_from_lambda(const ProbabilityData& d, const InterferenceTable& t,
                             double tol) {
  Mat3 out{};
  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = pair_members(p);
    double den = d.p_a[i] + d.p_a[j];
    for (int l = 0; l < 3; ++l) {
      if (!t.defined[p][l]) {
        throw InfeasibleError(entry_name(l, p) +
                              " is undefined (vanishing amplitude)");
      }
      double lam = t.lambda[p][l];
      if (std::abs(lam) > 1.0 + tol) {
        throw InfeasibleError("|" + entry_name(l, p) + "| = " +
                              std::to_string(std::abs(lam)) + " exceeds 1");
      }
      if (den < kDenominatorFloor) {
        throw InfeasibleError(std::string("pair {") + pair_label(p) +
                              "} has vanishing marginal mass");
      }
      double wi = d.p_a[i] * d.cond[l][i];
      double wj = d.p_a[j] * d.cond[l][j];
      out[p][l] = (wi + wj + 2.0 * lam * std::sqrt(wi * wj)) / den;
    }
  }
  return out;
}

Vec3 lambda_normalization_residual(const ProbabilityData& d,
                                   const InterferenceTable& t) {
  Vec3 out{};
  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = pair_members(p);
    double s = 0.0;
    for (int l = 0; l < 3; ++l) {
      if (!t.defined[p][l]) {
        throw InfeasibleError(entry_name(l, p) +
                              " is undefined (vanishing amplitude)");
      }
      s += t.lambda[p][l] * std::sqrt(d.cond[l][i] * d.cond[l][j]);
    }
    out[p] = s;
  }
  return out;
}

}  // namespace qlra
