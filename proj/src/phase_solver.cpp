#include "qlra/phase_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qlra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double circular_distance(double a, double b) {
  double d = std::abs(a - b);
  d = std::fmod(d, kTwoPi);
  return std::min(d, kTwoPi - d);
}

// arccos with clamping for values that drift past +-1 by rounding
double safe_acos(double v) { return std::acos(std::clamp(v, -1.0, 1.0)); }

void require_cosine(double v, const char* name, double tol) {
  if (std::abs(v) > 1.0 + tol) {
    throw InfeasibleError(std::string(name) + " = " + std::to_string(v) +
                          " cannot be a cosine");
  }
}

struct Cand {
  Vec3 phi{};
  int e_low = +1;   // sign of the lower-index varying offset
  int e_high = +1;  // sign of the highest-index varying offset (branch label)
};

void append_unique(std::vector<Cand>& out, const Cand& c) {
  for (const auto& seen : out) {
    if (circular_distance(seen.phi[0], c.phi[0]) < 1e-12 &&
        circular_distance(seen.phi[1], c.phi[1]) < 1e-12 &&
        circular_distance(seen.phi[2], c.phi[2]) < 1e-12) {
      return;
    }
  }
  out.push_back(c);
}

std::vector<RowSolution> finalize(std::vector<Cand> cands,
                                  const std::array<bool, 3>& flags) {
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.e_high != b.e_high ? a.e_high < b.e_high : a.e_low < b.e_low;
  });
  std::vector<RowSolution> out;
  out.reserve(cands.size());
  for (const auto& c : cands) {
    out.push_back({c.phi, c.e_high, flags});
  }
  return out;
}

// Row solving with a defined-mask: constraints whose interference coefficient
// is undefined are dropped, phases that end up unconstrained are pinned to the
// gauge anchor and flagged.
std::vector<RowSolution> solve_row_masked(const Vec3& lam,
                                          const std::array<bool, 3>& def,
                                          double nu, double tol) {
  const bool d01 = def[0], d02 = def[1], d12 = def[2];
  std::vector<Cand> cands;

  if (d01 && d02 && d12) {
    BranchReport rep = row_consistency(lam[0], lam[1], lam[2], tol);
    if (!rep.consistent) {
      throw InfeasibleError(
          "no sign pairing matches lambda_23 = " + std::to_string(lam[2]) +
          " (candidates " + std::to_string(rep.lhs_candidates[0]) + ", " +
          std::to_string(rep.lhs_candidates[1]) + ")");
    }
    double A = safe_acos(lam[0]);
    double B = safe_acos(lam[1]);
    bool use_plus = rep.plus_matched;
    bool use_minus = rep.minus_matched;
    if (use_plus && use_minus &&
        std::abs(rep.lhs_candidates[0] - rep.lhs_candidates[1]) > 1e-12) {
      // lambda_23 within tol of two distinct candidates: keep the closer one
      // so a row never contributes more than two solutions
      use_plus = std::abs(rep.lhs_candidates[0] - lam[2]) <=
                 std::abs(rep.lhs_candidates[1] - lam[2]);
      use_minus = !use_plus;
    }
    // e2 == e3 realizes the plus candidate, e2 != e3 the minus one
    for (int e3 : {-1, +1}) {
      for (int e2 : {-1, +1}) {
        bool plus_pairing = (e2 == e3);
        if (plus_pairing ? !use_plus : !use_minus) continue;
        append_unique(cands, {{reduce_angle(nu), reduce_angle(nu + e2 * A),
                               reduce_angle(nu + e3 * B)},
                              e2,
                              e3});
      }
    }
    return finalize(std::move(cands), {false, false, false});
  }

  if (d01 && d02) {  // pair {2,3} unconstrained, both offsets free
    require_cosine(lam[0], "lambda_12", tol);
    require_cosine(lam[1], "lambda_13", tol);
    double A = safe_acos(lam[0]), B = safe_acos(lam[1]);
    for (int e3 : {-1, +1})
      for (int e2 : {-1, +1})
        append_unique(cands, {{reduce_angle(nu), reduce_angle(nu + e2 * A),
                               reduce_angle(nu + e3 * B)},
                              e2,
                              e3});
    return finalize(std::move(cands), {false, false, false});
  }
  if (d01 && d12) {  // chain 1-2-3
    require_cosine(lam[0], "lambda_12", tol);
    require_cosine(lam[2], "lambda_23", tol);
    double A = safe_acos(lam[0]), B = safe_acos(lam[2]);
    for (int e3 : {-1, +1})
      for (int e2 : {-1, +1}) {
        double p1 = nu + e2 * A;
        append_unique(cands, {{reduce_angle(nu), reduce_angle(p1),
                               reduce_angle(p1 + e3 * B)},
                              e2,
                              e3});
      }
    return finalize(std::move(cands), {false, false, false});
  }
  if (d02 && d12) {  // chain 1-3-2
    require_cosine(lam[1], "lambda_13", tol);
    require_cosine(lam[2], "lambda_23", tol);
    double A = safe_acos(lam[1]), B = safe_acos(lam[2]);
    for (int e3 : {-1, +1})
      for (int e2 : {-1, +1}) {
        double p2 = nu + e3 * A;
        append_unique(cands, {{reduce_angle(nu), reduce_angle(p2 + e2 * B),
                               reduce_angle(p2)},
                              e2,
                              e3});
      }
    return finalize(std::move(cands), {false, false, false});
  }

  if (d01) {  // third amplitude vanishes
    require_cosine(lam[0], "lambda_12", tol);
    double A = safe_acos(lam[0]);
    for (int e2 : {-1, +1})
      append_unique(cands, {{reduce_angle(nu), reduce_angle(nu + e2 * A),
                             reduce_angle(nu)},
                            e2,
                            e2});
    return finalize(std::move(cands), {false, false, true});
  }
  if (d02) {  // second amplitude vanishes
    require_cosine(lam[1], "lambda_13", tol);
    double B = safe_acos(lam[1]);
    for (int e3 : {-1, +1})
      append_unique(cands, {{reduce_angle(nu), reduce_angle(nu),
                             reduce_angle(nu + e3 * B)},
                            e3,
                            e3});
    return finalize(std::move(cands), {false, true, false});
  }
  if (d12) {  // first amplitude vanishes, anchor moves to the second phase
    require_cosine(lam[2], "lambda_23", tol);
    double B = safe_acos(lam[2]);
    for (int e3 : {-1, +1})
      append_unique(cands, {{reduce_angle(nu), reduce_angle(nu),
                             reduce_angle(nu + e3 * B)},
                            e3,
                            e3});
    return finalize(std::move(cands), {true, false, false});
  }

  // no constraints at all
  append_unique(cands,
                {{reduce_angle(nu), reduce_angle(nu), reduce_angle(nu)}, +1, +1});
  return finalize(std::move(cands), {true, true, true});
}

}  // namespace

BranchReport row_consistency(double l12, double l13, double l23, double tol) {
  require_cosine(l12, "lambda_12", tol);
  require_cosine(l13, "lambda_13", tol);
  BranchReport rep;
  double c12 = std::clamp(l12, -1.0, 1.0);
  double c13 = std::clamp(l13, -1.0, 1.0);
  double rad = std::sqrt(std::max(0.0, 1.0 - c12 * c12) *
                         std::max(0.0, 1.0 - c13 * c13));
  rep.lhs_candidates = {c12 * c13 + rad, c12 * c13 - rad};
  rep.target = l23;
  rep.plus_matched = std::abs(rep.lhs_candidates[0] - l23) <= tol;
  rep.minus_matched = std::abs(rep.lhs_candidates[1] - l23) <= tol;
  rep.consistent = rep.plus_matched || rep.minus_matched;
  return rep;
}

std::vector<RowSolution> solve_row(double l12, double l13, double l23,
                                   double gauge, double tol) {
  return solve_row_masked({l12, l13, l23}, {true, true, true}, gauge, tol);
}

std::vector<PhaseSolution> solve_all(const InterferenceTable& t,
                                     const Vec3& gauge, double tol) {
  std::array<std::vector<RowSolution>, 3> rows;
  std::string bad_rows;
  for (int l = 0; l < 3; ++l) {
    Vec3 lam{t.lambda[0][l], t.lambda[1][l], t.lambda[2][l]};
    std::array<bool, 3> def{t.defined[0][l], t.defined[1][l], t.defined[2][l]};
    try {
      rows[l] = solve_row_masked(lam, def, gauge[l], tol);
    } catch (const InfeasibleError& e) {
      if (!bad_rows.empty()) bad_rows += "; ";
      bad_rows += "row " + std::to_string(l + 1) + ": " + e.what();
    }
  }
  if (!bad_rows.empty()) {
    throw InfeasibleError("phase system has no solution (" + bad_rows + ")");
  }

  std::vector<PhaseSolution> out;
  out.reserve(rows[0].size() * rows[1].size() * rows[2].size());
  for (const auto& s0 : rows[0]) {
    for (const auto& s1 : rows[1]) {
      for (const auto& s2 : rows[2]) {
        PhaseSolution ps;
        ps.gauge = gauge;
        const RowSolution* rs[3] = {&s0, &s1, &s2};
        for (int l = 0; l < 3; ++l) {
          ps.phi[l] = rs[l]->phi;
          ps.branches[l] = rs[l]->branch;
          ps.unconstrained[l] = rs[l]->unconstrained;
        }
        out.push_back(std::move(ps));
      }
    }
  }
  return out;
}

}  // namespace qlra
