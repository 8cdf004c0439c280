#include "qlra/prob_data.hpp"

#include <cmath>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "qlra/json_io.hpp"

namespace qlra {

namespace {

double outside_unit_interval(double v) {
  if (v < 0.0) return -v;
  if (v > 1.0) return v - 1.0;
  return 0.0;
}

void check_range(ValidationOutcome& out, const std::string& what, double v,
                 double tol) {
  double r = outside_unit_interval(v);
  if (r > tol) out.violations.push_back({what + " in [0,1]", r, tol});
}

void check_sum(ValidationOutcome& out, const std::string& what, double sum,
               double tol) {
  double r = std::abs(sum - 1.0);
  if (r > tol) out.violations.push_back({what + " = 1", r, tol});
}

}  // namespace

ValidationOutcome validate(const ProbabilityData& d, double tol) {
  ValidationOutcome out;
  double sb = 0.0, sa = 0.0;
  for (int l = 0; l < 3; ++l) {
    check_range(out, "p_b[" + std::to_string(l + 1) + "]", d.p_b[l], tol);
    check_range(out, "p_a[" + std::to_string(l + 1) + "]", d.p_a[l], tol);
    sb += d.p_b[l];
    sa += d.p_a[l];
  }
  check_sum(out, "sum p_b", sb, tol);
  check_sum(out, "sum p_a", sa, tol);

  for (int i = 0; i < 3; ++i) {
    double col = 0.0;
    for (int l = 0; l < 3; ++l) {
      check_range(out,
                  "cond[" + std::to_string(l + 1) + "][" + std::to_string(i + 1) + "]",
                  d.cond[l][i], tol);
      col += d.cond[l][i];
    }
    check_sum(out, "sum_l cond[l][" + std::to_string(i + 1) + "]", col, tol);
  }

  for (int p = 0; p < kNumPairs; ++p) {
    double s = 0.0;
    for (int l = 0; l < 3; ++l) {
      check_range(out,
                  std::string("pair_cond[") + std::to_string(l + 1) + ",{" +
                      pair_label(p) + "}]",
                  d.pair_cond[p][l], tol);
      s += d.pair_cond[p][l];
    }
    check_sum(out, std::string("sum_l pair_cond[l,{") + pair_label(p) + "}]", s,
              tol);
  }

  out.passed = out.violations.empty();
  return out;
}

ValidationOutcome check_double_stochastic(const ProbabilityData& d, double tol) {
  ValidationOutcome out;
  for (int l = 0; l < 3; ++l) {
    double row = d.cond[l][0] + d.cond[l][1] + d.cond[l][2];
    check_sum(out, "sum_i cond[" + std::to_string(l + 1) + "][i]", row, tol);
  }
  out.passed = out.violations.empty();
  return out;
}

namespace {

using nlohmann::json;

double require_prob(const json& j, const std::string& where, double tol) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) {
    throw SchemaError(where + ": value outside [0,1]");
  }
  return v;
}

Vec3 require_vec3(const json& j, const std::string& key, double tol) {
  if (!j.contains(key)) throw SchemaError("missing key \"" + key + "\"");
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != 3) {
    throw SchemaError("\"" + key + "\": expected an array of 3 numbers");
  }
  Vec3 v{};
  for (int k = 0; k < 3; ++k) {
    v[k] = require_prob(a[k], "\"" + key + "\"[" + std::to_string(k) + "]", tol);
  }
  return v;
}

}  // namespace

ProbabilityData load_probability_data(std::istream& in, double tol) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("top-level JSON value must be an object");

  ProbabilityData d;
  d.p_b = require_vec3(j, "p_b", tol);
  d.p_a = require_vec3(j, "p_a", tol);

  if (!j.contains("cond")) throw SchemaError("missing key \"cond\"");
  const json& c = j.at("cond");
  if (!c.is_array() || c.size() != 3) {
    throw SchemaError("\"cond\": expected 3 rows");
  }
  for (int l = 0; l < 3; ++l) {
    const json& row = c[l];
    if (!row.is_array() || row.size() != 3) {
      throw SchemaError("\"cond\"[" + std::to_string(l) + "]: expected 3 numbers");
    }
    for (int i = 0; i < 3; ++i) {
      d.cond[l][i] = require_prob(row[i],
                                  "\"cond\"[" + std::to_string(l) + "][" +
                                      std::to_string(i) + "]",
                                  tol);
    }
  }

  if (!j.contains("pair_cond")) throw SchemaError("missing key \"pair_cond\"");
  const json& pc = j.at("pair_cond");
  if (!pc.is_object()) throw SchemaError("\"pair_cond\": expected an object");
  for (int p = 0; p < kNumPairs; ++p) {
    d.pair_cond[p] = require_vec3(pc, pair_label(p), tol);
  }
  return d;
}

void save_probability_data(std::ostream& out, const ProbabilityData& d) {
  jsonio::Writer w(out);
  w.obj_open();
  w.key("p_b").vec3(d.p_b);
  w.key("p_a").vec3(d.p_a);
  w.key("cond").mat3(d.cond);
  w.key("pair_cond").obj_open();
  for (int p = 0; p < kNumPairs; ++p) w.key(pair_label(p)).vec3(d.pair_cond[p]);
  w.obj_close();
  w.obj_close();
  w.finish();
}

}  // namespace qlra
