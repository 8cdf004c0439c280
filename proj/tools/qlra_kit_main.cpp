// qlra-kit: command-line front end for the quantum-like representation
// toolkit. Subcommands mirror the library layers: data validation,
// interference tables, Sorkin residuals, phase solving, the full
// reconstruction pipeline, the forward generator and the slit-experiment
// sampler. All documents go to the output stream (default stdout, '-' for
// stdio everywhere); diagnostics go to stderr.
//
// Exit codes: 0 success, 1 infeasible data (a report or error document is
// still emitted), 2 I/O, schema or usage errors.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qlra/forward_oracle.hpp"
#include "qlra/interference.hpp"
#include "qlra/json_io.hpp"
#include "qlra/phase_solver.hpp"
#include "qlra/prob_data.hpp"
#include "qlra/qlra_engine.hpp"
#include "qlra/slit_sim.hpp"

namespace {

using namespace qlra;
using jsonio::Writer;

// ---------------------------------------------------------------------------
// stream plumbing

ProbabilityData read_data(const std::string& path, double tol) {
  if (path == "-") return load_probability_data(std::cin, tol);
  std::ifstream f(path);
  if (!f) throw SchemaError("cannot open input file: " + path);
  return load_probability_data(f, tol);
}

class Out {
 public:
  explicit Out(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw SchemaError("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string f6(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.6f", v);
  return b;
}

std::string e6(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.6e", v);
  return b;
}

std::string c6(std::complex<double> z) {
  return f6(z.real()) + (z.imag() < 0 ? " - " : " + ") + f6(std::abs(z.imag())) +
         "i";
}

// ---------------------------------------------------------------------------
// document fragments

void write_data_fields(Writer& w, const ProbabilityData& d) {
  w.key("p_b").vec3(d.p_b);
  w.key("p_a").vec3(d.p_a);
  w.key("cond").mat3(d.cond);
  w.key("pair_cond").obj_open();
  for (int p = 0; p < kNumPairs; ++p) {
    w.key(pair_label(p)).vec3(d.pair_cond[p]);
  }
  w.obj_close();
}

void write_lambda_fields(Writer& w, const InterferenceTable& t) {
  w.key("lambda").obj_open();
  for (int p = 0; p < kNumPairs; ++p) {
    w.key(pair_label(p)).vec3(t.lambda[p]);
  }
  w.obj_close();
  w.key("defined").obj_open();
  for (int p = 0; p < kNumPairs; ++p) {
    w.key(pair_label(p)).arr_open();
    for (int l = 0; l < kOutcomes; ++l) w.boolean(t.defined[p][l]);
    w.arr_close();
  }
  w.obj_close();
}

void write_violations(Writer& w, const ValidationOutcome& v) {
  w.key("passed").boolean(v.passed);
  w.key("violations").arr_open();
  for (const auto& viol : v.violations) {
    w.obj_open();
    w.key("constraint").str(viol.constraint);
    w.key("residual").num(viol.residual);
    w.key("tolerance").num(viol.tolerance);
    w.obj_close();
  }
  w.arr_close();
}

void write_cvec(Writer& w, const Eigen::Vector3cd& v) {
  w.obj_open();
  w.key("re").arr_open();
  for (int l = 0; l < kOutcomes; ++l) w.num(v(l).real());
  w.arr_close();
  w.key("im").arr_open();
  for (int l = 0; l < kOutcomes; ++l) w.num(v(l).imag());
  w.arr_close();
  w.obj_close();
}

void write_cmat(Writer& w, const Eigen::Matrix3cd& m) {
  w.obj_open();
  w.key("re").arr_open();
  for (int l = 0; l < kOutcomes; ++l) {
    w.arr_open();
    for (int i = 0; i < kOutcomes; ++i) w.num(m(l, i).real());
    w.arr_close();
  }
  w.arr_close();
  w.key("im").arr_open();
  for (int l = 0; l < kOutcomes; ++l) {
    w.arr_open();
    for (int i = 0; i < kOutcomes; ++i) w.num(m(l, i).imag());
    w.arr_close();
  }
  w.arr_close();
  w.obj_close();
}

void write_phase_solution(Writer& w, const PhaseSolution& s) {
  w.obj_open();
  w.key("phi").mat3(s.phi);
  w.key("branches").arr_open();
  for (int l = 0; l < kOutcomes; ++l) w.num(s.branches[l]);
  w.arr_close();
  w.key("unconstrained").arr_open();
  for (int l = 0; l < kOutcomes; ++l) {
    w.arr_open();
    for (int i = 0; i < kOutcomes; ++i) w.boolean(s.unconstrained[l][i]);
    w.arr_close();
  }
  w.arr_close();
  w.obj_close();
}

double model_born_residual(const AmplitudeModel& m, const ProbabilityData& d,
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

void write_model(Writer& w, const AmplitudeModel& m, const ProbabilityData& d,
                 bool single_observable) {
  w.obj_open();
  w.key("phases").mat3(m.phases);
  w.key("psi");
  write_cvec(w, m.psi);
  w.key("a_basis");
  write_cmat(w, m.a_basis);
  w.key("sub_amplitudes");
  write_cmat(w, m.sub_amplitudes);
  w.key("born_max_residual").num(model_born_residual(m, d, single_observable));
  w.obj_close();
}

void write_qlra_fields(Writer& w, const QlraResult& res,
                       const ProbabilityData& d, double tol) {
  const FeasibilityReport& rep = res.report;
  w.key("feasible").boolean(rep.feasible());
  w.key("single_observable").boolean(rep.single_observable);
  w.key("tol").num(tol);
  w.key("report").obj_open();
  w.key("lambda_bounded").boolean(rep.lambda_bounded);
  w.key("rows_consistent").boolean(rep.rows_consistent);
  w.key("sorkin_ok").boolean(rep.sorkin_ok);
  w.key("lambda_norm_ok").boolean(rep.lambda_norm_ok);
  w.key("unitarity_ok").boolean(rep.unitarity_ok);
  w.key("double_stochastic_ok").boolean(rep.double_stochastic_ok);
  w.key("residuals").obj_open();
  for (const auto& [name, value] : rep.residuals) {
    w.key(name).num(value);
  }
  w.obj_close();
  w.obj_close();
  write_lambda_fields(w, res.table);
  if (rep.selected_solution) {
    w.key("selected_solution");
    write_phase_solution(w, *rep.selected_solution);
  }
  w.key("models").arr_open();
  for (const auto& m : res.models) {
    write_model(w, m, d, rep.single_observable);
  }
  w.arr_close();
}

void print_qlra_text(std::ostream& os, const QlraResult& res,
                     const ProbabilityData& d) {
  const FeasibilityReport& rep = res.report;
  auto gate = [&](const char* name, bool ok) {
    os << "gate " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
  };
  gate("lambda_bounded", rep.lambda_bounded);
  gate("rows_consistent", rep.rows_consistent);
  gate("sorkin_ok", rep.sorkin_ok);
  gate("lambda_norm_ok", rep.lambda_norm_ok);
  gate("unitarity_ok", rep.unitarity_ok);
  gate("double_stochastic_ok", rep.double_stochastic_ok);
  for (const auto& [name, value] : rep.residuals) {
    os << "residual " << name << " = " << e6(value) << "\n";
  }
  os << "feasible: " << (rep.feasible() ? "yes" : "no") << "\n";
  os << "models: " << res.models.size() << "\n";
  int k = 0;
  for (const auto& m : res.models) {
    os << "model " << ++k << (rep.single_observable ? " (state only)" : "")
       << "\n";
    for (int l = 0; l < kOutcomes; ++l) {
      os << "  psi[" << l + 1 << "] = " << c6(m.psi(l))
         << "  |psi|^2 = " << f6(std::norm(m.psi(l))) << "\n";
    }
    os << "  born_max_residual = "
       << e6(model_born_residual(m, d, rep.single_observable)) << "\n";
  }
}

void print_data_text(std::ostream& os, const ProbabilityData& d) {
  auto row = [&](const char* name, const Vec3& v) {
    os << name << " = " << f6(v[0]) << " " << f6(v[1]) << " " << f6(v[2])
       << "\n";
  };
  row("p_b ", d.p_b);
  row("p_a ", d.p_a);
  for (int l = 0; l < kOutcomes; ++l) {
    os << "cond[" << l + 1 << "] = " << f6(d.cond[l][0]) << " "
       << f6(d.cond[l][1]) << " " << f6(d.cond[l][2]) << "\n";
  }
  for (int p = 0; p < kNumPairs; ++p) {
    os << "pair_cond{" << pair_label(p) << "} = " << f6(d.pair_cond[p][0])
       << " " << f6(d.pair_cond[p][1]) << " " << f6(d.pair_cond[p][2]) << "\n";
  }
}

// ---------------------------------------------------------------------------
// instance (psi, u) serialization

void write_instance_fields(Writer& w, const QuantumInstance& inst) {
  w.key("instance").obj_open();
  w.key("psi");
  write_cvec(w, inst.psi);
  w.key("u");
  write_cmat(w, inst.u);
  w.obj_close();
}

QuantumInstance parse_instance(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (j.contains("instance")) j = j.at("instance");
  auto real_vec = [](const nlohmann::json& node, const std::string& path) {
    if (!node.is_array() || node.size() != 3) {
      throw SchemaError(path + " must be an array of 3 numbers");
    }
    Vec3 v{};
    for (int k = 0; k < 3; ++k) {
      if (!node[k].is_number()) {
        throw SchemaError(path + " must contain only numbers");
      }
      v[k] = node[k].get<double>();
    }
    return v;
  };
  auto part = [&](const char* block, const char* comp) -> nlohmann::json {
    if (!j.contains(block) || !j[block].is_object() ||
        !j[block].contains(comp)) {
      throw SchemaError(std::string("missing ") + block + "." + comp);
    }
    return j[block][comp];
  };

  QuantumInstance inst;
  Vec3 pre = real_vec(part("psi", "re"), "psi.re");
  Vec3 pim = real_vec(part("psi", "im"), "psi.im");
  for (int l = 0; l < 3; ++l) inst.psi(l) = {pre[l], pim[l]};

  nlohmann::json ure = part("u", "re"), uim = part("u", "im");
  if (!ure.is_array() || ure.size() != 3 || !uim.is_array() || uim.size() != 3) {
    throw SchemaError("u.re and u.im must be 3x3 arrays");
  }
  for (int l = 0; l < 3; ++l) {
    Vec3 re = real_vec(ure[l], "u.re[" + std::to_string(l) + "]");
    Vec3 im = real_vec(uim[l], "u.im[" + std::to_string(l) + "]");
    for (int i = 0; i < 3; ++i) inst.u(l, i) = {re[i], im[i]};
  }
  return inst;
}

QuantumInstance read_instance(const std::string& path) {
  if (path == "-") return parse_instance(std::cin);
  std::ifstream f(path);
  if (!f) throw SchemaError("cannot open instance file: " + path);
  return parse_instance(f);
}

// ---------------------------------------------------------------------------
// option state shared across subcommands

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::string format = "json";
  double tol = kDefaultTol;
  bool double_stochastic = false;
  bool single_observable = false;
  bool all_branches = false;
  bool emit_instance = false;
  std::vector<double> gauge;
  std::vector<double> mub;
  std::vector<double> ansatz;
  std::uint64_t seed = 0;
  std::uint64_t instance_seed = 0;
  bool random_source = false;
  std::string instance_path;
  std::uint64_t samples = 0;
};

int resolve_gauge(const Options& o, Vec3& gauge) {
  if (o.gauge.empty()) {
    gauge = {0.0, 0.0, 0.0};
  } else if (o.gauge.size() == 1) {
    gauge = {o.gauge[0], o.gauge[0], o.gauge[0]};
  } else if (o.gauge.size() == 3) {
    gauge = {o.gauge[0], o.gauge[1], o.gauge[2]};
  } else {
    std::cerr << "error: --gauge expects one angle or three comma-separated "
                 "angles\n";
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// subcommand handlers

int cmd_validate(const Options& o) {
  ProbabilityData d = read_data(o.input, o.tol);
  ValidationOutcome v = validate(d, o.tol);
  if (o.double_stochastic) {
    ValidationOutcome ds = check_double_stochastic(d, o.tol);
    v.passed = v.passed && ds.passed;
    v.violations.insert(v.violations.end(), ds.violations.begin(),
                        ds.violations.end());
  }
  Out out(o.output);
  if (o.format == "json") {
    Writer w(out.os());
    w.obj_open();
    write_violations(w, v);
    w.obj_close();
    w.finish();
  } else {
    for (const auto& viol : v.violations) {
      out.os() << "violation " << viol.constraint
               << "  residual = " << e6(viol.residual)
               << "  tol = " << e6(viol.tolerance) << "\n";
    }
    out.os() << (v.passed ? "passed" : "FAILED") << "\n";
  }
  return v.passed ? 0 : 1;
}

int cmd_lambdas(const Options& o) {
  ProbabilityData d = read_data(o.input, o.tol);
  InterferenceTable t = interference_coefficients(d);
  Out out(o.output);
  if (o.format == "json") {
    Writer w(out.os());
    w.obj_open();
    write_lambda_fields(w, t);
    w.obj_close();
    w.finish();
  } else {
    out.os() << "row    lambda_12      lambda_13      lambda_23\n";
    for (int l = 0; l < kOutcomes; ++l) {
      out.os() << "  " << l + 1;
      for (int p = 0; p < kNumPairs; ++p) {
        if (t.defined[p][l]) {
          out.os() << "  " << (t.lambda[p][l] < 0 ? "" : " ")
                   << f6(t.lambda[p][l]) << "   ";
        } else {
          out.os() << "     undef     ";
        }
      }
      out.os() << "\n";
    }
  }
  return 0;
}

int cmd_sorkin(const Options& o) {
  ProbabilityData d = read_data(o.input, o.tol);
  Vec3 r = sorkin_residual(d);
  double max_abs = 0.0;
  for (double v : r) max_abs = std::max(max_abs, std::abs(v));
  Out out(o.output);
  if (o.format == "json") {
    Writer w(out.os());
    w.obj_open();
    w.key("sorkin_residual").vec3(r);
    w.key("max_abs").num(max_abs);
    w.obj_close();
    w.finish();
  } else {
    for (int l = 0; l < kOutcomes; ++l) {
      out.os() << "sorkin[" << l + 1 << "] = " << e6(r[l]) << "\n";
    }
    out.os() << "max_abs = " << e6(max_abs) << "\n";
  }
  return 0;
}

int cmd_solve(const Options& o) {
  Vec3 gauge;
  if (int rc = resolve_gauge(o, gauge)) return rc;
  ProbabilityData d = read_data(o.input, o.tol);
  InterferenceTable t = interference_coefficients(d);
  std::vector<PhaseSolution> sols = solve_all(t, gauge, o.tol);
  std::size_t emit = o.all_branches ? sols.size() : std::min<std::size_t>(1, sols.size());
  Out out(o.output);
  if (o.format == "json") {
    Writer w(out.os());
    w.obj_open();
    w.key("gauge").vec3(gauge);
    w.key("tol").num(o.tol);
    w.key("solution_count").integer(sols.size());
    w.key("solutions").arr_open();
    for (std::size_t k = 0; k < emit; ++k) write_phase_solution(w, sols[k]);
    w.arr_close();
    w.obj_close();
    w.finish();
  } else {
    out.os() << "solutions: " << sols.size()
             << (o.all_branches ? "" : " (showing first; use --all-branches)")
             << "\n";
    for (std::size_t k = 0; k < emit; ++k) {
      out.os() << "solution " << k + 1 << "  branches";
      for (int l = 0; l < kOutcomes; ++l) {
        out.os() << (sols[k].branches[l] > 0 ? " +" : " -");
      }
      out.os() << "\n";
      for (int l = 0; l < kOutcomes; ++l) {
        out.os() << "  phi[" << l + 1 << "] = " << f6(sols[k].phi[l][0]) << " "
                 << f6(sols[k].phi[l][1]) << " " << f6(sols[k].phi[l][2])
                 << "\n";
      }
    }
  }
  return 0;
}

int cmd_qlra(const Options& o) {
  Vec3 gauge;
  if (int rc = resolve_gauge(o, gauge)) return rc;
  ProbabilityData d = read_data(o.input, o.tol);
  QlraResult res = run_qlra(d, o.tol, o.single_observable, gauge);
  Out out(o.output);
  if (o.format == "json") {
    Writer w(out.os());
    w.obj_open();
    write_qlra_fields(w, res, d, o.tol);
    w.obj_close();
    w.finish();
  } else {
    print_qlra_text(out.os(), res, d);
  }
  return res.report.feasible() ? 0 : 1;
}

int cmd_forward(const Options& o) {
  Out out(o.output);
  std::optional<QuantumInstance> inst;
  std::optional<AnsatzFamily> fam;

  if (!o.ansatz.empty()) {
    AnsatzParams p;
    p.x = o.ansatz[0];
    p.y = o.ansatz[1];
    p.v = o.ansatz[2];
    if (o.ansatz.size() >= 4) p.lambda12_sign = static_cast<int>(o.ansatz[3]);
    if (o.ansatz.size() >= 5) p.lambda23_sign = static_cast<int>(o.ansatz[4]);
    fam = ansatz_family(p);
  } else if (!o.mub.empty()) {
    inst = mub_instance(o.mub[0], o.mub[1]);
  } else {
    inst = random_instance(o.seed);
  }

  ProbabilityData d = fam ? fam->data : generate(*inst);

  if (o.format == "json") {
    Writer w(out.os());
    w.obj_open();
    write_data_fields(w, d);
    if (fam) {
      write_lambda_fields(w, fam->table);
      w.key("lambda23_sign").num(fam->lambda23_sign);
    }
    if (o.emit_instance) {
      if (!inst) {
        throw SchemaError(
            "--emit-instance requires a quantum source (--seed or --mub)");
      }
      write_instance_fields(w, *inst);
    }
    w.obj_close();
    w.finish();
  } else {
    print_data_text(out.os(), d);
    if (fam) {
      out.os() << "lambda_12 = " << f6(fam->table.lambda[0][0])
               << "  lambda_13 = " << f6(fam->table.lambda[1][0])
               << "  lambda_23 = " << f6(fam->table.lambda[2][0])
               << "  (lambda23_sign " << (fam->lambda23_sign > 0 ? "+" : "-")
               << ")\n";
    }
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  SlitExperimentPlan plan;
  plan.seed = o.seed;
  plan.samples_per_context = o.samples;
  if (!o.mub.empty()) {
    plan.instance = mub_instance(o.mub[0], o.mub[1]);
  } else if (o.random_source) {
    plan.instance = random_instance(o.instance_seed);
  } else {
    plan.instance = read_instance(o.instance_path);
  }

  FrequencyData f = simulate(plan);
  Out out(o.output);
  if (o.format == "json") {
    static const char* kContextNames[kNumContexts] = {"b",  "1",  "2",  "3",
                                                      "12", "13", "23", "a"};
    Writer w(out.os());
    w.obj_open();
    write_data_fields(w, f.frequencies);
    w.key("samples_per_context").integer(f.samples_per_context);
    w.key("counts").obj_open();
    for (int c = 0; c < kNumContexts; ++c) {
      w.key(kContextNames[c]).arr_open();
      for (int l = 0; l < kOutcomes; ++l) w.integer(f.counts[c][l]);
      w.arr_close();
    }
    w.obj_close();
    w.obj_close();
    w.finish();
  } else {
    out.os() << "samples per context: " << f.samples_per_context << "\n";
    print_data_text(out.os(), f.frequencies);
  }
  return 0;
}

int cmd_example1(const Options& o) {
  Vec3 gauge;
  if (int rc = resolve_gauge(o, gauge)) return rc;
  auto roots = ansatz_mu_roots(1.0, 1.0);  // +-1/sqrt(2)
  Out out(o.output);
  bool all_feasible = true;

  if (o.format == "json") {
    Writer w(out.os());
    w.obj_open();
    w.key("mu_roots").arr_open();
    w.num(roots[0]).num(roots[1]);
    w.arr_close();
    w.key("runs").arr_open();
    for (double mu : roots) {
      ProbabilityData d = cyclic_interference_data(mu);
      QlraResult res = run_qlra(d, o.tol, /*single_observable=*/true, gauge);
      all_feasible = all_feasible && res.report.feasible();
      double dev = 0.0;
      for (const auto& m : res.models) {
        for (int l = 0; l < kOutcomes; ++l) {
          dev = std::max(dev, std::abs(std::norm(m.psi(l)) - 1.0 / 3.0));
        }
      }
      w.obj_open();
      w.key("mu").num(mu);
      w.key("psi_sq_third_max_dev").num(dev);
      write_qlra_fields(w, res, d, o.tol);
      w.obj_close();
    }
    w.arr_close();
    w.obj_close();
    w.finish();
  } else {
    for (double mu : roots) {
      ProbabilityData d = cyclic_interference_data(mu);
      QlraResult res = run_qlra(d, o.tol, /*single_observable=*/true, gauge);
      all_feasible = all_feasible && res.report.feasible();
      out.os() << "mu = " << f6(mu) << "\n";
      print_qlra_text(out.os(), res, d);
    }
  }
  return all_feasible ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "quantum-like representation toolkit for two trichotomous observables"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd, bool with_input) {
    if (with_input) {
      cmd->add_option("input", o.input,
                      "probability-data JSON document ('-' = stdin)")
          ->capture_default_str();
    }
    cmd->add_option("-o,--output", o.output, "output path ('-' = stdout)")
        ->capture_default_str();
    cmd->add_option("--tol", o.tol, "numerical tolerance")
        ->capture_default_str();
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
  };

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check normalization and entry ranges");
  add_common(validate_cmd, true);
  validate_cmd->add_flag("--double-stochastic", o.double_stochastic,
                         "also require each cond row to sum to 1");

  CLI::App* lambdas_cmd = app.add_subcommand(
      "lambdas", "interference coefficients of the data");
  add_common(lambdas_cmd, true);

  CLI::App* sorkin_cmd = app.add_subcommand(
      "sorkin", "second-order interference residual of the data");
  add_common(sorkin_cmd, true);

  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "solve the phase system of the interference table");
  add_common(solve_cmd, true);
  solve_cmd->add_option("--gauge", o.gauge,
                        "per-row phase anchor(s), one angle or a,b,c")
      ->delimiter(',');
  solve_cmd->add_flag("--all-branches", o.all_branches,
                      "emit every branch combination, not just the first");

  CLI::App* qlra_cmd = app.add_subcommand(
      "qlra", "full reconstruction pipeline with feasibility report");
  add_common(qlra_cmd, true);
  qlra_cmd->add_option("--gauge", o.gauge,
                       "per-row phase anchor(s), one angle or a,b,c")
      ->delimiter(',');
  qlra_cmd->add_flag("--single-observable", o.single_observable,
                     "reconstruct Born's rule for the primary observable only");

  CLI::App* forward_cmd = app.add_subcommand(
      "forward", "generate probability data from a quantum source");
  add_common(forward_cmd, false);
  auto* src = forward_cmd->add_option_group("source");
  src->add_option("--seed", o.seed, "random state and basis from this seed");
  src->add_option("--mub", o.mub,
                  "mutually-unbiased-bases family at angles g1,g2")
      ->delimiter(',')
      ->expected(2);
  src->add_option(
         "--ansatz", o.ansatz,
         "uniform-data interference family x,y,v[,sign12[,sign23]]")
      ->delimiter(',')
      ->expected(3, 5);
  src->require_option(1);
  forward_cmd->add_flag("--emit-instance", o.emit_instance,
                        "include the state and basis in the document");

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "finite-sample triple-slit experiment frequencies");
  add_common(simulate_cmd, false);
  simulate_cmd->add_option("--seed", o.seed, "sampling seed")
      ->capture_default_str();
  simulate_cmd->add_option("--samples", o.samples, "samples per context")
      ->required();
  auto* sim_src = simulate_cmd->add_option_group("source");
  sim_src->add_option("--mub", o.mub, "mutually-unbiased-bases instance g1,g2")
      ->delimiter(',')
      ->expected(2);
  sim_src->add_flag("--random", o.random_source,
                    "random instance derived from --instance-seed");
  sim_src->add_option("--instance", o.instance_path,
                      "instance JSON file ('-' = stdin)");
  sim_src->require_option(1);
  simulate_cmd->add_option("--instance-seed", o.instance_seed,
                           "seed for --random")
      ->capture_default_str();

  CLI::App* example1_cmd = app.add_subcommand(
      "example1",
      "reconstruct the uniform cyclic-interference family at mu = +-1/sqrt(2)");
  add_common(example1_cmd, false);
  example1_cmd->add_option("--gauge", o.gauge,
                           "per-row phase anchor(s), one angle or a,b,c")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o);
    if (lambdas_cmd->parsed()) return cmd_lambdas(o);
    if (sorkin_cmd->parsed()) return cmd_sorkin(o);
    if (solve_cmd->parsed()) return cmd_solve(o);
    if (qlra_cmd->parsed()) return cmd_qlra(o);
    if (forward_cmd->parsed()) return cmd_forward(o);
    if (simulate_cmd->parsed()) return cmd_simulate(o);
    if (example1_cmd->parsed()) return cmd_example1(o);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    Writer w(std::cout);
    w.obj_open();
    w.key("error").str(e.what());
    w.obj_close();
    w.finish();
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
