// Command-line front end: analyze models, verify the structural identities,
// map phase diagrams, locate transition boundaries and simulate dynamics.
//
// Exit codes: 0 success; 1 failed verification checks; 2 invalid input
// (syntax, non-symmetric Hamiltonian, bad parameters, bad files);
// 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "quadham/catalog.hpp"
#include "quadham/dynamics.hpp"
#include "quadham/polyroots.hpp"
#include "quadham/report.hpp"
#include "quadham/spectra.hpp"
#include "quadham/sweep.hpp"

namespace {

using namespace quadham;

constexpr int kExitChecksFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;

double default_tolerance() {
  if (const char* env = std::getenv("QUADHAM_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) {
      return v;
    }
    std::cerr << "warning: ignoring invalid QUADHAM_TOL='" << env << "'\n";
  }
  return 1e-10;
}

ParamBindings parse_sets(const std::vector<std::string>& sets) {
  ParamBindings out;
  for (const std::string& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw DomainError("--set expects name=value, got '" + s + "'");
    }
    char* end = nullptr;
    const std::string value = s.substr(eq + 1);
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
      throw DomainError("--set " + s + ": value is not a number");
    }
    out[s.substr(0, eq)] = v;
  }
  return out;
}

ModelSpec load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open model file '" + path + "'");
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DomainError("model file '" + path + "': " + e.what());
  }
  ModelSpec spec;
  try {
    spec.id = j.at("name").get<std::string>();
    spec.K = j.at("K").get<int>();
    spec.expression = j.at("hamiltonian").get<std::string>();
    for (const auto& [name, value] : j.at("parameters").items()) {
      spec.defaults[name] = value.get<double>();
    }
  } catch (const std::exception& e) {
    throw DomainError("model file '" + path +
                      "' needs name, K, hamiltonian, parameters: " + e.what());
  }
  if (spec.K < 1) {
    throw DomainError("model file '" + path + "': K must be >= 1");
  }
  return spec;
}

ModelSpec resolve_model(const std::string& model_id, const std::string& file) {
  if (!model_id.empty() && !file.empty()) {
    throw DomainError("give either --model or --file, not both");
  }
  if (!model_id.empty()) {
    return catalog_model(model_id);
  }
  if (!file.empty()) {
    return load_model_file(file);
  }
  throw DomainError("a model is required: --model <id> or --file <path>");
}

SweepAxis parse_axis(const std::string& text) {
  // name=lo:hi:n
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw DomainError("--axis expects name=lo:hi:n, got '" + text + "'");
  }
  SweepAxis axis;
  axis.param = text.substr(0, eq);
  std::string rest = text.substr(eq + 1);
  int n = 0;
  double lo = 0.0, hi = 0.0;
  char extra = '\0';
  if (std::sscanf(rest.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &extra) != 3) {
    throw DomainError("--axis expects name=lo:hi:n, got '" + text + "'");
  }
  axis.lo = lo;
  axis.hi = hi;
  axis.n = n;
  return axis;
}

std::pair<double, double> parse_bracket(const std::string& text) {
  double lo = 0.0, hi = 0.0;
  char extra = '\0';
  if (std::sscanf(text.c_str(), "%lf:%lf%c", &lo, &hi, &extra) != 2) {
    throw DomainError("--bracket expects lo:hi, got '" + text + "'");
  }
  return {lo, hi};
}

struct CheckRow {
  std::string name;
  std::string status;  // PASS / FAIL / n/a
  std::string detail;
};

void print_check_table(const std::vector<CheckRow>& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  for (const auto& r : rows) {
    std::printf("%-*s  %-4s  %s\n", static_cast<int>(width), r.name.c_str(),
                r.status.c_str(), r.detail.c_str());
  }
}

std::string residual_str(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "residual %.3e", v);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const ModelSpec& spec, const ParamBindings& sets,
                const std::string& json_path) {
  AnalysisReport report = analyze_model(spec, sets, default_tolerance());
  Json j = report_to_json(report);
  std::cout << j.dump(2) << "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      throw DomainError("cannot write '" + json_path + "'");
    }
    out << j.dump(2) << "\n";
  }
  return 0;
}

int verify_matrix_checks(const Eigen::MatrixXcd& entries, int K, double tol,
                         std::vector<CheckRow>& rows) {
  AdjointMatrix h{K, entries, Provenance::formula};
  UMatrix u = build_U(K);
  PseudoHermReport pseudo = verify_pseudo_hermiticity(h, u, tol);
  rows.push_back({"pseudo_hermiticity",
                  pseudo.residual_pseudo <= tol ? "PASS" : "FAIL",
                  residual_str(pseudo.residual_pseudo)});
  rows.push_back({"antireality",
                  pseudo.residual_antireal <= tol ? "PASS" : "FAIL",
                  residual_str(pseudo.residual_antireal)});

  Spectrum s = eigen(h);
  double worst_eig = 0.0;
  for (double r : s.residuals) worst_eig = std::max(worst_eig, r);
  rows.push_back({"eigenpair_residuals", worst_eig <= 1e-10 ? "PASS" : "FAIL",
                  residual_str(worst_eig)});

  try {
    pair_spectrum(s.values);
    rows.push_back({"spectrum_pairing", "PASS", "+/- and conjugate closure"});
  } catch (const PairingError& e) {
    rows.push_back({"spectrum_pairing", "FAIL", e.what()});
  }

  double scale = 1.0;
  for (Complex v : s.values) scale = std::max(scale, std::abs(v));
  double worst_gram = 0.0;
  for (int i = 0; i < 2 * K; ++i) {
    for (int j = 0; j < 2 * K; ++j) {
      Complex gap = s.values[j] - std::conj(s.values[i]);
      if (std::abs(gap) < 1e-6 * scale) continue;
      worst_gram = std::max(
          worst_gram, std::abs(s.vectors.col(i).dot(u.entries * s.vectors.col(j))));
    }
  }
  rows.push_back({"pseudo_orthogonality", worst_gram <= 1e-9 ? "PASS" : "FAIL",
                  residual_str(worst_gram)});

  auto roots = charpoly_eigenvalues(entries);
  double worst_cp = 0.0;
  std::vector<Complex> pool = s.values;
  for (Complex r : roots) {
    double best = 1e300;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (std::abs(r - pool[j]) < best) {
        best = std::abs(r - pool[j]);
        best_j = j;
      }
    }
    if (!pool.empty()) pool.erase(pool.begin() + best_j);
    worst_cp = std::max(worst_cp, best / std::max(1.0, std::abs(r)));
  }
  rows.push_back({"charpoly_crosscheck", worst_cp <= 1e-8 ? "PASS" : "FAIL",
                  residual_str(worst_cp)});
  return 0;
}

int cmd_verify(const ModelSpec* spec, const ParamBindings& sets,
               const std::string& matrix_path) {
  const double tol = default_tolerance();
  std::vector<CheckRow> rows;

  if (!matrix_path.empty()) {
    std::ifstream in(matrix_path);
    if (!in) {
      throw DomainError("cannot open matrix file '" + matrix_path + "'");
    }
    Json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw DomainError("matrix file '" + matrix_path + "': " + e.what());
    }
    Eigen::MatrixXcd entries = matrix_from_json(
        j.contains("adjoint_matrix") ? j.at("adjoint_matrix").at("formula") : j);
    if (entries.rows() != entries.cols() || entries.rows() % 2 != 0 ||
        entries.rows() == 0) {
      throw DomainError("matrix must be square with even dimension");
    }
    verify_matrix_checks(entries, static_cast<int>(entries.rows() / 2), tol, rows);
  } else {
    Instantiation inst = instantiate_spec(*spec, sets);
    rows.push_back({"gamma_hermitian", "PASS", "Weyl extraction accepted"});

    AdjointMatrix via_comm = adjoint_matrix_via_commutators(inst.poly);
    double scale = std::max(1.0, inst.matrix.entries.cwiseAbs().maxCoeff());
    double route_diff =
        (inst.matrix.entries - via_comm.entries).cwiseAbs().maxCoeff() / scale;
    rows.push_back({"two_route_equality", route_diff <= 1e-12 ? "PASS" : "FAIL",
                    residual_str(route_diff)});

    verify_matrix_checks(inst.matrix.entries, inst.spec.K, tol, rows);

    Spectrum s = eigen(inst.matrix);
    double lambda_scale = 1.0;
    for (Complex v : s.values) lambda_scale = std::max(lambda_scale, std::abs(v));
    double worst_ladder = -1.0, worst_com = -1.0;
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      Complex lambda = s.values[k];
      if (std::abs(lambda.imag()) > kRealityTol * lambda_scale) continue;
      bool simple = true;
      for (std::size_t j = 0; j < s.values.size(); ++j) {
        simple = simple && (j == k ||
                            std::abs(s.values[j] - lambda) > 1e-6 * lambda_scale);
      }
      if (!simple) continue;
      LadderVector z = ladder_from_spectrum(s, static_cast<int>(k));
      worst_ladder = std::max(worst_ladder, ladder_residual(inst.poly, z));
      worst_com =
          std::max(worst_com, constant_of_motion_residual(inst.poly, z));
    }
    if (worst_ladder < 0.0) {
      rows.push_back({"ladder_residuals", "n/a", "no simple real eigenvalues"});
      rows.push_back({"constants_of_motion", "n/a", "no simple real eigenvalues"});
    } else {
      rows.push_back({"ladder_residuals",
                      worst_ladder <= 1e-10 ? "PASS" : "FAIL",
                      residual_str(worst_ladder)});
      rows.push_back({"constants_of_motion",
                      worst_com <= 1e-10 ? "PASS" : "FAIL",
                      residual_str(worst_com)});
    }
  }

  print_check_table(rows);
  for (const auto& r : rows) {
    if (r.status == "FAIL") {
      return kExitChecksFailed;
    }
  }
  return 0;
}

int cmd_sweep(const ModelSpec& spec, const ParamBindings& sets,
              const std::vector<std::string>& axis_args,
              const std::string& out_path, const std::string& svg_path,
              int jobs) {
  std::vector<SweepAxis> axes;
  for (const std::string& a : axis_args) {
    axes.push_back(parse_axis(a));
  }
  SweepGrid grid = run_sweep(spec, sets, axes, jobs);

  if (out_path.empty()) {
    write_sweep_csv(std::cout, grid);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw DomainError("cannot write '" + out_path + "'");
    }
    write_sweep_csv(out, grid);
  }
  if (!svg_path.empty()) {
    std::ofstream out(svg_path);
    if (!out) {
      throw DomainError("cannot write '" + svg_path + "'");
    }
    write_phase_svg(out, grid);
  }
  return 0;
}

int cmd_boundary(const ModelSpec& spec, const ParamBindings& sets,
                 const std::string& param, const std::string& bracket,
                 double tol) {
  auto [lo, hi] = parse_bracket(bracket);
  BoundaryResult b = find_boundary(spec, sets, param, lo, hi, tol);
  int digits = std::max(6, static_cast<int>(std::ceil(-std::log10(tol))));
  std::printf("%.*f\n", digits, b.critical_value);
  std::fprintf(stderr, "%s: %s | %s boundary after %d bisections, bracket %.3e\n",
               b.param.c_str(), phase_name(b.phase_lo).c_str(),
               phase_name(b.phase_hi).c_str(), b.steps, b.bracket_width_final);
  return 0;
}

int cmd_simulate(const ModelSpec& spec, const ParamBindings& sets, double T,
                 double dt, const std::string& z0_text,
                 const std::string& out_path) {
  Instantiation inst = instantiate_spec(spec, sets);
  EvolutionMatrix m = evolution_matrix(inst.matrix);
  const int dim = 2 * inst.spec.K;

  Eigen::VectorXd z0;
  if (z0_text.empty()) {
    z0 = default_initial_state(dim);
  } else {
    std::vector<double> parts;
    std::string token;
    std::istringstream ss(z0_text);
    while (std::getline(ss, token, ',')) {
      parts.push_back(std::strtod(token.c_str(), nullptr));
    }
    if (static_cast<int>(parts.size()) != dim) {
      throw DomainError("--z0 needs " + std::to_string(dim) + " components");
    }
    z0 = Eigen::Map<Eigen::VectorXd>(parts.data(), dim);
  }

  Trajectory tr = integrate(m, z0, T, dt);
  {
    std::ofstream out(out_path);
    if (!out) {
      throw DomainError("cannot write '" + out_path + "'");
    }
    write_trajectory_csv(out, tr);
  }

  PhaseLabel label = classify(eigen(inst.matrix));
  std::printf("model: %s\nphase: %s\n", inst.spec.id.c_str(),
              phase_name(label.label).c_str());
  std::printf("samples: %zu%s\n", tr.states.size(),
              tr.overflow ? " (overflow truncation)" : "");
  if (label.label == Phase::Real) {
    auto freqs = estimate_frequencies(tr);
    std::printf("frequencies:");
    for (double f : freqs) std::printf(" %.6f", f);
    std::printf("\n");
  } else {
    try {
      std::printf("growth_rate: %.6f\n", growth_rate(tr));
    } catch (const Error& e) {
      std::printf("growth_rate: unavailable (%s)\n", e.what());
    }
  }
  std::printf("trajectory: %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjoint-representation toolkit for symmetric quadratic "
               "Hamiltonians"};
  app.require_subcommand(1);

  std::string model_id, file_path, matrix_path, json_path, out_path, svg_path;
  std::string param, bracket, z0_text;
  std::vector<std::string> sets, axis_args;
  double tol = 1e-6, T = 200.0, dt = 0.01;
  int jobs = 0;

  auto add_model_opts = [&](CLI::App* cmd, bool model_required = true) {
    cmd->add_option("--model", model_id, "built-in model id");
    cmd->add_option("--file", file_path, "model JSON file");
    cmd->add_option("--set", sets, "parameter override name=value")
        ->take_all();
    (void)model_required;
  };

  CLI::App* analyze = app.add_subcommand("analyze", "full report for a model");
  add_model_opts(analyze);
  analyze->add_option("--json", json_path, "also write the report here");

  CLI::App* verify = app.add_subcommand(
      "verify", "pass/fail table of the structural identities");
  add_model_opts(verify);
  verify->add_option("--matrix", matrix_path,
                     "check a bare adjoint matrix JSON instead of a model");

  CLI::App* sweep = app.add_subcommand("sweep", "phase map over 1-2 axes");
  add_model_opts(sweep);
  sweep->add_option("--axis", axis_args, "axis as name=lo:hi:n (1 or 2)")
      ->required()
      ->take_all();
  sweep->add_option("--out", out_path, "CSV output path (default: stdout)");
  sweep->add_option("--svg", svg_path, "SVG heatmap path (2D sweeps)");
  sweep->add_option("--jobs", jobs, "worker threads (default: OpenMP)");

  CLI::App* boundary =
      app.add_subcommand("boundary", "bisect a Real/non-Real transition");
  add_model_opts(boundary);
  boundary->add_option("--param", param, "parameter to bisect")->required();
  boundary->add_option("--bracket", bracket, "lo:hi with differing phases")
      ->required();
  boundary->add_option("--tol", tol, "bracket width target (default 1e-6)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate the classical flow");
  add_model_opts(simulate);
  simulate->add_option("--T", T, "horizon (default 200)");
  simulate->add_option("--dt", dt, "step (default 0.01)");
  simulate->add_option("--z0", z0_text, "initial state, comma-separated");
  simulate->add_option("--out", out_path, "trajectory CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      return cmd_analyze(resolve_model(model_id, file_path), parse_sets(sets),
                         json_path);
    }
    if (verify->parsed()) {
      if (!matrix_path.empty()) {
        return cmd_verify(nullptr, {}, matrix_path);
      }
      ModelSpec spec = resolve_model(model_id, file_path);
      return cmd_verify(&spec, parse_sets(sets), "");
    }
    if (sweep->parsed()) {
      return cmd_sweep(resolve_model(model_id, file_path), parse_sets(sets),
                       axis_args, out_path, svg_path, jobs);
    }
    if (boundary->parsed()) {
      return cmd_boundary(resolve_model(model_id, file_path), parse_sets(sets),
                          param, bracket, tol);
    }
    if (simulate->parsed()) {
      if (out_path.empty()) {
        out_path = "trajectory.csv";
      }
      return cmd_simulate(resolve_model(model_id, file_path), parse_sets(sets),
                          T, dt, z0_text, out_path);
    }
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
