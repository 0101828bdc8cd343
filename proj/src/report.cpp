#include "quadham/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace quadham {

namespace {

const char* phase_color(Phase p) {
  switch (p) {
    case Phase::Real: return kColorReal;
    case Phase::Broken: return kColorBroken;
    case Phase::Exceptional: return kColorExceptional;
  }
  return kColorError;
}

Phase phase_from_name(const std::string& name) {
  if (name == "Real") return Phase::Real;
  if (name == "Broken") return Phase::Broken;
  if (name == "Exceptional") return Phase::Exceptional;
  throw DomainError("unknown phase label '" + name + "'");
}

Json complex_to_json(Complex c) {
  return Json{{"re", c.real()}, {"im", c.imag()}};
}

Complex complex_from_json(const Json& j) {
  return Complex{j.at("re").get<double>(), j.at("im").get<double>()};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    out.push_back(field);
  }
  return out;
}

std::string format_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

AnalysisReport analyze_model(const ModelSpec& spec,
                             const ParamBindings& overrides, double tol) {
  Instantiation inst = instantiate_spec(spec, overrides);
  AdjointMatrix via_comm = adjoint_matrix_via_commutators(inst.poly);
  UMatrix u = build_U(spec.K);
  PseudoHermReport pseudo = verify_pseudo_hermiticity(inst.matrix, u, tol);
  Spectrum s = eigen(inst.matrix);
  PhaseLabel label = classify(s);

  AnalysisReport r;
  r.model = spec.id;
  r.K = spec.K;
  r.parameters = inst.params;
  r.gamma = inst.gamma.entries;
  r.scalar_remainder = inst.gamma.scalar_remainder;
  r.adjoint_formula = inst.matrix.entries;
  r.adjoint_commutator = via_comm.entries;
  r.tolerance = tol;
  r.residual_pseudo = pseudo.residual_pseudo;
  r.residual_antireal = pseudo.residual_antireal;
  r.pseudo_passed = pseudo.passed;
  r.eigenvalues = s.values;
  r.eigen_residuals = s.residuals;
  r.pseudo_norms = s.pseudo_norms;
  r.phase = phase_name(label.label);
  r.max_im = label.max_im;
  r.min_pseudo_norm = label.min_pseudo_norm;
  if (label.label == Phase::Real) {
    r.ground_energy = ground_energy(s);
  }
  return r;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json re_row = Json::array(), im_row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  if (!re.is_array() || re.empty() || re.size() != im.size()) {
    throw DomainError("matrix JSON must hold equally sized re/im row arrays");
  }
  Eigen::Index rows = re.size();
  Eigen::Index cols = re.at(0).size();
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(re.at(i).size()) != cols ||
        static_cast<Eigen::Index>(im.at(i).size()) != cols) {
      throw DomainError("matrix JSON rows have inconsistent lengths");
    }
    for (Eigen::Index jj = 0; jj < cols; ++jj) {
      m(i, jj) = Complex{re.at(i).at(jj).get<double>(),
                         im.at(i).at(jj).get<double>()};
    }
  }
  return m;
}

Json report_to_json(const AnalysisReport& r) {
  Json j;
  j["schema"] = r.schema;
  j["model"] = r.model;
  j["K"] = r.K;
  j["parameters"] = Json::object();
  for (const auto& [name, value] : r.parameters) {
    j["parameters"][name] = value;
  }
  j["gamma"] = matrix_to_json(r.gamma);
  j["scalar_remainder"] = complex_to_json(r.scalar_remainder);
  j["adjoint_matrix"] =
      Json{{"formula", matrix_to_json(r.adjoint_formula)},
           {"commutator", matrix_to_json(r.adjoint_commutator)}};
  j["pseudo_hermiticity"] = Json{{"tolerance", r.tolerance},
                                 {"residual_pseudo", r.residual_pseudo},
                                 {"residual_antireal", r.residual_antireal},
                                 {"passed", r.pseudo_passed}};
  Json eigs = Json::array();
  for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
    eigs.push_back(Json{{"re", r.eigenvalues[k].real()},
                        {"im", r.eigenvalues[k].imag()},
                        {"residual", r.eigen_residuals[k]},
                        {"pseudo_norm", complex_to_json(r.pseudo_norms[k])}});
  }
  j["eigenvalues"] = std::move(eigs);
  j["phase"] = r.phase;
  j["max_im"] = r.max_im;
  j["min_pseudo_norm"] = r.min_pseudo_norm;
  if (r.ground_energy) {
    j["ground_energy"] = *r.ground_energy;
  }
  return j;
}

AnalysisReport report_from_json(const Json& j) {
  AnalysisReport r;
  r.schema = j.at("schema").get<int>();
  if (r.schema != 1) {
    throw DomainError("unsupported report schema " + std::to_string(r.schema));
  }
  r.model = j.at("model").get<std::string>();
  r.K = j.at("K").get<int>();
  for (const auto& [name, value] : j.at("parameters").items()) {
    r.parameters[name] = value.get<double>();
  }
  r.gamma = matrix_from_json(j.at("gamma"));
  r.scalar_remainder = complex_from_json(j.at("scalar_remainder"));
  r.adjoint_formula = matrix_from_json(j.at("adjoint_matrix").at("formula"));
  r.adjoint_commutator =
      matrix_from_json(j.at("adjoint_matrix").at("commutator"));
  const Json& ph = j.at("pseudo_hermiticity");
  r.tolerance = ph.at("tolerance").get<double>();
  r.residual_pseudo = ph.at("residual_pseudo").get<double>();
  r.residual_antireal = ph.at("residual_antireal").get<double>();
  r.pseudo_passed = ph.at("passed").get<bool>();
  for (const Json& e : j.at("eigenvalues")) {
    r.eigenvalues.push_back(Complex{e.at("re").get<double>(),
                                    e.at("im").get<double>()});
    r.eigen_residuals.push_back(e.at("residual").get<double>());
    r.pseudo_norms.push_back(complex_from_json(e.at("pseudo_norm")));
  }
  r.phase = j.at("phase").get<std::string>();
  r.max_im = j.at("max_im").get<double>();
  r.min_pseudo_norm = j.at("min_pseudo_norm").get<double>();
  if (j.contains("ground_energy")) {
    r.ground_energy = j.at("ground_energy").get<double>();
  }
  return r;
}

void write_sweep_csv(std::ostream& os, const SweepGrid& grid) {
  for (const auto& a : grid.axes) {
    os << a.param << ",";
  }
  os << "max_im,min_pseudo_norm,phase\n";
  for (const auto& cell : grid.cells) {
    for (double v : cell.values) {
      os << format_double17(v) << ",";
    }
    os << format_double17(cell.max_im) << ","
       << format_double17(cell.min_pseudo_norm) << ","
       << (cell.ok ? phase_name(cell.phase) : std::string("error")) << "\n";
  }
}

SweepGrid read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) {
    throw DomainError("empty sweep CSV");
  }
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 4 || header[header.size() - 3] != "max_im" ||
      header[header.size() - 2] != "min_pseudo_norm" ||
      header.back() != "phase") {
    throw DomainError("sweep CSV header must end in max_im,min_pseudo_norm,phase");
  }
  const std::size_t n_axes = header.size() - 3;

  SweepGrid grid;
  std::vector<std::vector<double>> seen(n_axes);
  for (std::size_t a = 0; a < n_axes; ++a) {
    grid.axes.push_back({header[a], 0.0, 0.0, 0});
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw DomainError("sweep CSV row has wrong field count");
    }
    SweepCell cell;
    for (std::size_t a = 0; a < n_axes; ++a) {
      double v = std::strtod(fields[a].c_str(), nullptr);
      cell.values.push_back(v);
      auto& axis_seen = seen[a];
      bool found = false;
      for (double w : axis_seen) found = found || w == v;
      if (!found) axis_seen.push_back(v);
    }
    cell.max_im = std::strtod(fields[n_axes].c_str(), nullptr);
    cell.min_pseudo_norm = std::strtod(fields[n_axes + 1].c_str(), nullptr);
    if (fields.back() == "error") {
      cell.ok = false;
      cell.error = "error";
    } else {
      cell.ok = true;
      cell.phase = phase_from_name(fields.back());
    }
    grid.cells.push_back(std::move(cell));
  }
  for (std::size_t a = 0; a < n_axes; ++a) {
    auto& axis = grid.axes[a];
    axis.n = static_cast<int>(seen[a].size());
    if (!seen[a].empty()) {
      axis.lo = *std::min_element(seen[a].begin(), seen[a].end());
      axis.hi = *std::max_element(seen[a].begin(), seen[a].end());
    }
  }
  return grid;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  const int dim = tr.states.empty() ? 0 : static_cast<int>(tr.states[0].size());
  os << "t";
  for (int j = 1; j <= dim; ++j) {
    os << ",z" << j;
  }
  os << "\n";
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    os << format_double17(tr.times[k]);
    for (int j = 0; j < dim; ++j) {
      os << "," << format_double17(tr.states[k](j));
    }
    os << "\n";
  }
}

void write_phase_svg(std::ostream& os, const SweepGrid& grid) {
  if (grid.axes.size() != 2) {
    throw DomainError("the SVG heatmap needs a 2-axis sweep");
  }
  const int n0 = grid.axes[0].n;
  const int n1 = grid.axes[1].n;
  if (static_cast<int>(grid.cells.size()) != n0 * n1) {
    throw DimensionError("sweep grid cell count does not match its axes");
  }

  const double plot_w = 480.0, plot_h = 360.0;
  const double left = 70.0, top = 20.0, bottom = 50.0, right_legend = 170.0;
  const double width = left + plot_w + right_legend;
  const double height = top + plot_h + bottom;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"#ffffff\"/>\n";

  bool any_error = false;
  char buf[256];
  for (int i0 = 0; i0 < n0; ++i0) {
    for (int i1 = 0; i1 < n1; ++i1) {
      const SweepCell& cell = grid.cells[i0 * n1 + i1];
      const char* color = cell.ok ? phase_color(cell.phase) : kColorError;
      any_error = any_error || !cell.ok;
      double x = left + plot_w * i0 / n0;
      double y = top + plot_h - plot_h * (i1 + 1) / n1;
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                    "fill=\"%s\"/>\n",
                    x, y, plot_w / n0 + 0.5, plot_h / n1 + 0.5, color);
      os << buf;
    }
  }

  // axis labels and corner ticks
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << top + plot_h + 36
     << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
     << grid.axes[0].param << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + plot_h / 2
     << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 16 "
     << top + plot_h / 2 << ")\">" << grid.axes[1].param << "</text>\n";
  for (int t = 0; t <= 3; ++t) {
    double f = t / 3.0;
    double vx = grid.axes[0].lo + f * (grid.axes[0].hi - grid.axes[0].lo);
    double vy = grid.axes[1].lo + f * (grid.axes[1].hi - grid.axes[1].lo);
    os << "<text x=\"" << left + f * plot_w << "\" y=\"" << top + plot_h + 16
       << "\" font-family=\"sans-serif\" font-size=\"11\" "
          "text-anchor=\"middle\">"
       << format_short(vx) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << top + plot_h - f * plot_h + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
       << format_short(vy) << "</text>\n";
  }

  // legend
  struct Entry {
    const char* color;
    const char* label;
    bool show;
  };
  Entry entries[] = {{kColorReal, "Real", true},
                     {kColorBroken, "Broken", true},
                     {kColorExceptional, "Exceptional", true},
                     {kColorError, "error", any_error}};
  double ly = top + 10;
  for (const Entry& e : entries) {
    if (!e.show) continue;
    os << "<rect x=\"" << left + plot_w + 24 << "\" y=\"" << ly
       << "\" width=\"14\" height=\"14\" fill=\"" << e.color << "\"/>\n";
    os << "<text x=\"" << left + plot_w + 44 << "\" y=\"" << ly + 12
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << e.label
       << "</text>\n";
    ly += 22;
  }
  os << "</svg>\n";
}

}  // namespace quadham
