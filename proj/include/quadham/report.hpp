#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadham/catalog.hpp"
#include "quadham/dynamics.hpp"
#include "quadham/spectra.hpp"
#include "quadham/sweep.hpp"

namespace quadham {

using Json = nlohmann::ordered_json;

// Fixed phase colors for the SVG heatmap (kept stable; tests and downstream
// tooling match on the exact strings).
inline constexpr const char* kColorReal = "#2166ac";
inline constexpr const char* kColorBroken = "#b2182b";
inline constexpr const char* kColorExceptional = "#f4a582";
inline constexpr const char* kColorError = "#bdbdbd";

/// Everything the analyze command reports about one model instance.
struct AnalysisReport {
  int schema = 1;
  std::string model;
  int K = 0;
  ParamBindings parameters;
  Eigen::MatrixXcd gamma;
  Complex scalar_remainder{0.0, 0.0};
  Eigen::MatrixXcd adjoint_formula;
  Eigen::MatrixXcd adjoint_commutator;
  double tolerance = 1e-10;
  double residual_pseudo = 0.0;
  double residual_antireal = 0.0;
  bool pseudo_passed = false;
  std::vector<Complex> eigenvalues;
  std::vector<double> eigen_residuals;
  std::vector<Complex> pseudo_norms;
  std::string phase;
  double max_im = 0.0;
  double min_pseudo_norm = 0.0;
  std::optional<double> ground_energy;  // Real phase only
};

/// Full pipeline for one model instance: parse, extract gamma, both adjoint
/// routes, pseudo-Hermiticity, spectrum, classification, ground energy.
AnalysisReport analyze_model(const ModelSpec& spec,
                             const ParamBindings& overrides, double tol = 1e-10);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const Json& j);

/// Sweep CSV: one column per axis parameter, then max_im, min_pseudo_norm,
/// phase.  Doubles are written with 17 significant digits so the file
/// round-trips losslessly; failed cells carry nan values and phase `error`.
void write_sweep_csv(std::ostream& os, const SweepGrid& grid);
SweepGrid read_sweep_csv(std::istream& is);

/// Trajectory CSV: t, z1..z_2K.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

/// Self-contained SVG heatmap of a 2-axis sweep, one rect per cell with the
/// fixed phase colors, axis labels and a legend.
void write_phase_svg(std::ostream& os, const SweepGrid& grid);

std::string format_double17(double v);

}  // namespace quadham
