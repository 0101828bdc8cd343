#pragma once

#include <string>
#include <vector>

#include "quadham/catalog.hpp"
#include "quadham/spectra.hpp"

namespace quadham {

struct SweepAxis {
  std::string param;
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;  // sample count >= 2
};

double axis_value(const SweepAxis& a, int index);

struct SweepCell {
  std::vector<double> values;  // axis parameter values, one per axis
  double max_im = 0.0;
  double min_pseudo_norm = 0.0;
  Phase phase = Phase::Real;
  bool ok = false;
  std::string error;  // diagnostic when !ok (e.g. singular parameters)
};

struct SweepGrid {
  std::vector<SweepAxis> axes;       // 1 or 2
  std::vector<SweepCell> cells;      // row-major, first axis outermost
};

/// Phase map over 1 or 2 parameter axes: per cell instantiate + eigen +
/// classify.  Cells are independent and evaluated in parallel (OpenMP);
/// results land in row-major order whatever the thread count, so the output
/// is bit-identical to the serial reference.  jobs <= 0 uses the OpenMP
/// default.  A cell whose instantiation or decomposition fails carries an
/// error marker instead of aborting the sweep.
SweepGrid run_sweep(const ModelSpec& spec, const ParamBindings& overrides,
                    const std::vector<SweepAxis>& axes, int jobs = 0);

/// Serial reference implementation; kept for tests and the benchmark.
SweepGrid run_sweep_serial(const ModelSpec& spec,
                           const ParamBindings& overrides,
                           const std::vector<SweepAxis>& axes);

struct BoundaryResult {
  std::string param;
  double critical_value = 0.0;
  double bracket_width_final = 0.0;
  Phase phase_lo = Phase::Real;  // phase at the original lower end
  Phase phase_hi = Phase::Real;  // phase at the original upper end
  int steps = 0;
};

/// Bisection on the indicator "phase != Real" (exceptional counts as
/// non-Real).  The endpoints must classify differently.
BoundaryResult find_boundary(const ModelSpec& spec,
                             const ParamBindings& overrides,
                             const std::string& param, double lo, double hi,
                             double tol);

}  // namespace quadham
