#include "quadham/sweep.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace quadham {

namespace {

void validate_axes(const ModelSpec& spec, const std::vector<SweepAxis>& axes) {
  if (axes.empty() || axes.size() > 2) {
    throw DomainError("sweeps take 1 or 2 axes");
  }
  for (const auto& a : axes) {
    if (!(a.lo < a.hi)) {
      throw DomainError("axis '" + a.param + "': lo must be < hi");
    }
    if (a.n < 2) {
      throw DomainError("axis '" + a.param + "': need at least 2 samples");
    }
    if (spec.defaults.find(a.param) == spec.defaults.end()) {
      throw DomainError("model '" + spec.id + "' has no parameter '" +
                        a.param + "'");
    }
  }
  if (axes.size() == 2 && axes[0].param == axes[1].param) {
    throw DomainError("the two axes must sweep different parameters");
  }
}

SweepCell evaluate_cell(const ModelSpec& spec, const ParamBindings& overrides,
                        const std::vector<SweepAxis>& axes,
                        const std::vector<int>& index) {
  SweepCell cell;
  ParamBindings params = overrides;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    double v = axis_value(axes[k], index[k]);
    cell.values.push_back(v);
    params[axes[k].param] = v;
  }
  try {
    Instantiation inst = instantiate_spec(spec, params);
    PhaseLabel label = classify(eigen(inst.matrix));
    cell.max_im = label.max_im;
    cell.min_pseudo_norm = label.min_pseudo_norm;
    cell.phase = label.label;
    cell.ok = true;
  } catch (const Error& e) {
    cell.ok = false;
    cell.error = e.what();
    cell.max_im = std::numeric_limits<double>::quiet_NaN();
    cell.min_pseudo_norm = std::numeric_limits<double>::quiet_NaN();
  }
  return cell;
}

std::vector<int> unflatten(int flat, const std::vector<SweepAxis>& axes) {
  std::vector<int> index(axes.size());
  for (int k = static_cast<int>(axes.size()) - 1; k >= 0; --k) {
    index[k] = flat % axes[k].n;
    flat /= axes[k].n;
  }
  return index;
}

}  // namespace

double axis_value(const SweepAxis& a, int index) {
  return a.lo + (a.hi - a.lo) * index / (a.n - 1);
}

SweepGrid run_sweep(const ModelSpec& spec, const ParamBindings& overrides,
                    const std::vector<SweepAxis>& axes, int jobs) {
  validate_axes(spec, axes);
  (void)merged_params(spec, overrides);  // reject unknown overrides up front

  SweepGrid grid;
  grid.axes = axes;
  int total = 1;
  for (const auto& a : axes) total *= a.n;
  grid.cells.resize(total);

#ifdef _OPENMP
  int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int t = 0; t < total; ++t) {
    grid.cells[t] = evaluate_cell(spec, overrides, axes, unflatten(t, axes));
  }
#else
  (void)jobs;
  for (int t = 0; t < total; ++t) {
    grid.cells[t] = evaluate_cell(spec, overrides, axes, unflatten(t, axes));
  }
#endif
  return grid;
}

SweepGrid run_sweep_serial(const ModelSpec& spec,
                           const ParamBindings& overrides,
                           const std::vector<SweepAxis>& axes) {
  validate_axes(spec, axes);
  (void)merged_params(spec, overrides);

  SweepGrid grid;
  grid.axes = axes;
  int total = 1;
  for (const auto& a : axes) total *= a.n;
  grid.cells.resize(total);
  for (int t = 0; t < total; ++t) {
    grid.cells[t] = evaluate_cell(spec, overrides, axes, unflatten(t, axes));
  }
  return grid;
}

BoundaryResult find_boundary(const ModelSpec& spec,
                             const ParamBindings& overrides,
                             const std::string& param, double lo, double hi,
                             double tol) {
  if (!(lo < hi)) {
    throw DomainError("bracket requires lo < hi");
  }
  if (!(tol > 0.0)) {
    throw DomainError("bracket tolerance must be positive");
  }
  if (spec.defaults.find(param) == spec.defaults.end()) {
    throw DomainError("model '" + spec.id + "' has no parameter '" + param +
                      "'");
  }

  auto phase_at = [&](double v) {
    ParamBindings params = overrides;
    params[param] = v;
    Instantiation inst = instantiate_spec(spec, params);
    return classify(eigen(inst.matrix)).label;
  };

  BoundaryResult result;
  result.param = param;
  result.phase_lo = phase_at(lo);
  result.phase_hi = phase_at(hi);
  bool lo_real = result.phase_lo == Phase::Real;
  bool hi_real = result.phase_hi == Phase::Real;
  if (lo_real == hi_real) {
    throw DomainError("invalid bracket: both endpoints classify as " +
                      std::string(lo_real ? "Real" : "non-Real"));
  }

  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if ((phase_at(mid) == Phase::Real) == lo_real) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++result.steps;
  }
  result.critical_value = 0.5 * (lo + hi);
  result.bracket_width_final = hi - lo;
  return result;
}

}  // namespace quadham
