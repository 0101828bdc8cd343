#pragma once

#include <Eigen/Dense>
#include <vector>

#include "quadham/adjrep.hpp"

namespace quadham {

/// Generator of the linear equations of motion: dz/dt = M z with
/// M = Re(i H^t).  Real whenever gamma is real; imag_residual records how
/// far i H^t is from real.
struct EvolutionMatrix {
  Eigen::MatrixXd entries;
  double imag_residual = 0.0;
};

/// Throws when i H^t has an imaginary part beyond tol (model with complex
/// gamma; its Heisenberg flow is not a real linear system).
EvolutionMatrix evolution_matrix(const AdjointMatrix& H, double tol = 1e-12);

struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  bool overflow = false;  // state left the floating range; samples truncated
};

/// Classic fixed-step RK4 (order 4).  Requires dt > 0 and T >= 100 dt.
/// Sample count is floor(T/dt) + 1 unless the state overflows first.
Trajectory integrate(const EvolutionMatrix& m, const Eigen::VectorXd& z0,
                     double T, double dt);

/// Cosine-profile unit vector cos(1), cos(2), ...: no two components share a
/// symmetry, so every mode of the catalog models is excited.
Eigen::VectorXd default_initial_state(int dim);

/// Dominant angular frequencies of a Real-phase trajectory: Hann-windowed
/// power spectrum summed over components, zero-padded FFT, parabolic peak
/// interpolation.  Peaks below 1e-3 of the strongest (the Hann sidelobe
/// floor) are ignored.
std::vector<double> estimate_frequencies(const Trajectory& tr);

/// Least-squares slope of log |z(t)| over the final half of a Broken-phase
/// trajectory.  Slopes below 1e-4 are reported as a phase error (no
/// exponential growth to measure).
double growth_rate(const Trajectory& tr);

/// Scaling-and-squaring Pade approximant of e^A; reference propagator.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

}  // namespace quadham
