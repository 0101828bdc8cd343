#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "quadham/adjrep.hpp"
#include "quadham/opalg.hpp"

namespace quadham {

// Default tolerances.  reality/pairing are scaled by max(1, |lambda|);
// the exceptional-point tolerance applies to pseudo-norms of unit vectors.
inline constexpr double kRealityTol = 1e-9;
inline constexpr double kEpTol = 1e-7;
inline constexpr double kPairingTol = 1e-8;

/// Full eigendecomposition of an adjoint matrix.  Values are sorted by
/// (Re, Im); vectors are unit columns aligned with them.
struct Spectrum {
  int K = 0;
  Eigen::MatrixXcd matrix;
  std::vector<Complex> values;
  Eigen::MatrixXcd vectors;
  std::vector<double> residuals;      // |H C - lambda C| / max(1, |H|)
  std::vector<Complex> pseudo_norms;  // C^+ U C per unit eigenvector
};

/// QR-based decomposition (Hessenberg reduction + shifted deflation inside
/// Eigen's ComplexEigenSolver) with a residual gate and inverse-iteration
/// refinement.  Dimensions up to 64.
Spectrum eigen(const AdjointMatrix& H);

/// Monic characteristic polynomial, coefficients highest first
/// (Faddeev-LeVerrier with norm scaling).
std::vector<Complex> charpoly_coefficients(const Eigen::MatrixXcd& m);

/// Second eigenvalue route: characteristic polynomial + polynomial root
/// finding.  Cross-checks the QR route for small matrices (2K <= 8).
std::vector<Complex> charpoly_eigenvalues(const Eigen::MatrixXcd& m);

enum class Phase { Real, Broken, Exceptional };
std::string phase_name(Phase p);

struct PhaseLabel {
  Phase label = Phase::Real;
  double max_im = 0.0;           // max |Im lambda|
  double min_pseudo_norm = 0.0;  // min |C^+ U C| over unit eigenvectors
};

/// Real / Broken / Exceptional classification.
///
/// Exceptional points are detected by the vanishing pseudo-norm backed by a
/// rank test on clustered eigenvalues: a defective cluster centered on the
/// real axis is an exceptional point even though the solver splits it by
/// ~sqrt(eps) into possibly-complex pairs, so those splinters never count
/// as Broken.  Degenerate but diagonalizable spectra stay Real.
PhaseLabel classify(const Spectrum& s, double reality_tol = kRealityTol,
                    double ep_tol = kEpTol);

/// C^+ U C for a unit vector C.
Complex pseudo_norm(const Eigen::VectorXcd& c, const UMatrix& u);

/// How the eigenvalues pair under negation and conjugation.  Entries are
/// index pairs into the input list; a real eigenvalue conjugate-pairs with
/// itself.  ordered_real is the ascending eigenvalue list when the whole
/// spectrum is real.
struct SpectrumPairing {
  std::vector<std::pair<int, int>> negation_pairs;
  std::vector<std::pair<int, int>> conjugate_pairs;
  std::vector<double> ordered_real;
  bool all_real = false;
};

SpectrumPairing pair_spectrum(const std::vector<Complex>& values,
                              double tol = kPairingTol);

/// Z = sum_i c_i O_i with [H, Z] = lambda Z.
struct LadderVector {
  Eigen::VectorXcd coefficients;
  Complex eigenvalue;
};

LadderVector ladder_from_spectrum(const Spectrum& s, int index);
OperatorPoly ladder_poly(int K, const Eigen::VectorXcd& coefficients);

/// Max coefficient magnitude of [h, Z] - lambda Z, rebuilt symbolically.
/// For real lambda the adjoint pair [h, Z^+] + lambda Z^+ is folded in.
double ladder_residual(const OperatorPoly& h, const LadderVector& z);

/// Max coefficient magnitude of [h, Z^+ Z]; small values certify Z^+ Z as a
/// constant of motion (real simple lambda assumed).
double constant_of_motion_residual(const OperatorPoly& h,
                                   const LadderVector& z);

/// Half-sum of the positive eigenvalues.  Requires a Real-phase spectrum.
double ground_energy(const Spectrum& s);

}  // namespace quadham
