#pragma once

#include <Eigen/Dense>

#include "quadham/hamparse.hpp"
#include "quadham/opalg.hpp"

namespace quadham {

/// The commutator table of the canonical basis: U = i [[0, I], [-I, 0]],
/// with U^+ = U^-1 = U.
struct UMatrix {
  int K = 0;
  Eigen::MatrixXcd entries;
};

enum class Provenance { formula, commutator };

/// Adjoint (regular) matrix representation: column i holds the expansion of
/// [H, O_i] over the basis.  Anti-real (H* = -H) and pseudo-Hermitian
/// (H^+ U = U H) for symmetric quadratic Hamiltonians.
struct AdjointMatrix {
  int K = 0;
  Eigen::MatrixXcd entries;
  Provenance provenance = Provenance::formula;
};

struct PseudoHermReport {
  double residual_pseudo = 0.0;    // max-norm of H^+ U - U H, scaled
  double residual_antireal = 0.0;  // max-norm of H^+ + H^t, scaled
  bool passed = false;
};

UMatrix build_U(int K);

/// H = (gamma + gamma^t) U.
AdjointMatrix adjoint_matrix(const GammaMatrix& gamma);

/// Column i of H from the coefficients of [h, O_i]; independent of the
/// gamma route, so the two constructions cross-check each other.  A nonzero
/// constant or quadratic part in any [h, O_i] means h is not a homogeneous
/// quadratic and is reported as a closure failure.
AdjointMatrix adjoint_matrix_via_commutators(const OperatorPoly& h);

/// Residuals of the two structural identities, in max-norm scaled by
/// max(1, |H|).
PseudoHermReport verify_pseudo_hermiticity(const AdjointMatrix& H,
                                           const UMatrix& U,
                                           double tol = 1e-10);

}  // namespace quadham
