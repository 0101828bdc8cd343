#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>

#include "quadham/opalg.hpp"

namespace quadham {

using ParamBindings = std::map<std::string, double>;

/// Hermitian coefficient matrix of a quadratic Hamiltonian in the basis
/// (x_1..x_K, p_1..p_K), plus the scalar left over by Weyl symmetrization.
struct GammaMatrix {
  int K = 0;
  Eigen::MatrixXcd entries;  // 2K x 2K
  Complex scalar_remainder{0.0, 0.0};
};

/// Parses a Hamiltonian expression into a normal-ordered polynomial.
///
/// Grammar: numbers, the imaginary unit `i`, bound parameter identifiers,
/// operator identifiers x1..xK / p1..pK with aliases x,y,z,w / px,py,pz,pw
/// (and bare p for p1) when the index fits K, binary + - * /, unary minus,
/// integer powers ^ (operators up to 2, scalars up to 9), parentheses.
/// Operator multiplication keeps the written order.  Division only by
/// nonzero scalars.  The result must have operator degree <= 2.
OperatorPoly parse(const std::string& src, const ParamBindings& params, int K);

/// Weyl-symmetrized extraction of gamma from a degree-<=2 polynomial with no
/// linear terms.  Each off-diagonal pair O_i O_j contributes half its
/// coefficient to gamma_ij and gamma_ji plus the reordering constant to the
/// scalar remainder, so poly_from_gamma(extract_gamma(p)) == p exactly.
/// Unless `permissive`, a non-Hermitian gamma or a remainder with imaginary
/// part beyond tol * max(1, |gamma|) is rejected.
GammaMatrix extract_gamma(const OperatorPoly& poly, bool permissive = false,
                          double tol = 1e-10);

/// Sum_ij gamma_ij O_i O_j + remainder, rebuilt through the operator algebra.
OperatorPoly poly_from_gamma(const GammaMatrix& g);

}  // namespace quadham
