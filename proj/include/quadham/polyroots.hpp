#pragma once

#include <array>
#include <vector>

#include "quadham/opalg.hpp"

namespace quadham {

/// p(x) for coefficients ordered highest degree first.
Complex evaluate_poly(const std::vector<Complex>& coeffs, Complex x);

/// Magnitude bound sum |c_k| |x|^(n-k); denominator for relative residuals.
double poly_eval_scale(const std::vector<Complex>& coeffs, Complex x);

/// Roots of a x^2 + b x + c, cancellation-safe.  a must be nonzero.
std::array<Complex, 2> solve_quadratic(Complex a, Complex b, Complex c);

/// Roots of a x^3 + b x^2 + c x + d by the depressed-cubic closed form with
/// a Newton polish.  a must be nonzero.
std::array<Complex, 3> solve_cubic(Complex a, Complex b, Complex c, Complex d);

/// All roots of an arbitrary polynomial (coefficients highest first) by
/// Durand-Kerner iteration plus Newton polish.  Intended for the small
/// characteristic polynomials handled here (degree <= 16).
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

}  // namespace quadham
