#include "quadham/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace quadham {

Complex evaluate_poly(const std::vector<Complex>& coeffs, Complex x) {
  Complex acc{0.0, 0.0};
  for (Complex c : coeffs) {
    acc = acc * x + c;
  }
  return acc;
}

double poly_eval_scale(const std::vector<Complex>& coeffs, Complex x) {
  double acc = 0.0;
  double ax = std::abs(x);
  for (Complex c : coeffs) {
    acc = acc * ax + std::abs(c);
  }
  return std::max(acc, 1e-300);
}

namespace {

Complex poly_derivative_at(const std::vector<Complex>& coeffs, Complex x) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  Complex acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    acc = acc * x + coeffs[k] * static_cast<double>(n - k);
  }
  return acc;
}

void newton_polish(const std::vector<Complex>& coeffs, Complex& x, int steps) {
  for (int s = 0; s < steps; ++s) {
    Complex d = poly_derivative_at(coeffs, x);
    if (std::abs(d) < 1e-300) {
      return;  // multiple root; leave the closed-form value alone
    }
    Complex step = evaluate_poly(coeffs, x) / d;
    x -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) {
      return;
    }
  }
}

}  // namespace

std::array<Complex, 2> solve_quadratic(Complex a, Complex b, Complex c) {
  if (a == 0.0) {
    throw DomainError("solve_quadratic: leading coefficient is zero");
  }
  Complex sq = std::sqrt(b * b - 4.0 * a * c);
  // pick the sign that adds magnitudes instead of cancelling
  if (std::real(std::conj(b) * sq) < 0.0) {
    sq = -sq;
  }
  Complex q = -0.5 * (b + sq);
  std::array<Complex, 2> roots;
  if (q == 0.0) {
    roots = {Complex{0.0, 0.0}, -b / a};
  } else {
    roots = {q / a, c / q};
  }
  std::vector<Complex> coeffs{a, b, c};
  newton_polish(coeffs, roots[0], 2);
  newton_polish(coeffs, roots[1], 2);
  return roots;
}

std::array<Complex, 3> solve_cubic(Complex a, Complex b, Complex c, Complex d) {
  if (a == 0.0) {
    throw DomainError("solve_cubic: leading coefficient is zero");
  }
  const Complex d0 = b * b - 3.0 * a * c;
  const Complex d1 = 2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d;
  const Complex inner = std::sqrt(d1 * d1 - 4.0 * d0 * d0 * d0);

  Complex base = (d1 + inner) / 2.0;
  if (std::abs(base) < std::abs((d1 - inner) / 2.0)) {
    base = (d1 - inner) / 2.0;
  }
  std::array<Complex, 3> roots;
  if (std::abs(base) == 0.0 && std::abs(d0) == 0.0) {
    roots.fill(-b / (3.0 * a));  // triple root
    return roots;
  }
  const Complex big_c = std::pow(base, 1.0 / 3.0);
  const Complex zeta{-0.5, std::sqrt(3.0) / 2.0};
  std::vector<Complex> coeffs{a, b, c, d};
  Complex rot{1.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    Complex ck = big_c * rot;
    roots[k] = -(b + ck + d0 / ck) / (3.0 * a);
    newton_polish(coeffs, roots[k], 4);
    rot *= zeta;
  }
  return roots;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs_in) {
  // strip leading zeros
  std::vector<Complex> coeffs = coeffs_in;
  while (!coeffs.empty() && coeffs.front() == 0.0) {
    coeffs.erase(coeffs.begin());
  }
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) {
    return {};
  }
  if (n == 1) {
    return {-coeffs[1] / coeffs[0]};
  }
  // monic copy
  std::vector<Complex> monic(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    monic[k] = coeffs[k] / coeffs[0];
  }
  double radius = 0.0;
  for (int k = 1; k <= n; ++k) {
    radius = std::max(radius, std::pow(std::abs(monic[k]), 1.0 / k));
  }
  radius = 1.0 + 1.5 * radius;

  std::vector<Complex> r(n);
  for (int j = 0; j < n; ++j) {
    double angle = 2.0 * M_PI * j / n + 0.3;
    r[j] = radius * Complex{std::cos(angle), std::sin(angle)};
  }
  for (int iter = 0; iter < 600; ++iter) {
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      Complex denom{1.0, 0.0};
      for (int k = 0; k < n; ++k) {
        if (k != j) {
          denom *= r[j] - r[k];
        }
      }
      if (std::abs(denom) < 1e-300) {
        continue;
      }
      Complex step = evaluate_poly(monic, r[j]) / denom;
      r[j] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(r[j])));
    }
    if (worst < 1e-15) {
      break;
    }
  }
  for (int j = 0; j < n; ++j) {
    newton_polish(monic, r[j], 3);
  }
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

}  // namespace quadham
