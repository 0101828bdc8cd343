#pragma once

#include <Eigen/Eigenvalues>
#include <complex>
#include <random>
#include <vector>

#include "quadham/hamparse.hpp"

namespace quadham::testing {

// Random Hermitian gamma: real diagonal, conjugate-symmetric off-diagonal.
inline GammaMatrix random_hermitian_gamma(std::mt19937& rng, int K,
                                          double range = 2.0) {
  std::uniform_real_distribution<double> u(-range, range);
  int n = 2 * K;
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = u(rng);
    for (int j = i + 1; j < n; ++j) {
      Complex v{u(rng), u(rng)};
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return GammaMatrix{K, g, Complex{u(rng), 0.0}};
}

inline std::vector<Complex> eigenvalues_of(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<Complex> v(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + m.rows());
  return v;
}

// Greedy multiset match: every value of a must sit within
// rel_tol * max(1, |value|) of a distinct partner in b.
inline bool multiset_close(std::vector<Complex> a, std::vector<Complex> b,
                           double rel_tol) {
  if (a.size() != b.size()) return false;
  for (Complex x : a) {
    double best = 1e300;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best > rel_tol * std::max(1.0, std::abs(x))) return false;
    b.erase(b.begin() + best_j);
  }
  return true;
}

}  // namespace quadham::testing
