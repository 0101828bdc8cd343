#include "quadham/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "quadham/polyroots.hpp"

namespace quadham {

namespace {

double value_scale(const std::vector<Complex>& values) {
  double s = 1.0;
  for (Complex v : values) {
    s = std::max(s, std::abs(v));
  }
  return s;
}

// One inverse-iteration sweep around (lambda, v); returns the improved pair
// residual.  Used only when the solver's own residual misses the gate.
double refine_eigenpair(const Eigen::MatrixXcd& h, Complex& lambda,
                        Eigen::VectorXcd& v, double h_scale) {
  const int n = static_cast<int>(h.rows());
  Eigen::MatrixXcd shifted = h - lambda * Eigen::MatrixXcd::Identity(n, n);
  for (int iter = 0; iter < 3; ++iter) {
    Eigen::VectorXcd w = shifted.colPivHouseholderQr().solve(v);
    double norm = w.norm();
    if (!std::isfinite(norm) || norm == 0.0) {
      break;
    }
    v = w / norm;
    Complex rayleigh = v.dot(h * v);  // Eigen's dot conjugates the lhs
    lambda = rayleigh;
    shifted = h - lambda * Eigen::MatrixXcd::Identity(n, n);
  }
  return (h * v - lambda * v).norm() / h_scale;
}

struct Cluster {
  std::vector<int> members;
  Complex center;
  double radius = 0.0;
  bool defective = false;
};

// Groups eigenvalues lying within `tol` of each other (transitively) and
// rank-tests every multi-member group.
std::vector<Cluster> find_clusters(const Eigen::MatrixXcd& h,
                                   const std::vector<Complex>& values,
                                   double tol) {
  const int n = static_cast<int>(values.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) <= tol) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::map<int, Cluster> by_root;
  for (int i = 0; i < n; ++i) {
    by_root[find(i)].members.push_back(i);
  }

  std::vector<Cluster> clusters;
  for (auto& [root, c] : by_root) {
    Complex sum{0.0, 0.0};
    for (int m : c.members) sum += values[m];
    c.center = sum / static_cast<double>(c.members.size());
    for (int m : c.members) {
      c.radius = std::max(c.radius, std::abs(values[m] - c.center));
    }
    if (c.members.size() >= 2) {
      Eigen::MatrixXcd shifted =
          h - c.center * Eigen::MatrixXcd::Identity(h.rows(), h.cols());
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
      const auto& sigma = svd.singularValues();
      double sigma_max = sigma.size() ? sigma(0) : 0.0;
      double thresh = std::max(50.0 * c.radius, 1e-8 * std::max(1.0, sigma_max));
      int geometric = 0;
      for (int k = 0; k < sigma.size(); ++k) {
        if (sigma(k) <= thresh) ++geometric;
      }
      c.defective = geometric < static_cast<int>(c.members.size());
    }
    clusters.push_back(std::move(c));
  }
  return clusters;
}

}  // namespace

Spectrum eigen(const AdjointMatrix& H) {
  const int n = 2 * H.K;
  if (n > 64) {
    throw DomainError("adjoint matrices beyond 64x64 are not supported");
  }
  if (H.entries.rows() != n || H.entries.cols() != n) {
    throw DimensionError("adjoint matrix must be 2K x 2K");
  }
  if (!H.entries.allFinite()) {
    throw NumericalFailure("adjoint matrix has non-finite entries", {});
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(H.entries, true);
  if (solver.info() != Eigen::Success) {
    std::vector<Complex> partial;
    if (solver.eigenvalues().size() == n) {
      partial.assign(solver.eigenvalues().data(),
                     solver.eigenvalues().data() + n);
    }
    throw NumericalFailure("eigensolver did not converge", std::move(partial));
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Complex va = solver.eigenvalues()(a), vb = solver.eigenvalues()(b);
    return va.real() != vb.real() ? va.real() < vb.real()
                                  : va.imag() < vb.imag();
  });

  Spectrum s;
  s.K = H.K;
  s.matrix = H.entries;
  s.values.resize(n);
  s.vectors.resize(n, n);
  s.residuals.resize(n);
  s.pseudo_norms.resize(n);

  const double h_scale = std::max(1.0, H.entries.cwiseAbs().maxCoeff());
  UMatrix u = build_U(H.K);

  for (int k = 0; k < n; ++k) {
    Complex lambda = solver.eigenvalues()(order[k]);
    Eigen::VectorXcd v = solver.eigenvectors().col(order[k]);
    v.normalize();
    double res = (H.entries * v - lambda * v).norm() / h_scale;
    if (res > 1e-10) {
      res = refine_eigenpair(H.entries, lambda, v, h_scale);
    }
    s.values[k] = lambda;
    s.vectors.col(k) = v;
    s.residuals[k] = res;
    s.pseudo_norms[k] = pseudo_norm(v, u);
  }
  return s;
}

std::vector<Complex> charpoly_coefficients(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) {
    throw DimensionError("characteristic polynomial needs a square matrix");
  }
  double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    std::vector<Complex> coeffs(n + 1, Complex{0.0, 0.0});
    coeffs[0] = 1.0;
    return coeffs;
  }
  Eigen::MatrixXcd a = m / scale;
  Eigen::MatrixXcd mk = a;
  std::vector<Complex> c(n + 1);
  c[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      mk = a * (mk + c[k - 1] * Eigen::MatrixXcd::Identity(n, n));
    }
    c[k] = -mk.trace() / static_cast<double>(k);
  }
  double pow = 1.0;
  for (int k = 1; k <= n; ++k) {
    pow *= scale;
    c[k] *= pow;
  }
  return c;
}

std::vector<Complex> charpoly_eigenvalues(const Eigen::MatrixXcd& m) {
  return polynomial_roots(charpoly_coefficients(m));
}

std::string phase_name(Phase p) {
  switch (p) {
    case Phase::Real: return "Real";
    case Phase::Broken: return "Broken";
    case Phase::Exceptional: return "Exceptional";
  }
  return "?";
}

PhaseLabel classify(const Spectrum& s, double reality_tol, double ep_tol) {
  PhaseLabel out;
  const double scale = value_scale(s.values);

  out.max_im = 0.0;
  for (Complex v : s.values) {
    out.max_im = std::max(out.max_im, std::abs(v.imag()));
  }
  out.min_pseudo_norm = 1e300;
  for (Complex pn : s.pseudo_norms) {
    out.min_pseudo_norm = std::min(out.min_pseudo_norm, std::abs(pn));
  }

  const double cluster_tol = 1e-6 * scale;
  std::vector<Cluster> clusters = find_clusters(s.matrix, s.values, cluster_tol);

  // A defective cluster centered on the real axis is an exceptional point;
  // its members' imaginary parts are solver splinters, not broken symmetry.
  bool real_defective = false;
  bool any_defective = false;
  double max_im_robust = 0.0;
  for (const Cluster& c : clusters) {
    any_defective = any_defective || c.defective;
    bool real_center =
        std::abs(c.center.imag()) <= std::max(reality_tol * scale, cluster_tol);
    if (c.defective && real_center) {
      real_defective = true;
      max_im_robust = std::max(max_im_robust, std::abs(c.center.imag()));
    } else {
      for (int m : c.members) {
        max_im_robust = std::max(max_im_robust, std::abs(s.values[m].imag()));
      }
    }
  }

  if (max_im_robust > reality_tol * scale) {
    out.label = Phase::Broken;
  } else if (real_defective || (any_defective && out.min_pseudo_norm <= ep_tol)) {
    out.label = Phase::Exceptional;
  } else {
    // min_pseudo_norm can dip below ep_tol for degenerate-but-diagonalizable
    // spectra; the rank test above already cleared those, so they stay Real.
    out.label = Phase::Real;
  }
  return out;
}

Complex pseudo_norm(const Eigen::VectorXcd& c, const UMatrix& u) {
  if (c.size() != u.entries.rows()) {
    throw DimensionError("vector length does not match U");
  }
  if (c.norm() == 0.0) {
    throw DomainError("pseudo_norm of the zero vector");
  }
  return c.dot(u.entries * c);  // dot conjugates the left factor
}

SpectrumPairing pair_spectrum(const std::vector<Complex>& values, double tol) {
  const int n = static_cast<int>(values.size());
  const double scale = value_scale(values);
  SpectrumPairing out;

  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    int best = -1;
    double best_d = 1e300;
    for (int j = 0; j < n; ++j) {
      if (j == i || used[j]) continue;
      double d = std::abs(values[i] + values[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best < 0 || best_d > tol * scale) {
      throw PairingError("eigenvalue " + std::to_string(i) +
                         " has no -lambda partner within tolerance");
    }
    used[i] = used[best] = true;
    out.negation_pairs.emplace_back(i, best);
  }

  std::fill(used.begin(), used.end(), false);
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    if (std::abs(values[i].imag()) <= tol * scale) {
      used[i] = true;
      out.conjugate_pairs.emplace_back(i, i);
      continue;
    }
    int best = -1;
    double best_d = 1e300;
    for (int j = 0; j < n; ++j) {
      if (j == i || used[j]) continue;
      double d = std::abs(std::conj(values[i]) - values[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best < 0 || best_d > tol * scale) {
      throw PairingError("eigenvalue " + std::to_string(i) +
                         " has no conjugate partner within tolerance");
    }
    used[i] = used[best] = true;
    out.conjugate_pairs.emplace_back(i, best);
  }

  out.all_real = true;
  for (Complex v : values) {
    out.all_real = out.all_real && std::abs(v.imag()) <= tol * scale;
  }
  if (out.all_real) {
    for (Complex v : values) {
      out.ordered_real.push_back(v.real());
    }
    std::sort(out.ordered_real.begin(), out.ordered_real.end());
  }
  return out;
}

LadderVector ladder_from_spectrum(const Spectrum& s, int index) {
  if (index < 0 || index >= static_cast<int>(s.values.size())) {
    throw DomainError("eigenpair index out of range");
  }
  return LadderVector{s.vectors.col(index), s.values[index]};
}

OperatorPoly ladder_poly(int K, const Eigen::VectorXcd& coefficients) {
  if (coefficients.size() != 2 * K) {
    throw DimensionError("ladder coefficients must have length 2K");
  }
  OperatorPoly z(K);
  for (int i = 0; i < 2 * K; ++i) {
    if (coefficients(i) != 0.0) {
      z.add_word({basis_symbol(i, K)}, coefficients(i));
    }
  }
  return z;
}

double ladder_residual(const OperatorPoly& h, const LadderVector& z) {
  OperatorPoly zp = ladder_poly(h.K(), z.coefficients);
  OperatorPoly r = commutator(h, zp) - z.eigenvalue * zp;
  double res = r.max_abs_coefficient();
  double lam_scale = std::max(1.0, std::abs(z.eigenvalue));
  if (std::abs(z.eigenvalue.imag()) <= kRealityTol * lam_scale) {
    // real eigenvalue: Z^+ must ladder downward, [H, Z^+] = -lambda Z^+
    OperatorPoly zd = adjoint(zp);
    OperatorPoly r2 = commutator(h, zd) + std::conj(z.eigenvalue) * zd;
    res = std::max(res, r2.max_abs_coefficient());
  }
  return res;
}

double constant_of_motion_residual(const OperatorPoly& h,
                                   const LadderVector& z) {
  OperatorPoly zp = ladder_poly(h.K(), z.coefficients);
  OperatorPoly number_like = adjoint(zp) * zp;
  return commutator(h, number_like).max_abs_coefficient();
}

double ground_energy(const Spectrum& s) {
  PhaseLabel label = classify(s);
  if (label.label != Phase::Real) {
    throw PhaseError("ground energy is defined only in the Real phase (got " +
                     phase_name(label.label) + ")");
  }
  double sum = 0.0;
  for (Complex v : s.values) {
    if (v.real() > 0.0) {
      sum += v.real();
    }
  }
  return 0.5 * sum;
}

}  // namespace quadham
