#include "quadham/adjrep.hpp"

#include <cmath>
#include <string>

namespace quadham {

namespace {
constexpr Complex kImagUnit{0.0, 1.0};
}

UMatrix build_U(int K) {
  if (K < 1) {
    throw DomainError("basis size K must be >= 1");
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * K, 2 * K);
  for (int m = 0; m < K; ++m) {
    u(m, K + m) = kImagUnit;
    u(K + m, m) = -kImagUnit;
  }
  return {K, u};
}

AdjointMatrix adjoint_matrix(const GammaMatrix& gamma) {
  const int n = 2 * gamma.K;
  if (gamma.entries.rows() != n || gamma.entries.cols() != n) {
    throw DimensionError("gamma must be 2K x 2K");
  }
  UMatrix u = build_U(gamma.K);
  AdjointMatrix h;
  h.K = gamma.K;
  h.entries = (gamma.entries + gamma.entries.transpose()) * u.entries;
  h.provenance = Provenance::formula;
  return h;
}

AdjointMatrix adjoint_matrix_via_commutators(const OperatorPoly& h) {
  const int K = h.K();
  const int n = 2 * K;
  const double scale = std::max(1.0, h.max_abs_coefficient());

  AdjointMatrix out;
  out.K = K;
  out.entries = Eigen::MatrixXcd::Zero(n, n);
  out.provenance = Provenance::commutator;

  for (int col = 0; col < n; ++col) {
    OperatorPoly basis_op = OperatorPoly::symbol(K, basis_symbol(col, K));
    OperatorPoly c = commutator(h, basis_op);
    for (const auto& [word, coeff] : c.terms()) {
      if (word.empty()) {
        if (std::abs(coeff) > 1e-12 * scale) {
          throw NotClosedError(
              "[H, O_" + std::to_string(col + 1) +
              "] has a constant component; H is not a homogeneous quadratic");
        }
        continue;
      }
      if (word.size() > 1) {
        throw NotClosedError("[H, O_" + std::to_string(col + 1) +
                             "] has a degree-" + std::to_string(word.size()) +
                             " component; H is not quadratic");
      }
      out.entries(basis_index(word[0], K), col) = coeff;
    }
  }
  return out;
}

PseudoHermReport verify_pseudo_hermiticity(const AdjointMatrix& H,
                                           const UMatrix& U, double tol) {
  if (H.K != U.K) {
    throw DimensionError("adjoint matrix and U have different basis sizes");
  }
  const Eigen::MatrixXcd& h = H.entries;
  const Eigen::MatrixXcd& u = U.entries;
  double scale = std::max(1.0, h.cwiseAbs().maxCoeff());

  PseudoHermReport report;
  report.residual_pseudo =
      (h.adjoint() * u - u * h).cwiseAbs().maxCoeff() / scale;
  report.residual_antireal =
      (h.adjoint() + h.transpose()).cwiseAbs().maxCoeff() / scale;
  report.passed =
      report.residual_pseudo <= tol && report.residual_antireal <= tol;
  return report;
}

}  // namespace quadham
