#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "quadham/adjrep.hpp"
#include "quadham/catalog.hpp"
#include "support/oracles.hpp"
#include "support/util.hpp"

using namespace quadham;
using quadham::testing::random_hermitian_gamma;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("build_U: K=1 matrix, involution, unit determinant") {
  UMatrix u = build_U(1);
  CHECK(u.entries(0, 0) == Complex{0.0, 0.0});
  CHECK(u.entries(0, 1) == Complex{0.0, 1.0});
  CHECK(u.entries(1, 0) == Complex{0.0, -1.0});
  CHECK(u.entries(1, 1) == Complex{0.0, 0.0});
  CHECK(max_abs(u.entries * u.entries - Eigen::MatrixXcd::Identity(2, 2)) == 0.0);

  for (int K = 1; K <= 6; ++K) {
    UMatrix uk = build_U(K);
    CHECK(max_abs(uk.entries - uk.entries.adjoint()) == 0.0);
    CHECK(std::abs(std::abs(uk.entries.determinant()) - 1.0) < 1e-12);
    CHECK(max_abs(uk.entries * uk.entries -
                  Eigen::MatrixXcd::Identity(2 * K, 2 * K)) == 0.0);
  }
  CHECK_THROWS_AS(build_U(0), DomainError);
}

TEST_CASE("U reproduces the commutator table [O_i, O_j]") {
  const int K = 2;
  UMatrix u = build_U(K);
  for (int i = 0; i < 2 * K; ++i) {
    for (int j = 0; j < 2 * K; ++j) {
      OperatorPoly c = commutator(OperatorPoly::symbol(K, basis_symbol(i, K)),
                                  OperatorPoly::symbol(K, basis_symbol(j, K)));
      CHECK(c.degree() == 0);
      CHECK(std::abs(c.coefficient({}) - u.entries(i, j)) == 0.0);
    }
  }
}

TEST_CASE("adjoint_matrix: 1D toy matches the reference entries") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int t = 0; t < 4; ++t) {
    double alpha = u(rng), beta = u(rng);
    GammaMatrix g;
    g.K = 1;
    g.entries = Eigen::MatrixXcd(2, 2);
    g.entries << alpha, beta / 2.0, beta / 2.0, 1.0;
    AdjointMatrix h = adjoint_matrix(g);
    CHECK(max_abs(h.entries - quadham::testing::printed_toy1d(alpha, beta)) <
          1e-14);
  }
}

TEST_CASE("adjoint_matrix: 2D toy and LRC match the reference entries") {
  Instantiation toy = instantiate("toy2d", {{"beta", 0.7}});
  CHECK(max_abs(toy.matrix.entries - quadham::testing::printed_toy2d(0.7)) <
        1e-14);

  Instantiation lrc = instantiate("lrc", {{"mu", 0.3}, {"gamma", 0.25}});
  CHECK(max_abs(lrc.matrix.entries - quadham::testing::printed_lrc(0.3, 0.25)) <
        1e-13);
}

TEST_CASE("adjoint_matrix_via_commutators: h = p^2") {
  OperatorPoly h(1);
  h.add_word({mom_symbol(1), mom_symbol(1)}, 1.0);
  AdjointMatrix m = adjoint_matrix_via_commutators(h);
  Eigen::MatrixXcd expect(2, 2);
  expect << 0.0, 0.0, Complex{0.0, -2.0}, 0.0;
  CHECK(max_abs(m.entries - expect) == 0.0);
  CHECK(m.provenance == Provenance::commutator);
}

TEST_CASE("the two construction routes coincide on the catalog") {
  for (const auto& spec : catalog_models()) {
    Instantiation inst = instantiate_spec(spec);
    AdjointMatrix via_comm = adjoint_matrix_via_commutators(inst.poly);
    CHECK(max_abs(inst.matrix.entries - via_comm.entries) < 1e-13);
  }
}

TEST_CASE("via_commutators reproduces the printed self-force matrix") {
  Instantiation inst = instantiate(
      "selfforce",
      {{"m", 1.3}, {"tau", 0.8}, {"k", 0.6}, {"A", 0.4}, {"B", 1.1}});
  AdjointMatrix via_comm = adjoint_matrix_via_commutators(inst.poly);
  Eigen::MatrixXcd printed =
      quadham::testing::printed_selfforce(1.3, 0.8, 0.6, 0.4, 1.1);
  CHECK(max_abs(via_comm.entries - printed) < 1e-13);
  CHECK(max_abs(inst.matrix.entries - printed) < 1e-13);
}

TEST_CASE("via_commutators rejects polynomials with linear terms") {
  OperatorPoly h(1);
  h.add_word({pos_symbol(1), pos_symbol(1)}, 1.0);
  h.add_word({mom_symbol(1)}, 0.5);
  CHECK_THROWS_AS(adjoint_matrix_via_commutators(h), NotClosedError);
}

TEST_CASE("two-route equality on random Hermitian gammas") {
  std::mt19937 rng(17);
  for (int t = 0; t < 100; ++t) {
    int K = 1 + static_cast<int>(rng() % 8);
    GammaMatrix g = random_hermitian_gamma(rng, K);
    OperatorPoly h = poly_from_gamma(g);
    AdjointMatrix formula = adjoint_matrix(extract_gamma(h));
    AdjointMatrix comm = adjoint_matrix_via_commutators(h);
    double scale = std::max(1.0, max_abs(formula.entries));
    CHECK(max_abs(formula.entries - comm.entries) < 1e-12 * scale);
  }
}

TEST_CASE("H is i times a real matrix when gamma is real") {
  for (const auto& spec : catalog_models()) {
    Instantiation inst = instantiate_spec(spec);
    CHECK(inst.matrix.entries.real().cwiseAbs().maxCoeff() <=
          1e-14 * std::max(1.0, max_abs(inst.matrix.entries)));
  }
}

TEST_CASE("verify_pseudo_hermiticity: identities hold, corruption detected") {
  for (const auto& spec : catalog_models()) {
    Instantiation inst = instantiate_spec(spec);
    UMatrix u = build_U(spec.K);
    PseudoHermReport rep = verify_pseudo_hermiticity(inst.matrix, u);
    CHECK(rep.passed);
    CHECK(rep.residual_pseudo <= 1e-12);
    CHECK(rep.residual_antireal <= 1e-12);

    AdjointMatrix bad = inst.matrix;
    bad.entries(0, 1) += 1e-3;
    PseudoHermReport bad_rep = verify_pseudo_hermiticity(bad, u);
    CHECK_FALSE(bad_rep.passed);
  }

  std::mt19937 rng(29);
  GammaMatrix g = random_hermitian_gamma(rng, 8);
  AdjointMatrix h = adjoint_matrix(g);
  CHECK(verify_pseudo_hermiticity(h, build_U(8)).passed);

  CHECK_THROWS_AS(verify_pseudo_hermiticity(h, build_U(2)), DimensionError);
}
