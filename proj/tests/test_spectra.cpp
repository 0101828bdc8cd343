#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "quadham/catalog.hpp"
#include "quadham/spectra.hpp"
#include "support/oracles.hpp"
#include "support/util.hpp"

using namespace quadham;
using quadham::testing::multiset_close;
using quadham::testing::random_hermitian_gamma;

namespace {

Spectrum spectrum_of(const std::string& id, const ParamBindings& p = {}) {
  return eigen(instantiate(id, p).matrix);
}

AdjointMatrix harmonic_oscillator() {
  GammaMatrix g;
  g.K = 1;
  g.entries = Eigen::MatrixXcd::Identity(2, 2);
  return adjoint_matrix(g);  // i [[0, 2], [-2, 0]]
}

}  // namespace

TEST_CASE("eigen: 1D toy eigenvalues in both phases") {
  Spectrum real_phase = spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 1.0}});
  REQUIRE(real_phase.values.size() == 2);
  CHECK(std::abs(real_phase.values[0] - Complex{-std::sqrt(3.0), 0.0}) < 1e-12);
  CHECK(std::abs(real_phase.values[1] - Complex{std::sqrt(3.0), 0.0}) < 1e-12);

  Spectrum broken = spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 3.0}});
  CHECK(std::abs(broken.values[0] - Complex{0.0, -std::sqrt(5.0)}) < 1e-12);
  CHECK(std::abs(broken.values[1] - Complex{0.0, std::sqrt(5.0)}) < 1e-12);

  for (double r : real_phase.residuals) CHECK(r <= 1e-10);
  for (double r : broken.residuals) CHECK(r <= 1e-10);
}

TEST_CASE("eigen: 2D toy eigenvalues at beta=1") {
  Spectrum s = spectrum_of("toy2d", {{"beta", 1.0}});
  std::vector<Complex> expect{{-std::sqrt(6.0), 0.0},
                              {-std::sqrt(2.0), 0.0},
                              {std::sqrt(2.0), 0.0},
                              {std::sqrt(6.0), 0.0}};
  REQUIRE(s.values.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(s.values[k] - expect[k]) < 1e-12);
  }
}

TEST_CASE("eigen guards: dimension cap and non-finite input") {
  AdjointMatrix big;
  big.K = 33;
  big.entries = Eigen::MatrixXcd::Zero(66, 66);
  CHECK_THROWS_AS(eigen(big), DomainError);

  AdjointMatrix nan_mat;
  nan_mat.K = 1;
  nan_mat.entries = Eigen::MatrixXcd::Zero(2, 2);
  nan_mat.entries(0, 0) = std::nan("");
  CHECK_THROWS_AS(eigen(nan_mat), NumericalFailure);
}

TEST_CASE("classify: toy models across their transitions") {
  CHECK(classify(spectrum_of("toy2d", {{"beta", 1.0}})).label == Phase::Real);
  CHECK(classify(spectrum_of("toy2d", {{"beta", 3.0}})).label == Phase::Broken);
  CHECK(classify(spectrum_of("toy2d", {{"beta", 2.0}})).label ==
        Phase::Exceptional);
  CHECK(classify(spectrum_of("toy2d", {{"beta", -2.0}})).label ==
        Phase::Exceptional);
  // degenerate but diagonalizable: two decoupled oscillators
  CHECK(classify(spectrum_of("toy2d", {{"beta", 0.0}})).label == Phase::Real);

  CHECK(classify(spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 1.0}})).label ==
        Phase::Real);
  CHECK(classify(spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 3.0}})).label ==
        Phase::Broken);
  CHECK(classify(spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 2.0}})).label ==
        Phase::Exceptional);

  PhaseLabel broken = classify(spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 3.0}}));
  CHECK(broken.max_im == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("pseudo_norm: harmonic-oscillator closed forms") {
  UMatrix u = build_U(1);
  const Complex I{0.0, 1.0};
  Eigen::VectorXcd plus(2), minus(2);
  plus << I / std::sqrt(2.0), 1.0 / std::sqrt(2.0);    // eigenvector for +2
  minus << 1.0 / std::sqrt(2.0), I / std::sqrt(2.0);   // eigenvector for -2

  AdjointMatrix ho = harmonic_oscillator();
  CHECK((ho.entries * plus - 2.0 * plus).norm() < 1e-14);
  CHECK((ho.entries * minus + 2.0 * minus).norm() < 1e-14);

  CHECK(std::abs(pseudo_norm(plus, u) - Complex{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(pseudo_norm(minus, u) - Complex{-1.0, 0.0}) < 1e-14);
  // cross term between eigenvectors of unequal conjugated eigenvalues
  CHECK(std::abs(minus.dot(u.entries * plus)) < 1e-14);

  CHECK_THROWS_AS(pseudo_norm(Eigen::VectorXcd::Zero(2), u), DomainError);
}

TEST_CASE("pseudo-norms vanish in the broken phase") {
  Spectrum s = spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 3.0}});
  for (Complex pn : s.pseudo_norms) {
    CHECK(std::abs(pn) <= 1e-10);
  }
}

TEST_CASE("pseudo-orthogonality Gram matrix on random models") {
  std::mt19937 rng(404);
  UMatrix cached_u[9];
  for (int t = 0; t < 60; ++t) {
    int K = 1 + static_cast<int>(rng() % 8);
    AdjointMatrix h = adjoint_matrix(random_hermitian_gamma(rng, K));
    Spectrum s = eigen(h);
    UMatrix u = build_U(K);
    double scale = 1.0;
    for (Complex v : s.values) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < 2 * K; ++i) {
      for (int j = 0; j < 2 * K; ++j) {
        Complex gap = s.values[j] - std::conj(s.values[i]);
        if (std::abs(gap) < 1e-6 * scale) continue;
        Complex gram = s.vectors.col(i).dot(u.entries * s.vectors.col(j));
        CHECK(std::abs(gram) <= 1e-9);
      }
    }
    (void)cached_u;
  }
}

TEST_CASE("pair_spectrum: worked examples") {
  double s3 = std::sqrt(3.0);
  SpectrumPairing a = pair_spectrum({{-s3, 0.0}, {s3, 0.0}});
  CHECK(a.negation_pairs.size() == 1);
  CHECK(a.conjugate_pairs.size() == 2);  // both real, self-paired
  CHECK(a.all_real);
  CHECK(a.ordered_real == std::vector<double>{-s3, s3});

  double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  SpectrumPairing b = pair_spectrum({{-r6, 0}, {-r2, 0}, {r2, 0}, {r6, 0}});
  CHECK(b.negation_pairs.size() == 2);
  CHECK(b.ordered_real == std::vector<double>{-r6, -r2, r2, r6});

  double s5 = std::sqrt(5.0);
  SpectrumPairing c = pair_spectrum({{0.0, -s5}, {0.0, s5}});
  REQUIRE(c.negation_pairs.size() == 1);
  REQUIRE(c.conjugate_pairs.size() == 1);
  CHECK_FALSE(c.all_real);
  // the +/- pair is simultaneously the conjugate pair
  auto norm_pair = [](std::pair<int, int> p) {
    return std::pair{std::min(p.first, p.second), std::max(p.first, p.second)};
  };
  CHECK(norm_pair(c.negation_pairs[0]) == norm_pair(c.conjugate_pairs[0]));

  CHECK_THROWS_AS(pair_spectrum({{1.0, 0.0}, {2.0, 0.0}}), PairingError);
}

TEST_CASE("pairing holds across the random corpus") {
  std::mt19937 rng(505);
  for (int t = 0; t < 40; ++t) {
    int K = 1 + static_cast<int>(rng() % 6);
    Spectrum s = eigen(adjoint_matrix(random_hermitian_gamma(rng, K)));
    SpectrumPairing pairing = pair_spectrum(s.values);
    CHECK(pairing.negation_pairs.size() == static_cast<std::size_t>(K));
  }
}

TEST_CASE("ladder residuals: oscillator, 1D toy, LRC") {
  Spectrum ho = eigen(harmonic_oscillator());
  for (int k = 0; k < 2; ++k) {
    OperatorPoly h(1);
    h.add_word({pos_symbol(1), pos_symbol(1)}, 1.0);
    h.add_word({mom_symbol(1), mom_symbol(1)}, 1.0);
    CHECK(ladder_residual(h, ladder_from_spectrum(ho, k)) <= 1e-12);
  }

  Instantiation toy = instantiate("toy1d", {{"alpha", 1.0}, {"beta", 1.0}});
  Spectrum ts = eigen(toy.matrix);
  for (int k = 0; k < 2; ++k) {
    CHECK(ladder_residual(toy.poly, ladder_from_spectrum(ts, k)) <= 1e-10);
  }

  Instantiation lrc = instantiate("lrc", {{"mu", 0.2}, {"gamma", 0.1}});
  Spectrum ls = eigen(lrc.matrix);
  for (int k = 0; k < 4; ++k) {
    CHECK(ladder_residual(lrc.poly, ladder_from_spectrum(ls, k)) <= 1e-10);
  }
}

TEST_CASE("constants of motion: Z^+ Z commutes with H") {
  Spectrum ho = eigen(harmonic_oscillator());
  OperatorPoly h(1);
  h.add_word({pos_symbol(1), pos_symbol(1)}, 1.0);
  h.add_word({mom_symbol(1), mom_symbol(1)}, 1.0);
  CHECK(constant_of_motion_residual(h, ladder_from_spectrum(ho, 0)) <= 1e-12);

  Instantiation toy = instantiate("toy2d", {{"beta", 1.0}});
  Spectrum s = eigen(toy.matrix);
  for (int k = 0; k < 4; ++k) {
    if (s.values[k].real() <= 0.0) continue;
    CHECK(constant_of_motion_residual(toy.poly, ladder_from_spectrum(s, k)) <=
          1e-10);
  }
}

TEST_CASE("ground_energy: closed-form values and phase guard") {
  CHECK(ground_energy(spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 0.0}})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(ground_energy(spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 1.0}})) -
                 std::sqrt(3.0) / 2.0) < 1e-12);

  double g2d = ground_energy(spectrum_of("toy2d", {{"beta", 1.0}}));
  CHECK(std::abs(g2d - (std::sqrt(2.0) + std::sqrt(6.0)) / 2.0) < 1e-12);
  CHECK(std::abs(g2d - 4.0 * quadham::testing::toy2d_gaussian_a(1.0)) < 1e-10);

  CHECK_THROWS_AS(
      ground_energy(spectrum_of("toy1d", {{"alpha", 1.0}, {"beta", 3.0}})),
      PhaseError);
  CHECK_THROWS_AS(ground_energy(spectrum_of("toy2d", {{"beta", 2.0}})),
                  PhaseError);
}

TEST_CASE("characteristic-polynomial route agrees with QR") {
  for (const auto& spec : catalog_models()) {
    Instantiation inst = instantiate_spec(spec);
    Spectrum s = eigen(inst.matrix);
    auto roots = charpoly_eigenvalues(inst.matrix.entries);
    CHECK(multiset_close(s.values, roots, 1e-8));
  }
  std::mt19937 rng(606);
  for (int t = 0; t < 25; ++t) {
    int K = 1 + static_cast<int>(rng() % 4);
    AdjointMatrix h = adjoint_matrix(random_hermitian_gamma(rng, K));
    Spectrum s = eigen(h);
    CHECK(multiset_close(s.values, charpoly_eigenvalues(h.entries), 1e-8));
  }
}

TEST_CASE("charpoly coefficients reproduce the model xi polynomials") {
  // Pi_i (xi - lambda_i^2) must match charpoly_xi up to normalization.
  Instantiation gl = instantiate("gainloss",
                                 {{"omega", 1.1}, {"gamma", 0.3}, {"epsilon", 0.4}});
  Spectrum s = eigen(gl.matrix);
  auto xi_coeffs = charpoly_xi("gainloss",
                               {{"omega", 1.1}, {"gamma", 0.3}, {"epsilon", 0.4}});
  // evaluate at each lambda^2: residual relative to the evaluation scale
  for (Complex v : s.values) {
    Complex xi = v * v;
    Complex acc{0.0, 0.0};
    double mag = 0.0;
    for (double c : xi_coeffs) {
      acc = acc * xi + c;
      mag = mag * std::abs(xi) + std::abs(c);
    }
    CHECK(std::abs(acc) / std::max(mag, 1.0) < 1e-10);
  }
}

TEST_CASE("spectrum invariance under negation and conjugation") {
  std::mt19937 rng(707);
  for (int t = 0; t < 30; ++t) {
    int K = 1 + static_cast<int>(rng() % 6);
    Spectrum s = eigen(adjoint_matrix(random_hermitian_gamma(rng, K)));
    std::vector<Complex> negated, conjugated;
    for (Complex v : s.values) {
      negated.push_back(-v);
      conjugated.push_back(std::conj(v));
    }
    CHECK(multiset_close(s.values, negated, 1e-8));
    CHECK(multiset_close(s.values, conjugated, 1e-8));
  }
}
