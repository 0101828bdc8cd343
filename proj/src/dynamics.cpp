#include "quadham/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace quadham {

namespace {

// Leaves headroom for the RK4 stage products; log-norms stay computable.
constexpr double kOverflowGuard = 1e250;

void fft_inplace(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double angle = -2.0 * M_PI / static_cast<double>(len);
    Complex wl{std::cos(angle), std::sin(angle)};
    for (std::size_t i = 0; i < n; i += len) {
      Complex w{1.0, 0.0};
      for (std::size_t j = 0; j < len / 2; ++j) {
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

double stable_log_norm(const Eigen::VectorXd& z) {
  double m = z.cwiseAbs().maxCoeff();
  if (m == 0.0) return -1e300;
  return std::log(m) + std::log((z / m).norm());
}

}  // namespace

EvolutionMatrix evolution_matrix(const AdjointMatrix& H, double tol) {
  Eigen::MatrixXcd generator =
      Complex{0.0, 1.0} * H.entries.transpose();
  EvolutionMatrix m;
  m.imag_residual = generator.imag().cwiseAbs().maxCoeff();
  double scale = std::max(1.0, generator.cwiseAbs().maxCoeff());
  if (m.imag_residual > tol * scale) {
    throw DomainError(
        "i H^t is not real (residual " + std::to_string(m.imag_residual) +
        "); the model's gamma must be real for classical evolution");
  }
  m.entries = generator.real();
  return m;
}

Trajectory integrate(const EvolutionMatrix& m, const Eigen::VectorXd& z0,
                     double T, double dt) {
  if (!(dt > 0.0)) {
    throw DomainError("integration step must be positive");
  }
  if (T < 100.0 * dt) {
    throw DomainError("horizon too short: require T >= 100 dt");
  }
  if (z0.size() != m.entries.rows()) {
    throw DimensionError("initial state has wrong dimension");
  }

  const int steps = static_cast<int>(std::floor(T / dt));
  Trajectory tr;
  tr.dt = dt;
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);

  Eigen::VectorXd z = z0;
  tr.times.push_back(0.0);
  tr.states.push_back(z);
  for (int k = 1; k <= steps; ++k) {
    Eigen::VectorXd k1 = m.entries * z;
    Eigen::VectorXd k2 = m.entries * (z + 0.5 * dt * k1);
    Eigen::VectorXd k3 = m.entries * (z + 0.5 * dt * k2);
    Eigen::VectorXd k4 = m.entries * (z + dt * k3);
    z += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!z.allFinite() || z.cwiseAbs().maxCoeff() > kOverflowGuard) {
      tr.overflow = true;
      break;
    }
    tr.times.push_back(k * dt);
    tr.states.push_back(z);
  }
  return tr;
}

Eigen::VectorXd default_initial_state(int dim) {
  Eigen::VectorXd v(dim);
  for (int j = 0; j < dim; ++j) {
    v(j) = std::cos(static_cast<double>(j + 1));
  }
  return v / v.norm();
}

std::vector<double> estimate_frequencies(const Trajectory& tr) {
  const std::size_t n = tr.states.size();
  if (n < 128) {
    throw DomainError("trajectory too short for frequency estimation");
  }
  const int dim = static_cast<int>(tr.states[0].size());
  const std::size_t pad = next_pow2(8 * n);

  std::vector<double> power(pad / 2 + 1, 0.0);
  std::vector<Complex> buf;
  for (int j = 0; j < dim; ++j) {
    buf.assign(pad, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
      double hann =
          0.5 * (1.0 - std::cos(2.0 * M_PI * k / static_cast<double>(n - 1)));
      buf[k] = Complex{tr.states[k](j) * hann, 0.0};
    }
    fft_inplace(buf);
    for (std::size_t k = 0; k <= pad / 2; ++k) {
      power[k] += std::norm(buf[k]);
    }
  }

  double max_power = 0.0;
  for (double p : power) max_power = std::max(max_power, p);
  if (max_power <= 0.0) {
    return {};
  }
  const double threshold = 1e-3 * max_power;
  // skip the DC main lobe: 4 natural bins, stretched by the padding factor
  const std::size_t k_min =
      std::max<std::size_t>(2, 4 * pad / n);
  const double bin = 2.0 * M_PI / (static_cast<double>(pad) * tr.dt);
  const double merge_width = 4.0 * 2.0 * M_PI / (static_cast<double>(n) * tr.dt);

  struct Peak {
    double omega;
    double power;
  };
  std::vector<Peak> peaks;
  for (std::size_t k = k_min; k + 1 < power.size(); ++k) {
    if (power[k] < threshold) continue;
    if (!(power[k] >= power[k - 1] && power[k] >= power[k + 1])) continue;
    double lm = std::log(std::max(power[k - 1], 1e-300));
    double l0 = std::log(power[k]);
    double lp = std::log(std::max(power[k + 1], 1e-300));
    double denom = lm - 2.0 * l0 + lp;
    double delta = denom != 0.0 ? 0.5 * (lm - lp) / denom : 0.0;
    delta = std::clamp(delta, -0.5, 0.5);
    peaks.push_back({(static_cast<double>(k) + delta) * bin, power[k]});
  }

  // merge shoulder maxima of a single tone: keep the strongest within one
  // main-lobe width
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.power > b.power; });
  std::vector<Peak> kept;
  for (const Peak& p : peaks) {
    bool close = false;
    for (const Peak& q : kept) {
      close = close || std::abs(p.omega - q.omega) < merge_width;
    }
    if (!close) kept.push_back(p);
  }
  std::vector<double> freqs;
  for (const Peak& p : kept) freqs.push_back(p.omega);
  std::sort(freqs.begin(), freqs.end());
  return freqs;
}

double growth_rate(const Trajectory& tr) {
  const std::size_t n = tr.states.size();
  if (n < 200) {
    throw DomainError("trajectory too short for growth estimation" +
                      std::string(tr.overflow ? " (overflow truncation)" : ""));
  }
  const std::size_t start = n / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t k = start; k < n; ++k) {
    double y = stable_log_norm(tr.states[k]);
    if (y <= -1e299) continue;
    double x = tr.times[k];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 100) {
    throw DomainError("trajectory too short for growth estimation");
  }
  double denom = count * sxx - sx * sx;
  double slope = (count * sxy - sx * sy) / denom;
  if (slope < 1e-4) {
    throw PhaseError("no exponential growth detected (slope " +
                     std::to_string(slope) +
                     "); growth rates apply to Broken-phase trajectories");
  }
  return slope;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) {
    throw DimensionError("expm needs a square matrix");
  }
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // infinity norm
  int squarings = 0;
  if (norm > 0.25) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  }
  Eigen::MatrixXd s = a / std::pow(2.0, squarings);

  // Pade(6,6): c = (2m-j)! m! / ((2m)! j! (m-j)!)
  const double c[7] = {1.0,        1.0 / 2.0,    5.0 / 44.0, 1.0 / 66.0,
                       1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd s2 = s * s;
  Eigen::MatrixXd s4 = s2 * s2;
  Eigen::MatrixXd s6 = s4 * s2;
  Eigen::MatrixXd u = s * (c[1] * id + c[3] * s2 + c[5] * s4);
  Eigen::MatrixXd v = c[0] * id + c[2] * s2 + c[4] * s4 + c[6] * s6;
  Eigen::MatrixXd f = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) {
    f = f * f;
  }
  return f;
}

}  // namespace quadham
