#include "quadham/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "quadham/polyroots.hpp"

namespace quadham {

namespace {

double get(const ParamBindings& p, const std::string& name) {
  return p.at(name);
}

// Parameter regions where a model is singular are rejected up front so the
// caller sees a model-level diagnostic instead of a parser one.
void check_model_guards(const std::string& id, const ParamBindings& p) {
  if (id == "lrc") {
    double mu = get(p, "mu");
    if (std::abs(mu * mu - 1.0) < 1e-12) {
      throw DomainError("lrc is singular at mu = +/-1 (1 - mu^2 divides the "
                        "Hamiltonian)");
    }
  } else if (id == "selfforce") {
    double m = get(p, "m"), tau = get(p, "tau");
    if (std::abs(m * tau) < 1e-12) {
      throw DomainError("selfforce requires m * tau != 0");
    }
  }
}

}  // namespace

const std::vector<ModelSpec>& catalog_models() {
  static const std::vector<ModelSpec> models = {
      {"toy1d", 1, "p^2 + alpha*x^2 + (beta/2)*(x*p + p*x)",
       {{"alpha", 1.0}, {"beta", 1.0}}},
      {"toy2d", 2, "px^2 + py^2 + x^2 + y^2 + beta*x*y", {{"beta", 1.0}}},
      {"gainloss", 2,
       "px*py + gamma*(y*py - x*px) + (omega^2 - gamma^2)*x*y + "
       "(epsilon/2)*(x^2 + y^2)",
       {{"omega", 1.0}, {"gamma", 0.5}, {"epsilon", 0.1}}},
      {"selfforce", 4,
       "(B/(m*tau))*(w*pz - z*pw) + (2/(m*tau^2))*pz*pw + "
       "(px*pw - py*pz)/(m*tau) - (m/2)*z*w + (w*py + z*px)/2 + k*x*y + "
       "(A/2)*(x^2 + y^2)",
       {{"m", 1.0}, {"tau", 1.0}, {"k", 1.0}, {"A", 0.0}, {"B", 0.0}}},
      {"lrc", 2,
       "px*py + (gamma/2)*(x*px - y*py) + (1/(1-mu^2) - gamma^2/4)*x*y - "
       "(mu/(2*(1-mu^2)))*(x^2 + y^2)",
       {{"mu", 0.2}, {"gamma", 0.1}}},
  };
  return models;
}

const ModelSpec& catalog_model(const std::string& id) {
  for (const auto& m : catalog_models()) {
    if (m.id == id) {
      return m;
    }
  }
  throw DomainError("unknown model id '" + id +
                    "' (known: toy1d, toy2d, gainloss, selfforce, lrc)");
}

bool is_catalog_model(const std::string& id) {
  for (const auto& m : catalog_models()) {
    if (m.id == id) {
      return true;
    }
  }
  return false;
}

ParamBindings merged_params(const ModelSpec& spec,
                            const ParamBindings& overrides) {
  ParamBindings params = spec.defaults;
  for (const auto& [name, value] : overrides) {
    auto it = params.find(name);
    if (it == params.end()) {
      throw DomainError("model '" + spec.id + "' has no parameter '" + name +
                        "'");
    }
    it->second = value;
  }
  return params;
}

Instantiation instantiate_spec(const ModelSpec& spec,
                               const ParamBindings& overrides) {
  ParamBindings params = merged_params(spec, overrides);
  if (is_catalog_model(spec.id)) {
    check_model_guards(spec.id, params);
  }
  OperatorPoly poly = parse(spec.expression, params, spec.K);
  GammaMatrix gamma = extract_gamma(poly);
  AdjointMatrix matrix = adjoint_matrix(gamma);
  return Instantiation{spec, std::move(params), std::move(poly),
                       std::move(gamma), std::move(matrix)};
}

Instantiation instantiate(const std::string& id,
                          const ParamBindings& overrides) {
  return instantiate_spec(catalog_model(id), overrides);
}

std::vector<double> charpoly_xi(const std::string& id,
                                const ParamBindings& overrides) {
  const ModelSpec& spec = catalog_model(id);
  ParamBindings p = merged_params(spec, overrides);
  check_model_guards(id, p);

  if (id == "toy1d") {
    double alpha = get(p, "alpha"), beta = get(p, "beta");
    return {1.0, -(4.0 * alpha - beta * beta)};
  }
  if (id == "toy2d") {
    double beta = get(p, "beta");
    // (xi - 2(2-beta)) (xi - 2(2+beta))
    return {1.0, -8.0, 4.0 * (4.0 - beta * beta)};
  }
  if (id == "gainloss") {
    double w = get(p, "omega"), g = get(p, "gamma"), e = get(p, "epsilon");
    return {1.0, 2.0 * (2.0 * g * g - w * w), std::pow(w, 4) - e * e};
  }
  if (id == "lrc") {
    double mu = get(p, "mu"), g = get(p, "gamma");
    double m2 = mu * mu - 1.0;
    return {m2, g * g * m2 + 2.0, -1.0};
  }
  // selfforce: (a xi + b)(a xi^3 + b xi^2 + c xi + d) expanded
  double m = get(p, "m"), tau = get(p, "tau"), k = get(p, "k");
  double A = get(p, "A"), B = get(p, "B");
  double a = m * m * tau * tau;
  double b = m * m - B * B;
  double c = 2.0 * (A * B - k * m);
  double d = k * k - A * A;
  return {a * a, 2.0 * a * b, a * c + b * b, a * d + b * c, b * d};
}

std::vector<Complex> closed_form_roots(const std::string& id,
                                       const ParamBindings& overrides) {
  const ModelSpec& spec = catalog_model(id);
  ParamBindings p = merged_params(spec, overrides);
  check_model_guards(id, p);

  if (id == "toy1d") {
    double alpha = get(p, "alpha"), beta = get(p, "beta");
    return {Complex{4.0 * alpha - beta * beta, 0.0}};
  }
  if (id == "toy2d") {
    double beta = get(p, "beta");
    return {Complex{2.0 * (2.0 - beta), 0.0}, Complex{2.0 * (2.0 + beta), 0.0}};
  }
  if (id == "gainloss") {
    double w = get(p, "omega"), g = get(p, "gamma"), e = get(p, "epsilon");
    auto r = solve_quadratic(1.0, 2.0 * (2.0 * g * g - w * w),
                             std::pow(w, 4) - e * e);
    return {r[0], r[1]};
  }
  if (id == "lrc") {
    double mu = get(p, "mu"), g = get(p, "gamma");
    double m2 = mu * mu - 1.0;
    Complex s = std::sqrt(Complex{
        std::pow(g, 4) * m2 * m2 + 4.0 * g * g * m2 + 4.0 * mu * mu, 0.0});
    Complex xi1 = (s + g * g * (1.0 - mu * mu) - 2.0) / (2.0 * m2);
    Complex xi2 = (s + g * g * m2 + 2.0) / (2.0 * (1.0 - mu * mu));
    return {xi1, xi2};
  }
  // selfforce: linear-factor root plus the cubic's three roots
  double m = get(p, "m"), tau = get(p, "tau"), k = get(p, "k");
  double A = get(p, "A"), B = get(p, "B");
  double a = m * m * tau * tau;
  double b = m * m - B * B;
  Complex linear{(B * B - m * m) / a, 0.0};
  auto cubic = solve_cubic(a, b, 2.0 * (A * B - k * m), k * k - A * A);
  return {linear, cubic[0], cubic[1], cubic[2]};
}

std::vector<Complex> closed_form_lambdas(const std::string& id,
                                         const ParamBindings& overrides) {
  std::vector<Complex> lambdas;
  for (Complex xi : closed_form_roots(id, overrides)) {
    Complex root = std::sqrt(xi);
    lambdas.push_back(root);
    lambdas.push_back(-root);
  }
  std::sort(lambdas.begin(), lambdas.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return lambdas;
}

}  // namespace quadham
