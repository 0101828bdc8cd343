#pragma once

#include <string>
#include <vector>

#include "quadham/adjrep.hpp"
#include "quadham/hamparse.hpp"

namespace quadham {

/// A parameterized Hamiltonian: expression text plus defaults for every
/// parameter it mentions.  Built-in models and user model files share this
/// shape.
struct ModelSpec {
  std::string id;
  int K = 0;
  std::string expression;
  ParamBindings defaults;
};

/// The built-in models:
///   toy1d     K=1  p^2 + alpha x^2 + (beta/2)(xp + px)
///   toy2d     K=2  px^2 + py^2 + x^2 + y^2 + beta xy
///   gainloss  K=2  coupled resonators with balanced gain and loss
///   selfforce K=4  oscillating charge with radiation self-force couplings
///   lrc       K=2  pair of active LRC circuits
const std::vector<ModelSpec>& catalog_models();
const ModelSpec& catalog_model(const std::string& id);
bool is_catalog_model(const std::string& id);

struct Instantiation {
  ModelSpec spec;
  ParamBindings params;  // defaults merged with overrides
  OperatorPoly poly;
  GammaMatrix gamma;
  AdjointMatrix matrix;  // formula provenance
};

/// Defaults merged with overrides; unknown override names are rejected.
ParamBindings merged_params(const ModelSpec& spec, const ParamBindings& overrides);

Instantiation instantiate_spec(const ModelSpec& spec,
                               const ParamBindings& overrides = {});
Instantiation instantiate(const std::string& id,
                          const ParamBindings& overrides = {});

/// Closed-form characteristic polynomial in xi = lambda^2, coefficients
/// highest degree first; degree equals K.  Only for the built-in models.
std::vector<double> charpoly_xi(const std::string& id,
                                const ParamBindings& overrides = {});

/// Closed-form roots xi of charpoly_xi: fully explicit for toy1d/toy2d/lrc,
/// quadratic formula for gainloss, linear factor plus guarded cubic for
/// selfforce.
std::vector<Complex> closed_form_roots(const std::string& id,
                                       const ParamBindings& overrides = {});

/// The 2K eigenvalues +/- sqrt(xi) implied by closed_form_roots, sorted by
/// (Re, Im).
std::vector<Complex> closed_form_lambdas(const std::string& id,
                                         const ParamBindings& overrides = {});

}  // namespace quadham
