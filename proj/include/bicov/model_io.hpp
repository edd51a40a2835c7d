#ifndef BICOV_MODEL_IO_HPP
#define BICOV_MODEL_IO_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bicov/models.hpp"
#include "bicov/validity.hpp"

namespace bicov {

// Model descriptor schema (one object per file):
//   {"type": "bivariate_matern", "sigma2": [s1, s2], "rho12": r,
//    "alpha": [a11, a22, a12], "nu": [n11, n22, n12]}
//   {"type": "lmc", "A": [[a11, a12], [a21, a22]], "latents": [...]}
//   {"type": "lmc_constrained", "a": x, "latents": [...]}
// with latent kernels
//   {"kind": "exponential", "rate": x} | {"kind": "matern", "rate": x, "nu": v}

/// Throws std::invalid_argument on schema violations; domain errors
/// propagate from model validation.
Model model_from_json(const nlohmann::json& j);

/// Reads and parses a descriptor file. Throws std::runtime_error when the
/// file cannot be read and nlohmann::json::exception on malformed JSON.
Model load_model_file(const std::string& path);

nlohmann::json to_json(const PsdReport& report);

} // namespace bicov

#endif
