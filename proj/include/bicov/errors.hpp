#ifndef BICOV_ERRORS_HPP
#define BICOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bicov {

// Model/parameter combination has no closed form; caller should fall back
// to the numeric route.
class unsupported_model_error : public std::invalid_argument {
public:
    explicit unsupported_model_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// Scale/smoothness configuration outside the regimes with a known
// colocated-correlation bound.
class unsupported_regime_error : public std::invalid_argument {
public:
    explicit unsupported_regime_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// Requested colocated coefficient exceeds the validity bound of the model.
class bound_error : public std::domain_error {
public:
    explicit bound_error(const std::string& what)
        : std::domain_error(what) {}
};

// Structurally malformed model descriptor (unknown type, wrong shapes).
// Distinct from domain errors so callers can map it to a parse failure.
class schema_error : public std::runtime_error {
public:
    explicit schema_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace bicov

#endif
