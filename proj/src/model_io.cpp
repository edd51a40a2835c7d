#include "bicov/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "bicov/errors.hpp"

namespace bicov {

namespace {

using nlohmann::json;

UnivariateCorrelation latent_from_json(const json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "exponential")
        return UnivariateCorrelation::exponential(j.at("rate").get<double>());
    if (kind == "matern")
        return UnivariateCorrelation::matern(j.at("rate").get<double>(),
                                             j.at("nu").get<double>());
    throw schema_error("unknown latent kind: " + kind);
}

std::array<UnivariateCorrelation, 2> latents_from_json(const json& j)
{
    const auto& arr = j.at("latents");
    if (!arr.is_array() || arr.size() != 2)
        throw schema_error("latents must be an array of 2 kernels");
    return {latent_from_json(arr[0]), latent_from_json(arr[1])};
}

template <std::size_t N>
std::array<double, N> fixed_array(const json& j, const char* name)
{
    const auto& arr = j.at(name);
    if (!arr.is_array() || arr.size() != N)
        throw schema_error(std::string(name) + " must be an array of " +
                           std::to_string(N) + " numbers");
    std::array<double, N> out{};
    for (std::size_t k = 0; k < N; ++k)
        out[k] = arr[k].get<double>();
    return out;
}

} // namespace

Model model_from_json(const nlohmann::json& j)
{
    const std::string type = j.at("type").get<std::string>();
    if (type == "bivariate_matern") {
        return BivariateMaternModel(fixed_array<2>(j, "sigma2"),
                                    j.at("rho12").get<double>(),
                                    fixed_array<3>(j, "alpha"),
                                    fixed_array<3>(j, "nu"));
    }
    if (type == "lmc") {
        const auto& a = j.at("A");
        if (!a.is_array() || a.size() != 2 || !a[0].is_array() || a[0].size() != 2 ||
            !a[1].is_array() || a[1].size() != 2)
            throw schema_error("A must be a 2x2 matrix");
        Eigen::Matrix2d loadings;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                loadings(r, c) = a[r][c].get<double>();
        return LmcModel::general(loadings, latents_from_json(j));
    }
    if (type == "lmc_constrained") {
        const auto latents = latents_from_json(j);
        return build_constrained_lmc(j.at("a").get<double>(), latents[0],
                                     latents[1]);
    }
    throw schema_error("unknown model type: " + type);
}

Model load_model_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open model file: " + path);
    nlohmann::json j;
    in >> j;
    return model_from_json(j);
}

nlohmann::json to_json(const PsdReport& report)
{
    return nlohmann::json{{"n_points", report.n_points},
                          {"dimension", report.dimension},
                          {"min_eigenvalue", report.min_eigenvalue},
                          {"max_eigenvalue", report.max_eigenvalue},
                          {"psd", report.psd},
                          {"tolerance", report.tolerance}};
}

} // namespace bicov
