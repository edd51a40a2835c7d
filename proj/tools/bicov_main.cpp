#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bicov/compare.hpp"
#include "bicov/errors.hpp"
#include "bicov/flexibility.hpp"
#include "bicov/format.hpp"
#include "bicov/model_io.hpp"
#include "bicov/models.hpp"
#include "bicov/validity.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1; // domain or validation failure
constexpr int kExitParse = 2;  // I/O, JSON, or argv parse failure

void emit_error(const std::string& kind, const std::string& message)
{
    std::cout << json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2)
              << '\n';
}

std::ostream& open_output(std::ofstream& file, const std::string& path)
{
    if (path.empty())
        return std::cout;
    file.open(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open output file: " + path);
    return file;
}

std::vector<double> parse_rho_grid(const std::string& text)
{
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double start, stop, step;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
            !(in >> std::ws).eof() || !(step > 0.0))
            throw std::invalid_argument("rho grid must be start:stop:step");
        for (double r = start; r <= stop + 1e-12; r += step)
            grid.push_back(r);
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
            grid.push_back(std::stod(item));
    }
    if (grid.empty())
        throw std::invalid_argument("rho grid is empty");
    return grid;
}

struct ValidateArgs {
    std::string model_path;
    int points = 100;
    int dim = 2;
    std::uint64_t seed = 42;
    double tol = 1e-10;
    bool strict = false;
};

int run_validate(const ValidateArgs& args)
{
    const bicov::Model model = bicov::load_model_file(args.model_path);

    json out{{"command", "validate"},
             {"model", args.model_path},
             {"seed", args.seed},
             {"tolerance", args.tol}};

    if (args.strict) {
        if (const auto* m = std::get_if<bicov::BivariateMaternModel>(&model)) {
            try {
                const double bound = bicov::matern_colocated_bound(m->alpha, m->nu);
                if (std::abs(m->rho12) > bound) {
                    out["error"] = {{"kind", "bound"},
                                    {"message", "rho12 exceeds the closed-form bound"},
                                    {"rho12", m->rho12},
                                    {"bound", bound}};
                    std::cout << out.dump(2) << '\n';
                    return kExitDomain;
                }
                out["bound"] = bound;
            } catch (const bicov::unsupported_regime_error&) {
                out["bound"] = nullptr; // no closed form in this regime
            }
        }
    }

    const double length = 10.0 / bicov::min_effective_rate(model);
    const Eigen::MatrixXd uniform =
        bicov::uniform_points(args.points, args.dim, length, args.seed);
    const Eigen::MatrixXd grid = bicov::grid_1d(length, 200);

    const bicov::PsdReport rep_uniform = bicov::gram_psd_check(model, uniform, args.tol);
    const bicov::PsdReport rep_grid = bicov::gram_psd_check(model, grid, args.tol);

    out["point_sets"] = json::array({json{{"name", "uniform"},
                                          {"report", bicov::to_json(rep_uniform)}},
                                     json{{"name", "grid_1d"},
                                          {"report", bicov::to_json(rep_grid)}}});
    const bool psd = rep_uniform.psd && rep_grid.psd;
    out["psd"] = psd;
    std::cout << out.dump(2) << '\n';
    return psd ? kExitOk : kExitDomain;
}

struct BoundArgs {
    double alpha11 = 0.0;
    double alpha22 = 0.0;
    int steps = 0;
    std::string output;
};

int run_bound(const BoundArgs& args)
{
    const bicov::BoundCurve curve =
        bicov::bound_curve(args.alpha11, args.alpha22, args.steps);
    std::ofstream file;
    bicov::write_bound_curve_csv(curve, open_output(file, args.output));
    return kExitOk;
}

struct IndexArgs {
    std::string model_path;
    std::string triple_text = "1,2,2";
    std::string method = "both";
    double t_max = 0.0;
    int grid_points = 100000;
    double abs_tol = 1e-10;
};

int run_index(const IndexArgs& args, bool integrated)
{
    const bicov::Model model = bicov::load_model_file(args.model_path);
    const bicov::IndexTriple triple = bicov::parse_triple(args.triple_text);

    json out{{"index", integrated ? "dtilde" : "d"},
             {"triple", {triple.i, triple.k, triple.j}},
             {"method", args.method}};
    std::optional<double> closed, numeric;
    if (args.method == "closed" || args.method == "both")
        closed = integrated ? bicov::dtilde_closed(model, triple)
                            : bicov::d_index_closed(model, triple);
    if (args.method == "numeric" || args.method == "both") {
        if (integrated)
            numeric = bicov::dtilde_numeric(model, triple,
                                            {args.t_max, args.abs_tol});
        else
            numeric = bicov::d_index_numeric(model, triple,
                                             {args.t_max, args.grid_points, 1e-10});
    }
    if (closed)
        out["closed"] = *closed;
    if (numeric)
        out["numeric"] = *numeric;
    if (closed && numeric)
        out["abs_diff"] = std::abs(*closed - *numeric);
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

struct CompareArgs {
    std::string lmc_path;
    std::string exp_path;
    std::string rho_grid_text;
    std::string triple_text = "1,2,2";
    std::string output;
    bool minus_root = false;
};

int run_compare(const CompareArgs& args)
{
    const bicov::Model lmc = bicov::load_model_file(args.lmc_path);
    const auto* lmc_model = std::get_if<bicov::LmcModel>(&lmc);
    if (!lmc_model)
        throw std::domain_error("--lmc descriptor must be an LMC model");

    const bicov::Model exp = bicov::load_model_file(args.exp_path);
    const auto* exp_model = std::get_if<bicov::BivariateMaternModel>(&exp);
    if (!exp_model || !exp_model->is_exponential())
        throw std::domain_error(
            "--exp descriptor must be a bivariate Matern with smoothness 1/2");

    const auto rows = bicov::compare_on_rho_grid(
        lmc_model->latents, exp_model->alpha, parse_rho_grid(args.rho_grid_text),
        bicov::parse_triple(args.triple_text),
        args.minus_root ? bicov::LmcRoot::minus : bicov::LmcRoot::plus);
    std::ofstream file;
    bicov::write_comparison_csv(rows, open_output(file, args.output));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bivariate covariance models: validity bounds and flexibility indices"};
    app.require_subcommand(1);

    ValidateArgs vargs;
    auto* validate = app.add_subcommand(
        "validate", "check Gram-matrix positive semidefiniteness");
    validate->add_option("--model", vargs.model_path, "model descriptor JSON")
        ->required();
    validate->add_option("--points", vargs.points, "number of sampled sites");
    validate->add_option("--dim", vargs.dim, "sampling dimension")
        ->check(CLI::Range(1, 2));
    validate->add_option("--seed", vargs.seed, "sampler seed");
    validate->add_option("--tol", vargs.tol, "eigenvalue tolerance");
    validate->add_flag("--strict", vargs.strict,
                       "also reject rho12 beyond the closed-form bound");

    BoundArgs bargs;
    auto* bound = app.add_subcommand("bound", "colocated-correlation bound curve");
    bound->add_option("--alpha11", bargs.alpha11)->required();
    bound->add_option("--alpha22", bargs.alpha22)->required();
    bound->add_option("--steps", bargs.steps)->required();
    bound->add_option("-o,--output", bargs.output, "CSV path (default stdout)");

    IndexArgs dargs;
    auto* dindex = app.add_subcommand("dindex", "sup-difference flexibility index");
    dindex->add_option("--model", dargs.model_path)->required();
    dindex->add_option("--triple", dargs.triple_text, "subscripts i,k,j");
    dindex->add_option("--method", dargs.method)
        ->check(CLI::IsMember({"closed", "numeric", "both"}));
    dindex->add_option("--tmax", dargs.t_max, "scan span (default 50/min rate)");
    dindex->add_option("--grid", dargs.grid_points, "scan points");

    IndexArgs targs;
    auto* dtilde = app.add_subcommand("dtilde", "integrated-difference flexibility index");
    dtilde->add_option("--model", targs.model_path)->required();
    dtilde->add_option("--triple", targs.triple_text, "subscripts i,k,j");
    dtilde->add_option("--method", targs.method)
        ->check(CLI::IsMember({"closed", "numeric", "both"}));
    dtilde->add_option("--tmax", targs.t_max, "integration span (default 100/min rate)");
    dtilde->add_option("--abstol", targs.abs_tol, "quadrature tolerance");

    CompareArgs cargs;
    auto* compare = app.add_subcommand(
        "compare", "LMC vs bivariate exponential over a rho grid");
    compare->add_option("--lmc", cargs.lmc_path, "LMC descriptor")->required();
    compare->add_option("--exp", cargs.exp_path, "exponential descriptor")->required();
    compare
        ->add_option("--rho-grid", cargs.rho_grid_text,
                     "start:stop:step or comma-separated values")
        ->required();
    compare->add_option("--triple", cargs.triple_text, "subscripts i,k,j");
    compare->add_option("-o,--output", cargs.output, "CSV path (default stdout)");
    compare->add_flag("--minus-root", cargs.minus_root,
                      "use the minus branch when solving a from rho");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (validate->parsed())
            return run_validate(vargs);
        if (bound->parsed())
            return run_bound(bargs);
        if (dindex->parsed())
            return run_index(dargs, false);
        if (dtilde->parsed())
            return run_index(targs, true);
        if (compare->parsed())
            return run_compare(cargs);
    } catch (const bicov::bound_error& e) {
        emit_error("bound", e.what());
        return kExitDomain;
    } catch (const bicov::unsupported_model_error& e) {
        emit_error("unsupported_model", e.what());
        return kExitDomain;
    } catch (const bicov::unsupported_regime_error& e) {
        emit_error("unsupported_regime", e.what());
        return kExitDomain;
    } catch (const bicov::schema_error& e) {
        emit_error("schema", e.what());
        return kExitParse;
    } catch (const nlohmann::json::exception& e) {
        emit_error("parse", e.what());
        return kExitParse;
    } catch (const std::domain_error& e) {
        emit_error("domain", e.what());
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        emit_error("domain", e.what());
        return kExitDomain;
    } catch (const std::out_of_range& e) {
        emit_error("domain", e.what());
        return kExitDomain;
    } catch (const std::exception& e) {
        emit_error("io", e.what());
        return kExitParse;
    }
    return kExitOk;
}
