#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cli_runner.hpp"

using nlohmann::json;
using testsupport::run_cli;
using testsupport::write_file;

namespace {

const char* kValidMatern = R"({
  "type": "bivariate_matern",
  "sigma2": [1.0, 1.0],
  "rho12": 0.6,
  "alpha": [5.0, 5.0, 4.0],
  "nu": [0.5, 0.5, 0.5]
})";

const char* kInvalidMatern = R"({
  "type": "bivariate_matern",
  "sigma2": [1.0, 1.0],
  "rho12": 0.9,
  "alpha": [5.0, 5.0, 4.0],
  "nu": [0.5, 0.5, 0.5]
})";

const char* kExpModel = R"({
  "type": "bivariate_matern",
  "sigma2": [1.0, 1.0],
  "rho12": 0.0,
  "alpha": [1.0, 2.0, 1.0],
  "nu": [0.5, 0.5, 0.5]
})";

const char* kLmcModel = R"({
  "type": "lmc_constrained",
  "a": 0.5,
  "latents": [
    {"kind": "exponential", "rate": 1.0},
    {"kind": "exponential", "rate": 2.0}
  ]
})";

} // namespace

TEST_CASE("bound subcommand emits the closed-form curve")
{
    const auto res = run_cli("bound --alpha11 5 --alpha22 5 --steps 100");
    REQUIRE(res.exit_code == 0);
    std::istringstream lines(res.output);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "alpha12,bound");
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        const double a12 = std::stod(line.substr(0, comma));
        const double bound = std::stod(line.substr(comma + 1));
        CHECK(std::abs(bound - a12 * a12 / 25.0) <= 1e-12 * std::max(1.0, bound));
        ++rows;
    }
    CHECK(rows == 99);
}

TEST_CASE("dindex reports the closed/numeric pair")
{
    write_file("cli_exp_model.json", kExpModel);
    const auto res =
        run_cli("dindex --model cli_exp_model.json --triple 1,2,2 --method both");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.output);
    CHECK(out.at("index") == "d");
    CHECK(out.at("triple") == json::array({1, 2, 2}));
    CHECK(std::abs(out.at("closed").get<double>() - 0.25) < 1e-12);
    CHECK(std::abs(out.at("numeric").get<double>() - 0.25) < 1e-6);
    CHECK(out.at("abs_diff").get<double>() < 1e-6);
}

TEST_CASE("dtilde reports the closed/numeric pair")
{
    write_file("cli_exp_model.json", kExpModel);
    const auto res =
        run_cli("dtilde --model cli_exp_model.json --triple 1,2,2 --method both");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.output);
    CHECK(out.at("index") == "dtilde");
    CHECK(std::abs(out.at("closed").get<double>() - 0.5) < 1e-12);
    CHECK(out.at("abs_diff").get<double>() < 1e-6);
}

TEST_CASE("validate accepts a model inside its bound")
{
    write_file("cli_valid.json", kValidMatern);
    const auto res = run_cli("validate --model cli_valid.json --points 60 --dim 2 "
                             "--seed 11 --strict");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.output);
    CHECK(out.at("psd") == true);
    CHECK(out.at("seed") == 11);
    CHECK(out.at("bound").get<double>() == doctest::Approx(0.64));
    CHECK(out.at("point_sets").size() == 2);
}

TEST_CASE("validate rejects a model beyond its bound")
{
    write_file("cli_invalid.json", kInvalidMatern);

    SUBCASE("psd witness without --strict")
    {
        const auto res = run_cli("validate --model cli_invalid.json --points 40");
        CHECK(res.exit_code == 1);
        const json out = json::parse(res.output);
        CHECK(out.at("psd") == false);
        // the dense 1-d grid carries the witness eigenvalue
        bool negative_witness = false;
        for (const auto& ps : out.at("point_sets"))
            if (ps.at("report").at("min_eigenvalue").get<double>() < 0.0 &&
                !ps.at("report").at("psd").get<bool>())
                negative_witness = true;
        CHECK(negative_witness);
    }

    SUBCASE("strict bound check short-circuits")
    {
        const auto res = run_cli("validate --model cli_invalid.json --strict");
        CHECK(res.exit_code == 1);
        const json out = json::parse(res.output);
        CHECK(out.at("error").at("kind") == "bound");
        CHECK(out.at("error").at("bound").get<double>() == doctest::Approx(0.64));
    }
}

TEST_CASE("compare subcommand produces the matched table")
{
    write_file("cli_lmc.json", kLmcModel);
    write_file("cli_exp_model.json", kExpModel);
    const auto res = run_cli("compare --lmc cli_lmc.json --exp cli_exp_model.json "
                             "--rho-grid 0:0.8:0.4 --triple 1,2,2");
    REQUIRE(res.exit_code == 0);
    std::istringstream lines(res.output);
    std::string header;
    REQUIRE(std::getline(lines, header));
    CHECK(header == "rho12,d_lmc,d_exp,dtilde_lmc,dtilde_exp");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line))
        ++rows;
    CHECK(rows == 3);
}

TEST_CASE("CLI exit codes for parse-level failures")
{
    write_file("cli_bad.json", "{ not json");
    CHECK(run_cli("validate --model cli_bad.json").exit_code == 2);

    write_file("cli_unknown.json", R"({"type": "wendland"})");
    CHECK(run_cli("validate --model cli_unknown.json").exit_code == 2);

    CHECK(run_cli("validate --model missing.json").exit_code == 2);
    CHECK(run_cli("bound --alpha11 5 --alpha22 5 --steps 10 --bogus-flag").exit_code ==
          2);
    CHECK(run_cli("").exit_code == 2); // a subcommand is required
}

TEST_CASE("CLI exit codes for domain failures")
{
    write_file("cli_exp_model.json", kExpModel);
    // grid values outside [0, 1)
    CHECK(run_cli("compare --lmc cli_exp_model.json --exp cli_exp_model.json "
                  "--rho-grid 0:1:0.5 --triple 1,2,2")
              .exit_code == 1);

    // no closed form for the LMC cross triple
    write_file("cli_lmc.json", kLmcModel);
    const auto res =
        run_cli("dindex --model cli_lmc.json --triple 1,2,1 --method closed");
    CHECK(res.exit_code == 1);
    CHECK(json::parse(res.output).at("error").at("kind") == "unsupported_model");
}

TEST_CASE("repeated runs are byte-identical")
{
    write_file("cli_valid.json", kValidMatern);
    const std::string validate_cmd =
        "validate --model cli_valid.json --points 80 --dim 2 --seed 31";
    const auto v1 = run_cli(validate_cmd);
    const auto v2 = run_cli(validate_cmd);
    CHECK(v1.exit_code == 0);
    CHECK(v1.output == v2.output);

    const auto b1 = run_cli("bound --alpha11 5 --alpha22 1.5 --steps 64");
    const auto b2 = run_cli("bound --alpha11 5 --alpha22 1.5 --steps 64");
    CHECK(b1.output == b2.output);

    write_file("cli_lmc.json", kLmcModel);
    write_file("cli_exp_model.json", kExpModel);
    const std::string compare_cmd =
        "compare --lmc cli_lmc.json --exp cli_exp_model.json "
        "--rho-grid 0.1,0.5,0.9 --triple 1,2,2";
    const auto c1 = run_cli(compare_cmd);
    const auto c2 = run_cli(compare_cmd);
    CHECK(c1.exit_code == 0);
    CHECK(c1.output == c2.output);
}

TEST_CASE("emitted JSON results re-parse under the schema")
{
    write_file("cli_valid.json", kValidMatern);
    const auto res = run_cli("validate --model cli_valid.json --seed 5");
    const json out = json::parse(res.output);
    for (const auto& ps : out.at("point_sets")) {
        const auto& rep = ps.at("report");
        CHECK(rep.at("n_points").is_number_integer());
        CHECK(rep.at("dimension").is_number_integer());
        CHECK(rep.at("min_eigenvalue").is_number());
        CHECK(rep.at("max_eigenvalue").is_number());
        CHECK(rep.at("psd").is_boolean());
        CHECK(rep.at("tolerance").is_number());
    }
}
