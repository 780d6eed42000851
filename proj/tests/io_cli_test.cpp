#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "casimir/characters.hpp"
#include "casimir/cli.hpp"
#include "casimir/io.hpp"
#include "casimir/theta.hpp"
#include "doctest.h"

using namespace casimir;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("casimir_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("weight and series json round-trip is bit-identical") {
    const Weight w{3, -2, 5};
    CHECK(weight_from_json(weight_to_json(w)) == w);

    auto s = denominator_half(-18);
    const std::string once = series_to_json(s).dump();
    auto back = series_from_json(nlohmann::json::parse(once));
    CHECK(series_to_json(back).dump() == once);
    CHECK(equal_on_window(back, s).pass);

    // theta series exercise the exponent denominators
    auto t = theta_char_series({1, 1}, -22);
    const std::string tj = series_to_json(t).dump();
    CHECK(series_to_json(series_from_json(nlohmann::json::parse(tj))).dump() == tj);

    // exact series carry a null window floor
    auto e = monomial(kRho);
    auto ej = series_to_json(e);
    CHECK(ej.at("g2_floor").is_null());
    CHECK(series_from_json(ej).exact());
}

TEST_CASE("csv export shape") {
    auto s = wp_series({0, 1}, 1, 1, -10);
    const std::string csv = series_to_csv(s);
    CHECK(csv.rfind("h1,d,re,im\n", 0) == 0);
    CHECK(csv.find("1/") == std::string::npos);  // integral coefficients here
}

TEST_CASE("cli: series subcommands and file round-trip") {
    TempDir tmp;
    const auto a = (tmp.path / "p01.json").string();
    CHECK(cli_run({"wp-series", "--char", "01", "--depth", "12", "--out", a}) == 0);
    auto s = series_from_json(nlohmann::json::parse(slurp(a)));
    CHECK(s.coefficient_at(kAlpha1 - kDelta) == GaussianRational(1));

    // feed the emitted file back through radial-apply twice; identical output
    const auto b1 = (tmp.path / "r1.json").string();
    const auto b2 = (tmp.path / "r2.json").string();
    CHECK(cli_run({"radial-apply", "--eta", "0,0", "--chi", "2,0", "--input", a, "--out", b1}) == 0);
    CHECK(cli_run({"radial-apply", "--eta", "0,0", "--chi", "2,0", "--input", a, "--out", b2}) == 0);
    CHECK(slurp(b1) == slurp(b2));
    CHECK(!slurp(b1).empty());

    const auto c = (tmp.path / "orbit.csv").string();
    CHECK(cli_run({"orbit-sum", "--lambda", "0,2,0", "--depth", "16", "--format", "csv", "--out",
                   c}) == 0);
    CHECK(slurp(c).rfind("h1,d,re,im\n", 0) == 0);
}

TEST_CASE("cli: exit code contract") {
    TempDir tmp;
    const auto sink = (tmp.path / "sink.json").string();
    // 0: passing checks
    CHECK(cli_run({"identity-suite", "--depth", "10", "--out", sink}) == 0);
    // 1: injected failure
    CHECK(cli_run({"identity-suite", "--depth", "10", "--perturb", "--out", sink}) == 1);
    // 2: usage errors
    CHECK(cli_run({"no-such-command"}) == 2);
    CHECK(cli_run({"wp-series", "--char", "7"}) == 2);
    CHECK(cli_run({"spherical", "--lambda", "nonsense"}) == 2);
    const auto bad = (tmp.path / "bad.json").string();
    {
        std::ofstream os(bad);
        os << "{ not json";
    }
    CHECK(cli_run({"radial-apply", "--eta", "0,0", "--chi", "0,0", "--input", bad}) == 2);
    // 3: math errors (inadmissible input, invalid domain)
    CHECK(cli_run({"spherical", "--lambda", "0,1,0", "--eta", "0,0", "--chi", "0,0", "--depth",
                   "6", "--out", sink}) == 3);
    CHECK(cli_run({"orbit-sum", "--lambda", "-1,2,0", "--depth", "10", "--out", sink}) == 3);
}

TEST_CASE("cli: spherical pipeline with checks") {
    TempDir tmp;
    const auto out = (tmp.path / "sph.json").string();
    CHECK(cli_run({"spherical", "--lambda", "0,0,0", "--eta", "0,0", "--chi", "0,0", "--depth",
                   "10", "--out", out}) == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("eigenvalue").get<std::string>() == "0");
    CHECK(j.at("series").at("terms").size() == 1);

    CHECK(cli_run({"spherical", "--lambda", "2,2,0", "--eta", "0,0", "--chi", "0,0", "--depth",
                   "12", "--oracle", "--check-invariance", "--out", out}) == 0);
    j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("oracle_match").get<bool>());
    CHECK(j.at("invariance").at("pass").get<bool>());

    CHECK(cli_run({"wp-eval", "--char", "01", "--z", "0.3-0.1i", "--tau", "2i", "--depth", "60",
                   "--tol", "1e-8", "--out", out}) == 0);
    j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("difference").get<double>() < 1e-8);

    CHECK(cli_run({"heun-eval", "--lambda", "0,0,0", "--eta", "0,0", "--chi", "0,0", "--depth",
                   "56", "--z", "0.25-0.1i", "--tau", "3i", "--tol", "1e-6", "--out", out}) == 0);
}
