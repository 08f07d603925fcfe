#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(UBM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string& args)
{
    const Run r = run(args);
    REQUIRE(r.status == 0);
    return json::parse(r.out);
}

double moment_re(const json& doc, int n)
{
    return doc["moments"][n - 1][0].get<double>();
}

} // namespace

TEST_CASE("moments examples")
{
    const json mono0 = run_json("moments --family monotone --t 0 --order 5");
    CHECK(mono0["schema_version"] == 1);
    CHECK(mono0["command"] == "moments");
    CHECK(mono0["config"]["order"] == 5);
    for (int n = 1; n <= 5; ++n)
        CHECK(moment_re(mono0, n) == 1.0);

    const json boo = run_json("moments --family boolean --t 1 --order 2");
    CHECK(std::abs(moment_re(boo, 1) - 0.606531) < 1e-6);
    CHECK(std::abs(moment_re(boo, 2) + 0.238651) < 1e-6);

    const json mono = run_json("moments --family monotone --t " + std::to_string(2.0 * std::log(2.0)) + " --order 2");
    CHECK(std::abs(moment_re(mono, 1) - 0.5) < 1e-6);
    CHECK(std::abs(moment_re(mono, 2) + 0.25) < 1e-6);
}

TEST_CASE("csv moments")
{
    const Run r = run("moments --family boolean --t 1 --order 3 --format csv");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("n,re,im\n1,0.60653065971263", 0) == 0);
}

TEST_CASE("density")
{
    const double t = 2.0 * std::log(2.0);
    char targ[64];
    std::snprintf(targ, sizeof targ, "%.17g", t);
    const json doc = run_json(std::string("density --t ") + targ + " --samples 101");
    const auto& rows = doc["rows"];
    REQUIRE(rows.size() == 101);
    CHECK(rows[50]["theta"].get<double>() == 0.0);
    CHECK(std::abs(rows[50]["density"].get<double>() - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(doc["support"]["max"].get<double>() - M_PI / 2) < 1e-12);
    for (int j = 0; j < 101; ++j) {
        const auto& a = rows[j];
        const auto& b = rows[100 - j];
        CHECK(a["theta"].get<double>() == -b["theta"].get<double>());
        CHECK(a["density"] == b["density"]);
        if (std::abs(a["theta"].get<double>()) > M_PI / 2)
            CHECK(a["density"].get<double>() == 0.0);
    }
}

TEST_CASE("atoms")
{
    const json doc = run_json("atoms --t 1 --truncation-mass 0.999");
    const double mass = doc["summary"]["captured_mass"].get<double>();
    CHECK(mass >= 0.999);
    CHECK(mass <= 1.0);
    CHECK(doc["atoms"].size() == doc["summary"]["truncation_index"].get<std::size_t>() + 1);
    CHECK(run("atoms --t 1 --truncation-mass 0.999999 --max-index 10").status == 3);
}

TEST_CASE("exit codes")
{
    CHECK(run("moments --family monotone --t -1").status == 2);
    CHECK(run("moments --family cauchy --t 1").status == 2);
    CHECK(run("moments --family monotone --t 1 --order 0").status == 2);
    CHECK(run("density --t 0").status == 2);
    CHECK(run("density --t 1 --samples 1").status == 2);
    CHECK(run("moments --family monotone --t 1 --format xml").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("convolve missing1.json missing2.json --mode boolean").status == 2);
    CHECK(run("verify --suite semigroup --tolerance 1e-30").status == 3);
    CHECK(run("verify --suite bogus").status == 2);
}

TEST_CASE("verify all passes")
{
    const json doc = run_json("verify --suite all");
    CHECK(doc["passed"] == true);
    CHECK(doc["checks"].size() > 30);
}

TEST_CASE("deterministic output")
{
    for (const char* args : {"moments --family boolean --t 0.7 --order 12", "density --t 1 --samples 33",
                             "atoms --t 2 --truncation-mass 0.99", "verify --suite semigroup"}) {
        const Run a = run(args);
        const Run b = run(args);
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("convolve round-trip")
{
    REQUIRE(run("moments --family monotone --t 0.5 --order 8 --output cli_a.json").status == 0);
    REQUIRE(run("moments --family monotone --t 1.0 --order 8 --format csv --output cli_b.csv").status == 0);
    const json conv = run_json("convolve cli_a.json cli_b.csv --mode monotone");
    const json direct = run_json("moments --family monotone --t 1.5 --order 8");
    for (int n = 1; n <= 8; ++n)
        CHECK(std::abs(moment_re(conv, n) - moment_re(direct, n)) < 1e-9);
    const json trunc = run_json("convolve cli_a.json cli_b.csv --mode boolean --order 3");
    CHECK(trunc["moments"].size() == 3);
    REQUIRE(run("moments --family monotone --t 1.0 --order 6 --output cli_c.json").status == 0);
    CHECK(run("convolve cli_a.json cli_c.json --mode monotone").status == 2);
}
