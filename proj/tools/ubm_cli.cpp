// ubm: moments, densities, atoms, convolutions and self-checks for the
// monotone and boolean unitary Brownian motions.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ubm/boolean.hpp"
#include "ubm/convolution.hpp"
#include "ubm/errors.hpp"
#include "ubm/io.hpp"
#include "ubm/monotone.hpp"
#include "ubm/verify.hpp"

using ubm::format_double;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kMaxOrder = 1000;
constexpr int kMaxSamples = 10'000'000;

struct RunConfig {
    std::string command;
    std::string family = "monotone";
    std::string mode = "monotone";
    std::string suite = "all";
    double t = 1.0;
    int order = 10;
    std::optional<int> convolve_order;
    int samples = 1001;
    double truncation_mass = 1.0 - 1e-6;
    std::int64_t max_index = 10'000'000;
    std::optional<double> tolerance;
    std::string format = "json";
    std::string output;
    std::string file1, file2;
};

// Every bound is checked before dispatch so that invalid input exits with 2
// and never reaches a numerical routine.
void validate(const RunConfig& c)
{
    auto fail = [](const std::string& msg) { throw ubm::DomainError(msg); };
    ubm::parse_format(c.format);
    if (c.command == "moments") {
        if (c.family != "monotone" && c.family != "boolean")
            fail("--family must be monotone or boolean");
        if (!(c.t >= 0.0) || !std::isfinite(c.t))
            fail("--t must be finite and >= 0");
        if (c.order < 1 || c.order > kMaxOrder)
            fail("--order must lie in [1, " + std::to_string(kMaxOrder) + "]");
    } else if (c.command == "density") {
        if (!(c.t > 0.0) || !std::isfinite(c.t))
            fail("--t must be finite and > 0 for the density");
        if (c.samples < 2 || c.samples > kMaxSamples)
            fail("--samples must lie in [2, " + std::to_string(kMaxSamples) + "]");
    } else if (c.command == "atoms") {
        if (!(c.t > 0.0) || !std::isfinite(c.t))
            fail("--t must be finite and > 0 for the atoms");
        if (!(c.truncation_mass > 0.0 && c.truncation_mass < 1.0))
            fail("--truncation-mass must lie in (0, 1)");
        if (c.max_index < 0)
            fail("--max-index must be >= 0");
    } else if (c.command == "convolve") {
        if (c.mode != "monotone" && c.mode != "boolean")
            fail("--mode must be monotone or boolean");
        if (c.convolve_order && (*c.convolve_order < 1 || *c.convolve_order > ubm::kDefaultConvolutionOrderCap))
            fail("--order must lie in [1, " + std::to_string(ubm::kDefaultConvolutionOrderCap) + "]");
    } else if (c.command == "verify") {
        ubm::parse_suite(c.suite);
        if (c.tolerance && !(*c.tolerance > 0.0))
            fail("--tolerance must be > 0");
    }
}

json header(const RunConfig& c, json config)
{
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = c.command;
    config["format"] = c.format;
    doc["config"] = std::move(config);
    return doc;
}

json pair_of(std::complex<double> v)
{
    return json::array({v.real(), v.imag()});
}

std::string dump(const json& doc)
{
    return doc.dump(2) + "\n";
}

std::string moments_document(const RunConfig& c, const json& config,
                             const ubm::MomentSequence<std::complex<double>>& m)
{
    if (c.format == "csv")
        return ubm::moment_sequence_csv(m);
    json doc = header(c, config);
    doc["order"] = m.order();
    json arr = json::array();
    for (int k = 1; k <= m.order(); ++k)
        arr.push_back(pair_of(m(k)));
    doc["moments"] = std::move(arr);
    return dump(doc);
}

std::string cmd_moments(const RunConfig& c)
{
    ubm::MomentSequence<std::complex<double>>::Vector m(c.order);
    for (int k = 1; k <= c.order; ++k)
        m[k - 1] = c.family == "monotone" ? ubm::monotone_moment(c.t, k) : ubm::boolean_moment(c.t, k);
    const json config = {{"family", c.family}, {"t", c.t}, {"order", c.order}};
    return moments_document(c, config, ubm::MomentSequence<std::complex<double>>(m));
}

std::string cmd_density(const RunConfig& c)
{
    const auto [lo, hi] = ubm::monotone_support(c.t);
    // theta_j = pi (2j + 1 - S) / S: cell midpoints, exactly antisymmetric in j.
    auto theta = [&](int j) { return M_PI * double(2 * j + 1 - c.samples) / double(c.samples); };
    if (c.format == "csv") {
        std::string out = "# support_min=" + format_double(lo) + " support_max=" + format_double(hi) + "\n";
        out += "theta,density,singular\n";
        for (int j = 0; j < c.samples; ++j) {
            const double th = theta(j);
            const auto d = ubm::monotone_density(c.t, std::abs(th));
            out += format_double(th) + "," + (d.unbounded ? std::string() : format_double(d.value)) + "," +
                   (d.unbounded ? "1" : "0") + "\n";
        }
        return out;
    }
    json doc = header(c, {{"t", c.t}, {"samples", c.samples}});
    doc["support"] = {{"min", lo}, {"max", hi}};
    json rows = json::array();
    for (int j = 0; j < c.samples; ++j) {
        const double th = theta(j);
        const auto d = ubm::monotone_density(c.t, std::abs(th));
        json row = {{"theta", th}, {"density", nullptr}, {"singular", d.unbounded}};
        if (!d.unbounded)
            row["density"] = d.value;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return dump(doc);
}

std::string cmd_atoms(const RunConfig& c)
{
    const auto policy = ubm::TruncationPolicy::mass(c.truncation_mass, c.max_index);
    const auto atoms = ubm::solve_atoms<double>(c.t, policy);
    if (c.format == "csv") {
        std::string out = "# captured_mass=" + format_double(atoms.captured_mass) +
                          " truncation_index=" + std::to_string(atoms.truncation_index) + "\n";
        out += "n,alpha,x,weight\n";
        for (const auto& a : atoms.entries)
            out += std::to_string(a.n) + "," + format_double(a.alpha) + "," + format_double(a.x) + "," +
                   format_double(a.weight) + "\n";
        return out;
    }
    json doc = header(c, {{"t", c.t}, {"truncation_mass", c.truncation_mass}, {"max_index", c.max_index}});
    doc["summary"] = {{"captured_mass", atoms.captured_mass}, {"truncation_index", atoms.truncation_index}};
    json rows = json::array();
    for (const auto& a : atoms.entries)
        rows.push_back({{"n", a.n}, {"alpha", a.alpha}, {"x", a.x}, {"weight", a.weight}});
    doc["atoms"] = std::move(rows);
    return dump(doc);
}

std::string cmd_convolve(const RunConfig& c)
{
    auto a = ubm::read_moment_sequence(c.file1);
    auto b = ubm::read_moment_sequence(c.file2);
    if (c.convolve_order) {
        a = a.truncated(*c.convolve_order);
        b = b.truncated(*c.convolve_order);
    }
    const auto m = c.mode == "monotone" ? ubm::monotone_convolve(a, b) : ubm::boolean_convolve(a, b);
    json config = {{"mode", c.mode}, {"inputs", {c.file1, c.file2}}, {"order", m.order()}};
    return moments_document(c, config, m);
}

std::string cmd_verify(const RunConfig& c, bool& all_passed)
{
    const auto results = ubm::run_verify(ubm::parse_suite(c.suite), c.tolerance);
    all_passed = true;
    for (const auto& r : results)
        all_passed = all_passed && r.passed;
    if (c.format == "csv") {
        std::string out = "suite,name,value,threshold,passed\n";
        for (const auto& r : results)
            out += r.suite + ",\"" + r.name + "\"," + format_double(r.value) + "," + format_double(r.threshold) + "," +
                   (r.passed ? "1" : "0") + "\n";
        return out;
    }
    json config = {{"suite", c.suite}, {"tolerance", nullptr}};
    if (c.tolerance)
        config["tolerance"] = *c.tolerance;
    json doc = header(c, config);
    json checks = json::array();
    for (const auto& r : results)
        checks.push_back({{"suite", r.suite},
                          {"name", r.name},
                          {"value", r.value},
                          {"threshold", r.threshold},
                          {"passed", r.passed}});
    doc["checks"] = std::move(checks);
    doc["passed"] = all_passed;
    return dump(doc);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Moments, densities, atoms and checks for the monotone and boolean unitary Brownian motions"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output", cfg.output, "Output file (default: stdout)");
    };

    auto* moments = app.add_subcommand("moments", "Closed-form moments m_1..m_N");
    moments->add_option("--family", cfg.family, "monotone or boolean")->required();
    moments->add_option("--t", cfg.t, "Time t >= 0")->required();
    moments->add_option("--order", cfg.order, "Number of moments N");
    add_common(moments);

    auto* density = app.add_subcommand("density", "Monotone density on a uniform grid over (-pi, pi)");
    density->add_option("--t", cfg.t, "Time t > 0")->required();
    density->add_option("--samples", cfg.samples, "Number of grid points");
    add_common(density);

    auto* atoms = app.add_subcommand("atoms", "Atoms of the boolean measure");
    atoms->add_option("--t", cfg.t, "Time t > 0")->required();
    atoms->add_option("--truncation-mass", cfg.truncation_mass, "Stop once this much mass is captured");
    atoms->add_option("--max-index", cfg.max_index, "Give up beyond this atom index");
    add_common(atoms);

    auto* convolve = app.add_subcommand("convolve", "Convolve two moment-sequence files");
    convolve->add_option("file1", cfg.file1)->required();
    convolve->add_option("file2", cfg.file2)->required();
    convolve->add_option("--mode", cfg.mode, "monotone or boolean")->required();
    convolve->add_option("--order", cfg.convolve_order, "Truncate both inputs to this order");
    add_common(convolve);

    auto* verify = app.add_subcommand("verify", "Run self-checks; exit 0 iff all pass");
    verify->add_option("--suite", cfg.suite, "ode, semigroup, quadrature, fock, lem or all");
    verify->add_option("--tolerance", cfg.tolerance, "Override the threshold of agreement checks");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        validate(cfg);
        std::string out;
        bool passed = true;
        if (cfg.command == "moments")
            out = cmd_moments(cfg);
        else if (cfg.command == "density")
            out = cmd_density(cfg);
        else if (cfg.command == "atoms")
            out = cmd_atoms(cfg);
        else if (cfg.command == "convolve")
            out = cmd_convolve(cfg);
        else
            out = cmd_verify(cfg, passed);
        if (cfg.output.empty())
            std::cout << out;
        else
            ubm::write_text_file(cfg.output, out);
        return passed ? 0 : 3;
    } catch (const ubm::Error& e) {
        std::cerr << "ubm " << cfg.command << ": " << e.what() << "\n";
        return e.numerical() ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "ubm " << cfg.command << ": " << e.what() << "\n";
        return 3;
    }
}
