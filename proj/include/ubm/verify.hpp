#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace ubm {

enum class Suite { Ode, Semigroup, Quadrature, Fock, Lem, All };

Suite parse_suite(const std::string& name);
std::string suite_name(Suite s);

struct CheckResult {
    std::string suite;
    std::string name;
    double value;     // measured deviation
    double threshold; // passes iff value <= threshold
    bool passed;
};

/// Runs the named suite. The tolerance override replaces the threshold of
/// agreement checks (closed form against an independent computation); checks
/// on discretization rates keep their structural thresholds.
std::vector<CheckResult> run_verify(Suite suite, std::optional<double> tolerance = std::nullopt);

/// Fixed, hard-coded test points in the open disk: radii 0.1..0.9 at spread angles.
std::vector<std::complex<double>> disk_test_points(int count);

} // namespace ubm
