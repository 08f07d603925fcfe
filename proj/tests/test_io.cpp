#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ubm/errors.hpp"
#include "ubm/io.hpp"
#include "ubm/verify.hpp"

using namespace ubm;
using C = std::complex<double>;
using Moments = MomentSequence<C>;

TEST_CASE("format names")
{
    CHECK(parse_format("json") == Format::Json);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK_THROWS_AS(parse_format("xml"), DomainError);
    CHECK(format_name(Format::Csv) == "csv");
}

TEST_CASE("17 significant digits round-trip")
{
    for (double v : {M_PI, -1.0 / 3.0, 1e-300, 0.1, std::exp(-0.5)})
        CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("JSON moment file")
{
    const Moments m = parse_moment_sequence(R"({"order": 2, "moments": [[0.5, 0], [-0.25, 1e-3]]})");
    REQUIRE(m.order() == 2);
    CHECK(m(1) == C(0.5, 0.0));
    CHECK(m(2) == C(-0.25, 1e-3));
    CHECK_THROWS_AS(parse_moment_sequence(R"({"order": 3, "moments": [[0.5, 0]]})"), DomainError);
    CHECK_THROWS_AS(parse_moment_sequence(R"({"moments": [[0.5]]})"), DomainError);
    CHECK_THROWS_AS(parse_moment_sequence(R"({"moments": )"), DomainError);
    CHECK_THROWS_AS(parse_moment_sequence("   "), DomainError);
}

TEST_CASE("CSV round-trip is exact")
{
    Moments::Vector v(3);
    v << C(M_PI / 4, -1.0 / 3.0), C(std::exp(-0.5), 0.0), C(-1e-17, 0.7);
    const Moments m(v);
    const Moments back = parse_moment_sequence(moment_sequence_csv(m));
    REQUIRE(back.order() == 3);
    for (int k = 1; k <= 3; ++k)
        CHECK(back(k) == m(k));
    CHECK_THROWS_AS(parse_moment_sequence("n,re,im\n2,0,0\n"), DomainError);
    CHECK_THROWS_AS(parse_moment_sequence("a,b\n1,0,0\n"), DomainError);
}

TEST_CASE("verify suites")
{
    CHECK(parse_suite("lem") == Suite::Lem);
    CHECK_THROWS_AS(parse_suite("everything"), DomainError);
    const auto pts = disk_test_points(20);
    for (const C z : pts)
        CHECK(std::abs(z) < 0.95);
    const auto semigroup = run_verify(Suite::Semigroup);
    REQUIRE(semigroup.size() == 4);
    for (const auto& r : semigroup)
        CHECK_MESSAGE(r.passed, r.name);
    // A tolerance below attainable accuracy must make the checks fail.
    for (const auto& r : run_verify(Suite::Semigroup, 1e-30))
        CHECK_FALSE(r.passed);
    CHECK_THROWS_AS(run_verify(Suite::Ode, -1.0), DomainError);
}
