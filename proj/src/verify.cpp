#include "ubm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "ubm/boolean.hpp"
#include "ubm/convolution.hpp"
#include "ubm/errors.hpp"
#include "ubm/fock.hpp"
#include "ubm/monotone.hpp"
#include "ubm/ode.hpp"
#include "ubm/transforms.hpp"

namespace ubm {

namespace {

using C = std::complex<double>;
using Moments = MomentSequence<C>;

class Recorder {
public:
    Recorder(std::string suite, std::optional<double> tolerance, std::vector<CheckResult>& out)
        : suite_(std::move(suite)), tolerance_(tolerance), out_(out)
    {
    }

    void agreement(const std::string& name, double value, double threshold)
    {
        structural(name, value, tolerance_.value_or(threshold));
    }

    void structural(const std::string& name, double value, double threshold)
    {
        // NaN never passes.
        out_.push_back({suite_, name, value, threshold, value <= threshold});
    }

private:
    std::string suite_;
    std::optional<double> tolerance_;
    std::vector<CheckResult>& out_;
};

Moments monotone_moments(double t, int order)
{
    Moments::Vector m(order);
    for (int k = 1; k <= order; ++k)
        m[k - 1] = monotone_moment(t, k);
    return Moments(m);
}

Moments boolean_moments(double t, int order)
{
    Moments::Vector m(order);
    for (int k = 1; k <= order; ++k)
        m[k - 1] = boolean_moment(t, k);
    return Moments(m);
}

std::string at_t(double t)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "t=%g", t);
    return buf;
}

void suite_ode(Recorder& r)
{
    const auto points = disk_test_points(10);
    for (double t : {0.5, 1.0, 2.0}) {
        double z_err = 0.0, psi_err = 0.0, implicit = 0.0;
        for (const C z : points) {
            z_err = std::max(z_err, std::abs(integrate_K_ode(z, t) - Z_closed_form(t, z)));
            const C rho = integrate_rho_ode(z, t);
            psi_err = std::max(psi_err, std::abs(rho - monotone_psi(t, z)));
            implicit = std::max(implicit, std::abs(rho_implicit_residual(rho, z, t)));
        }
        r.agreement("K flow vs closed form " + at_t(t), z_err, 1e-8);
        r.agreement("psi flow vs closed form " + at_t(t), psi_err, 1e-8);
        r.agreement("implicit relation residual " + at_t(t), implicit, 1e-8);
    }
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        const Eigen::VectorXd m = integrate_monotone_moment_system(t, 20);
        double err = 0.0;
        for (int n = 1; n <= 20; ++n)
            err = std::max(err, std::abs(m[n - 1] - monotone_moment(t, n)));
        r.agreement("moment system vs Legendre " + at_t(t), err, 1e-7);
    }
    // Error ratio under step halving; 16 for a fourth-order method.
    const C z(0.4, 0.3);
    const double t = 1.0;
    const C exact = Z_closed_form(t, z);
    const double e1 = std::abs(integrate_K_ode(z, t, ODEConfig{0.05}) - exact);
    const double e2 = std::abs(integrate_K_ode(z, t, ODEConfig{0.025}) - exact);
    r.structural("RK4 step-halving ratio distance from 16", std::abs(e1 / e2 - 16.0), 4.0);
}

void suite_semigroup(Recorder& r)
{
    const int n = 12;
    r.agreement("monotone convolution mu_0.5 > mu_1.0 = mu_1.5",
                (monotone_convolve(monotone_moments(0.5, n), monotone_moments(1.0, n)).m - monotone_moments(1.5, n).m)
                    .cwiseAbs()
                    .maxCoeff(),
                1e-9);
    r.agreement("boolean convolution nu_0.5 x nu_1.0 = nu_1.5",
                (boolean_convolve(boolean_moments(0.5, n), boolean_moments(1.0, n)).m - boolean_moments(1.5, n).m)
                    .cwiseAbs()
                    .maxCoeff(),
                1e-9);
    double zc = 0.0, fp = 0.0;
    for (const C z : disk_test_points(20)) {
        zc = std::max(zc, std::abs(Z_closed_form(0.5, Z_closed_form(1.0, z)) - Z_closed_form(1.5, z)));
        fp = std::max(fp, std::abs(F_t_closed_form(0.5, z) * F_t_closed_form(1.0, z) - F_t_closed_form(1.5, z)));
    }
    r.agreement("Z_0.5 o Z_1.0 = Z_1.5", zc, 1e-10);
    r.agreement("F_0.5 F_1.0 = F_1.5", fp, 1e-10);
}

void suite_quadrature(Recorder& r)
{
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        double err = 0.0;
        for (int n = 1; n <= 20; ++n)
            err = std::max(err, std::abs(monotone_moment_by_quadrature(t, n, 64) - monotone_moment(t, n)));
        r.agreement("density quadrature vs Legendre " + at_t(t), err, 1e-8);
    }
}

void suite_fock(Recorder& r)
{
    const double t = 1.0;
    const auto rec = moment_recursion(t, 12);
    double rec_err = 0.0;
    for (int n = 1; n <= 12; ++n)
        rec_err = std::max(rec_err, std::abs(rec[n - 1] - boolean_moment(t, n)));
    r.agreement("exact recursion vs Laguerre t=1", rec_err, 1e-12);

    const FockGrid grid(t, 1024);
    const auto U = build_U<double>(t, grid);
    const auto vac = vacuum_moments(U, 8);
    r.agreement("vacuum moment n=1 M=1024", std::abs(vac[0] - std::exp(-0.5)), 1e-14);
    r.agreement("vacuum moment n=2 M=1024", std::abs(vac[1] - (std::exp(-1.0) - std::exp(-0.5))), 2e-3);
    double err = 0.0;
    for (int n = 1; n <= 8; ++n)
        err = std::max(err, std::abs(vac[n - 1] - boolean_moment(t, n)));
    // First-order discretization error; the constant stays below 10.
    r.structural("vacuum moments n<=8 M=1024 within 10 dt", err, 10.0 * grid.dt());

    // The grid operator is unitary only up to O(dt), with constant about 1.
    const FockGrid coarse(t, 256);
    r.structural("unitarity defect M=256 within 2 dt", unitarity_defect(build_U<double>(t, coarse)), 2.0 * coarse.dt());
}

void suite_lem(Recorder& r)
{
    const double t = 1.0;
    const auto coarse = verify_lem_identities(t, FockGrid(t, 256), 4);
    const auto fine = verify_lem_identities(t, FockGrid(t, 512), 4);
    for (int i = 1; i <= 4; ++i) {
        const auto& a = coarse[i - 1];
        const auto& b = fine[i - 1];
        const std::string tag = " i=" + std::to_string(i);
        // Ratio of residuals across one grid doubling, 0.5 at first order.
        if (i > 1)
            r.structural("power residual halving" + tag, std::abs(b.power_residual / a.power_residual - 0.5), 0.1);
        r.structural("functional residual halving" + tag,
                     std::abs(b.functional_residual / a.functional_residual - 0.5), 0.1);
        r.structural("scalar residual halving" + tag, std::abs(b.scalar_residual / a.scalar_residual - 0.5), 0.1);
    }
    r.agreement("scalar identity i=1 equals e^{-1/2}/2", std::abs(fine[0].scalar_value - 0.5 * std::exp(-0.5)), 1e-3);
}

} // namespace

Suite parse_suite(const std::string& name)
{
    if (name == "ode")
        return Suite::Ode;
    if (name == "semigroup")
        return Suite::Semigroup;
    if (name == "quadrature")
        return Suite::Quadrature;
    if (name == "fock")
        return Suite::Fock;
    if (name == "lem")
        return Suite::Lem;
    if (name == "all")
        return Suite::All;
    throw DomainError("suite must be one of ode, semigroup, quadrature, fock, lem, all; got '" + name + "'");
}

std::string suite_name(Suite s)
{
    switch (s) {
    case Suite::Ode: return "ode";
    case Suite::Semigroup: return "semigroup";
    case Suite::Quadrature: return "quadrature";
    case Suite::Fock: return "fock";
    case Suite::Lem: return "lem";
    case Suite::All: return "all";
    }
    return "all";
}

std::vector<C> disk_test_points(int count)
{
    std::vector<C> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double r = 0.1 + 0.8 * (k % 5) / 4.0;
        const double angle = 2.0 * M_PI * (0.05 + 0.618034 * k);
        out.push_back(std::polar(r, std::fmod(angle, 2.0 * M_PI)));
    }
    return out;
}

std::vector<CheckResult> run_verify(Suite suite, std::optional<double> tolerance)
{
    if (tolerance && !(*tolerance > 0.0))
        throw DomainError("tolerance must be positive");
    std::vector<CheckResult> out;
    const std::pair<Suite, void (*)(Recorder&)> table[] = {
        {Suite::Ode, suite_ode},   {Suite::Semigroup, suite_semigroup}, {Suite::Quadrature, suite_quadrature},
        {Suite::Fock, suite_fock}, {Suite::Lem, suite_lem},
    };
    for (const auto& [s, fn] : table) {
        if (suite != Suite::All && suite != s)
            continue;
        Recorder r(suite_name(s), tolerance, out);
        fn(r);
    }
    return out;
}

} // namespace ubm
