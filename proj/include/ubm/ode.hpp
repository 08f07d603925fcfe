#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "ubm/errors.hpp"
#include "ubm/measure.hpp"

// Fixed-step RK4 integration of the differential equations whose solutions
// are the closed forms: the K-transform flow, the generating function rho of
// the moments, and the triangular moment system itself.

namespace ubm {

enum class OdeMethod { RK4 };

struct ODEConfig {
    double step = 1e-4;
    OdeMethod method = OdeMethod::RK4;
    double tolerance = 1e-8;

    void validate(double t_end) const
    {
        if (!(step > 0.0) || !std::isfinite(step))
            throw DomainError("ODE step must be positive");
        if (!(tolerance > 0.0))
            throw DomainError("ODE tolerance must be positive");
        if (!(t_end >= 0.0) || !std::isfinite(t_end))
            throw DomainError("ODE end time must be finite and nonnegative");
        if (t_end > 0.0 && step > t_end)
            throw DomainError("ODE step exceeds the integration interval");
    }
};

/// Classical RK4 from 0 to t_end in ceil(t_end / step) equal steps, so the
/// last step lands on t_end exactly. `guard(y, t)` may throw to abort.
template <typename State, typename Rhs, typename Guard>
State rk4_integrate(Rhs&& rhs, State y, double t_end, double step, Guard&& guard)
{
    if (t_end == 0.0)
        return y;
    const long steps = static_cast<long>(std::ceil(t_end / step - 1e-9));
    const double h = t_end / double(steps);
    for (long i = 0; i < steps; ++i) {
        const State k1 = rhs(y);
        const State k2 = rhs(State(y + (h / 2.0) * k1));
        const State k3 = rhs(State(y + (h / 2.0) * k2));
        const State k4 = rhs(State(y + h * k3));
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        guard(y, (i + 1) * h);
    }
    return y;
}

namespace detail {

inline auto disk_guard(const char* what)
{
    return [what](const std::complex<double>& k, double t) {
        if (!(std::abs(k) < 1.0))
            throw StepInstability(std::string(what) + " at t = " + std::to_string(t));
    };
}

} // namespace detail

/// 2 dK/dt = -K (1 + K) / (1 - K), K(0) = z0.
inline std::complex<double> integrate_K_ode(std::complex<double> z0, double t_end, const ODEConfig& cfg = {})
{
    cfg.validate(t_end);
    if (!(std::abs(z0) < 1.0))
        throw DomainError("initial point must lie in the open unit disk");
    auto rhs = [](std::complex<double> k) { return -k * (1.0 + k) / (2.0 * (1.0 - k)); };
    return rk4_integrate(rhs, z0, t_end, cfg.step, detail::disk_guard("K"));
}

/// dK/dt = -K u(K), K(0) = z0, with u the Herglotz generator of `gen`.
inline std::complex<double> integrate_generic_monotone_ode(std::complex<double> z0, const GeneratorSpec& gen,
                                                           double t_end, const ODEConfig& cfg = {})
{
    cfg.validate(t_end);
    gen.validate();
    if (!(std::abs(z0) < 1.0))
        throw DomainError("initial point must lie in the open unit disk");
    auto rhs = [&gen](std::complex<double> k) { return -k * gen(k); };
    return rk4_integrate(rhs, z0, t_end, cfg.step, detail::disk_guard("K"));
}

/// d rho/dt = -rho (1 + rho) (1 + 2 rho) / 2, rho(0) = z / (1 - z).
inline std::complex<double> integrate_rho_ode(std::complex<double> z, double t_end, const ODEConfig& cfg = {})
{
    cfg.validate(t_end);
    if (!(std::abs(z) < 1.0))
        throw DomainError("z must lie in the open unit disk");
    auto rhs = [](std::complex<double> r) { return -0.5 * r * (1.0 + r) * (1.0 + 2.0 * r); };
    auto guard = [](const std::complex<double>& r, double t) {
        if (!(std::abs(r / (1.0 + r)) < 1.0))
            throw StepInstability("rho / (1 + rho) at t = " + std::to_string(t));
    };
    return rk4_integrate(rhs, z / (1.0 - z), t_end, cfg.step, guard);
}

/// rho (1 + rho) / (1 + 2 rho)^2 - z e^{-t/2} / (1 + z)^2, zero along exact solutions.
inline std::complex<double> rho_implicit_residual(std::complex<double> rho, std::complex<double> z, double t)
{
    const auto d = 1.0 + 2.0 * rho;
    const auto zp1 = 1.0 + z;
    return rho * (1.0 + rho) / (d * d) - z * std::exp(-t / 2.0) / (zp1 * zp1);
}

/// Right-hand side of the moment system, with m_0 = 1:
///   dm_n/dt = -1/2 sum_{l=1}^n m_{n-l} m_l - sum_{k=2}^n sum_{l=1}^{k-1} m_{n-k} m_{k-l} m_l.
inline Eigen::VectorXd monotone_moment_rhs(const Eigen::VectorXd& m)
{
    const int n_max = static_cast<int>(m.size());
    auto mom = [&m](int k) { return k == 0 ? 1.0 : m[k - 1]; };
    // sq[k] = sum_{l=1}^{k-1} m_{k-l} m_l, the z^k coefficient of rho^2.
    Eigen::VectorXd sq = Eigen::VectorXd::Zero(n_max + 1);
    for (int k = 2; k <= n_max; ++k)
        for (int l = 1; l < k; ++l)
            sq[k] += mom(k - l) * mom(l);
    Eigen::VectorXd out(n_max);
    for (int n = 1; n <= n_max; ++n) {
        double a = 0.0;
        for (int l = 1; l <= n; ++l)
            a += mom(n - l) * mom(l);
        double b = 0.0;
        for (int k = 2; k <= n; ++k)
            b += mom(n - k) * sq[k];
        out[n - 1] = -0.5 * a - b;
    }
    return out;
}

/// Moments m_1..m_{n_max} at t_end from the moment system, m_n(0) = 1.
inline Eigen::VectorXd integrate_monotone_moment_system(double t_end, int n_max, const ODEConfig& cfg = {})
{
    cfg.validate(t_end);
    if (n_max < 1)
        throw DomainError("n_max must be positive");
    auto guard = [](const Eigen::VectorXd& m, double t) {
        if (!m.allFinite() || m.cwiseAbs().maxCoeff() > 1.0 + 1e-6)
            throw StepInstability("moment exceeded unit modulus at t = " + std::to_string(t));
    };
    return rk4_integrate(monotone_moment_rhs, Eigen::VectorXd(Eigen::VectorXd::Ones(n_max)), t_end, cfg.step, guard);
}

} // namespace ubm
