#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <utility>

#include "ubm/errors.hpp"
#include "ubm/poly.hpp"

namespace ubm {

/// Spectral measure mu_t of the monotone unitary Brownian motion.
///
/// For t > 0 it is absolutely continuous w.r.t. normalized Haar measure with
/// density sqrt(2) cos(theta/2) / sqrt(cos theta - c_t) on the arc
/// cos theta > c_t, where c_t = 2 e^{-t/2} - 1.
template <typename Real = double>
struct MonotoneMeasure {
    Real t;

    explicit MonotoneMeasure(Real time) : t(time)
    {
        if (!(t >= Real(0)) || !std::isfinite(double(t)))
            throw DomainError("time must be finite and nonnegative");
    }

    /// c_t = 2 e^{-t/2} - 1, in (-1, 1] and decreasing in t.
    Real support_cos_bound() const { return Real(2) * std::exp(-t / Real(2)) - Real(1); }

    /// s_t^2 = sin^2(theta_t / 2) = 1 - e^{-t/2}, computed without cancellation.
    Real half_chord_squared() const { return -std::expm1(-t / Real(2)); }

    /// theta_t = arccos(c_t) in [0, pi].
    Real support_half_angle() const { return Real(2) * std::asin(std::sqrt(half_chord_squared())); }
};

/// n-th moment of mu_t: (P_n(c_t) + P_{n-1}(c_t)) / 2. Returns 1 for n = 0.
template <typename Real>
Real monotone_moment(Real t, int n)
{
    if (n < 0)
        throw DomainError("moment index must be nonnegative");
    if (n == 0)
        return Real(1);
    const Real c = MonotoneMeasure<Real>(t).support_cos_bound();
    return (legendre(n, c) + legendre(n - 1, c)) / Real(2);
}

/// Density value; `unbounded` marks the inverse-square-root singularity at
/// the support endpoints, where `value` is +infinity.
struct DensityValue {
    double value;
    bool unbounded;
};

/// Density of mu_t w.r.t. d theta / 2 pi at theta in (-pi, pi). Requires t > 0.
inline DensityValue monotone_density(double t, double theta)
{
    if (!(t > 0.0))
        throw DomainError("monotone density requires t > 0 (mu_0 is a point mass)");
    if (!(theta > -std::numbers::pi && theta < std::numbers::pi))
        throw DomainError("theta must lie in (-pi, pi)");
    const MonotoneMeasure<double> mu(t);
    // cos theta - c_t = 2 (s_t^2 - sin^2(theta/2)).
    const double s2 = mu.half_chord_squared();
    const double sh = std::sin(theta / 2.0);
    const double gap = s2 - sh * sh;
    if (std::abs(gap) <= 8.0 * std::numeric_limits<double>::epsilon() * s2)
        return {std::numeric_limits<double>::infinity(), true};
    if (gap < 0.0)
        return {0.0, false};
    return {std::cos(theta / 2.0) / std::sqrt(gap), false};
}

/// Support arc (-theta_t, theta_t).
inline std::pair<double, double> monotone_support(double t)
{
    const double h = MonotoneMeasure<double>(t).support_half_angle();
    return {-h, h};
}

/// Moment int e^{i n theta} d mu_t computed from the density.
///
/// The substitution sin(theta/2) = s_t sin(phi) turns density(theta) d theta
/// into 2 d phi, removing both endpoint singularities; the remaining integrand
/// exp(i n theta(phi)) is smooth and 2 pi periodic in phi, so the trapezoidal
/// rule converges geometrically. The grid is doubled from `grid` nodes until two
/// successive sums agree within `tolerance`.
inline std::complex<double> monotone_moment_by_quadrature(double t, int n, int grid, double tolerance = 1e-13,
                                                          int max_doublings = 16)
{
    if (!(t > 0.0))
        throw DomainError("quadrature requires t > 0");
    if (n < 0)
        throw DomainError("moment index must be nonnegative");
    if (grid < 1)
        throw DomainError("quadrature grid must be positive");
    const double s = std::sqrt(MonotoneMeasure<double>(t).half_chord_squared());

    auto trapezoid = [&](int nodes) {
        std::complex<double> acc(0.0);
        const double h = 2.0 * std::numbers::pi / nodes;
        for (int j = 0; j < nodes; ++j) {
            const double phi = -std::numbers::pi + (j + 0.5) * h;
            const double theta = 2.0 * std::asin(s * std::sin(phi));
            acc += std::polar(1.0, n * theta);
        }
        return acc / double(nodes);
    };

    int nodes = grid;
    std::complex<double> prev = trapezoid(nodes);
    for (int k = 0; k < max_doublings; ++k) {
        nodes *= 2;
        const std::complex<double> cur = trapezoid(nodes);
        if (std::abs(cur - prev) <= tolerance)
            return cur;
        prev = cur;
    }
    throw QuadratureNonConvergence("moment " + std::to_string(n) + " at t = " + std::to_string(t));
}

} // namespace ubm
