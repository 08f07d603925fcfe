#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>
#include <variant>

#include "ubm/errors.hpp"
#include "ubm/measure.hpp"
#include "ubm/series.hpp"

// Transform calculus for probability measures on the unit circle:
//   psi(z) = sum_k m_k z^k,  K = psi / (1 + psi),  F = K / z,
//   H = 1 + 2 psi (Herglotz transform),
// together with the closed forms for the monotone (K = Z_t) and boolean
// (F = F_t) unitary Brownian motion semigroups.

namespace ubm {

namespace detail {

template <typename Real>
void require_in_disk(const std::complex<Real>& z, const char* what)
{
    if (!(std::abs(z) < Real(1)))
        throw DomainError(std::string(what) + " requires |z| < 1");
}

template <typename Real>
void require_time(Real t)
{
    if (!(t >= Real(0)) || !std::isfinite(double(t)))
        throw DomainError("time must be finite and nonnegative");
}

template <typename Scalar>
void require_zero_constant(const TruncatedSeries<Scalar>& s)
{
    if (s[0] != Scalar(0))
        throw NonzeroConstantTerm();
}

} // namespace detail

template <typename Scalar>
TruncatedSeries<Scalar> psi_from_moments(const MomentSequence<Scalar>& m)
{
    TruncatedSeries<Scalar> psi(m.order());
    for (int k = 1; k <= m.order(); ++k)
        psi[k] = m(k);
    return psi;
}

template <typename Scalar>
MomentSequence<Scalar> moments_from_psi(const TruncatedSeries<Scalar>& psi)
{
    return MomentSequence<Scalar>(psi.coeffs().tail(psi.order()));
}

template <typename Scalar>
TruncatedSeries<Scalar> K_from_psi(const TruncatedSeries<Scalar>& psi)
{
    detail::require_zero_constant(psi);
    return psi / (TruncatedSeries<Scalar>::constant(psi.order(), Scalar(1)) + psi);
}

template <typename Scalar>
TruncatedSeries<Scalar> psi_from_K(const TruncatedSeries<Scalar>& K)
{
    detail::require_zero_constant(K);
    return K / (TruncatedSeries<Scalar>::constant(K.order(), Scalar(1)) - K);
}

/// F = K / z, returned one order lower than psi (its constant term is m_1).
template <typename Scalar>
TruncatedSeries<Scalar> F_from_psi(const TruncatedSeries<Scalar>& psi)
{
    if (psi.order() < 1)
        throw DomainError("F transform needs a series of order at least one");
    const auto K = K_from_psi(psi);
    return TruncatedSeries<Scalar>(typename TruncatedSeries<Scalar>::Coeffs(K.coeffs().tail(K.order())));
}

/// Inverse of F_from_psi: psi = zF / (1 - zF), one order higher than F.
template <typename Scalar>
TruncatedSeries<Scalar> psi_from_F(const TruncatedSeries<Scalar>& F)
{
    const int n = F.order() + 1;
    TruncatedSeries<Scalar> zF(n);
    for (int k = 0; k <= F.order(); ++k)
        zF[k + 1] = F[k];
    return psi_from_K(zF);
}

/// phi(z) = (z + 1)^2 / z, a conformal bijection of the open disk onto C \ [0, 4].
template <typename Real>
std::complex<Real> conformal_phi(std::complex<Real> z)
{
    if (z == std::complex<Real>(0))
        throw DomainError("phi is singular at z = 0");
    const auto zp1 = z + Real(1);
    return zp1 * zp1 / z;
}

/// Roots of Z^2 + (2 - w) Z + 1 = 0. The roots multiply to one, so the one of
/// modulus <= 1 is the reciprocal of the one computed without cancellation.
template <typename Real>
struct QuadraticRoots {
    std::complex<Real> inner; // |inner| <= 1
    std::complex<Real> outer; // |outer| >= 1
    /// Both roots lie within 1e-9 of the unit circle; the selection is then
    /// sensitive to rounding.
    bool ambiguous;
};

template <typename Real>
QuadraticRoots<Real> phi_preimages(std::complex<Real> w)
{
    using C = std::complex<Real>;
    const C b = w - Real(2);
    const C s = std::sqrt(w * (w - Real(4)));
    const C big = (std::real(std::conj(b) * s) >= Real(0) ? b + s : b - s) / Real(2);
    QuadraticRoots<Real> r{C(1) / big, big, false};
    if (std::abs(r.inner) > std::abs(r.outer))
        std::swap(r.inner, r.outer);
    r.ambiguous = std::abs(std::abs(r.outer) - Real(1)) < Real(1e-9);
    return r;
}

/// Preimage of w under phi inside the closed unit disk.
template <typename Real>
std::complex<Real> phi_inverse(std::complex<Real> w)
{
    if (w.imag() == Real(0) && w.real() >= Real(0) && w.real() <= Real(4))
        throw DomainError("phi_inverse is undefined on the cut [0, 4]");
    return phi_preimages(w).inner;
}

template <typename Real>
struct ClosedFormValue {
    std::complex<Real> value;
    bool ambiguous = false;
};

/// K-transform Z_t(z) of the monotone unitary Brownian motion at time t,
/// the bounded root of Z^2 + (2 - w) Z + 1 = 0 with w = e^{t/2} phi(z).
template <typename Real>
ClosedFormValue<Real> Z_closed_form_checked(Real t, std::complex<Real> z)
{
    detail::require_time(t);
    detail::require_in_disk(z, "Z_closed_form");
    if (z == std::complex<Real>(0))
        return {z, false};
    if (t == Real(0))
        return {z, false};
    const auto r = phi_preimages(std::exp(t / Real(2)) * conformal_phi(z));
    return {r.inner, r.ambiguous};
}

template <typename Real>
std::complex<Real> Z_closed_form(Real t, std::complex<Real> z)
{
    return Z_closed_form_checked(t, z).value;
}

/// psi of the monotone Brownian motion, Z_t / (1 - Z_t).
template <typename Real>
std::complex<Real> monotone_psi(Real t, std::complex<Real> z)
{
    const auto Z = Z_closed_form(t, z);
    return Z / (Real(1) - Z);
}

/// F-transform of the boolean unitary Brownian motion, exp(t (z+1) / (2 (z-1))).
template <typename Real>
std::complex<Real> F_t_closed_form(Real t, std::complex<Real> z)
{
    detail::require_time(t);
    detail::require_in_disk(z, "F_t_closed_form");
    return std::exp(t * (z + Real(1)) / (Real(2) * (z - Real(1))));
}

/// The inner function theta_t(z) = z F_t(z), defined on the closed disk minus {1}.
template <typename Real>
std::complex<Real> theta_t(Real t, std::complex<Real> z)
{
    detail::require_time(t);
    if (z == std::complex<Real>(1))
        throw DomainError("theta_t is singular at z = 1");
    if (std::abs(z) > Real(1) + Real(16) * std::numeric_limits<Real>::epsilon())
        throw DomainError("theta_t requires |z| <= 1");
    return z * std::exp(t * (z + Real(1)) / (Real(2) * (z - Real(1))));
}

/// Derivative of theta_t, F_t(z) (1 - t z / (z - 1)^2).
template <typename Real>
std::complex<Real> theta_t_derivative(Real t, std::complex<Real> z)
{
    const auto zm1 = z - Real(1);
    return std::exp(t * (z + Real(1)) / (Real(2) * zm1)) * (Real(1) - t * z / (zm1 * zm1));
}

/// psi of the boolean Brownian motion, theta_t / (1 - theta_t).
template <typename Real>
std::complex<Real> boolean_psi(Real t, std::complex<Real> z)
{
    detail::require_in_disk(z, "boolean_psi");
    const auto th = theta_t(t, z);
    return th / (Real(1) - th);
}

/// Herglotz transform H(z) = int (xi + z)/(xi - z) d mu(xi) = 1 + 2 psi(z).
inline std::complex<double> herglotz(const CircleMeasure& measure, std::complex<double> z)
{
    using C = std::complex<double>;
    detail::require_in_disk(z, "herglotz");
    return std::visit(
        [z](const auto& m) -> C {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, MonotoneBM>) {
                detail::require_time(m.t);
                const double c = 2.0 * std::exp(-m.t / 2.0) - 1.0;
                return (z + 1.0) / std::sqrt(1.0 - 2.0 * z * c + z * z);
            } else if constexpr (std::is_same_v<M, BooleanBM>) {
                const C th = theta_t(m.t, z);
                return (1.0 + th) / (1.0 - th);
            } else if constexpr (std::is_same_v<M, Atomic>) {
                C h(0.0);
                for (const auto& a : m.atoms) {
                    const C xi = std::polar(1.0, a.angle);
                    h += a.weight * (xi + z) / (xi - z);
                }
                return h;
            } else {
                // Midpoint rule over the support arc; midpoints never touch
                // the arc endpoints, where densities may be singular.
                if (m.nodes < 1 || !(m.theta_max > m.theta_min))
                    throw DomainError("absolutely continuous measure needs a nonempty arc and nodes");
                const double h = (m.theta_max - m.theta_min) / m.nodes;
                C acc(0.0);
                for (int j = 0; j < m.nodes; ++j) {
                    const double th = m.theta_min + (j + 0.5) * h;
                    const C xi = std::polar(1.0, th);
                    acc += m.density(th) * (xi + z) / (xi - z);
                }
                return acc * h / (2.0 * std::numbers::pi);
            }
        },
        measure);
}

} // namespace ubm
