#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ubm/errors.hpp"
#include "ubm/poly.hpp"

// Spectral measure nu_t of the boolean unitary Brownian motion. For t > 0 it
// is purely atomic: atoms at exp(+-i alpha_n), n = 0, 1, 2, ..., where alpha_n
// solves g_t(alpha) = 2 n pi with g_t(alpha) = (t/2) cot(alpha/2) - alpha, and
// each atom of the pair carries weight
//   c_n = 2 (1 - cos alpha_n) / (t + 2 (1 - cos alpha_n)).

namespace ubm {

/// n-th moment of nu_t from the Laguerre closed form. Returns 1 for n = 0.
template <typename Real>
Real boolean_moment(Real t, int n)
{
    if (n < 0)
        throw DomainError("moment index must be nonnegative");
    if (!(t >= Real(0)))
        throw DomainError("time must be nonnegative");
    if (n == 0)
        return Real(1);
    auto term = [t](int deg, int k) { return laguerre1(deg, Real(k) * t) * std::exp(-Real(k) * t / Real(2)); };
    Real m(0);
    for (int k = 1; k <= n; ++k)
        m += term(n - k, k);
    for (int k = 1; k <= n - 1; ++k)
        m -= Real(2) * term(n - k - 1, k);
    for (int k = 1; k <= n - 2; ++k)
        m += term(n - k - 2, k);
    return m;
}

/// g_t in the angle variable, (t/2) cot(theta/2) - theta, strictly decreasing
/// on (0, pi] from +infinity to -pi.
template <typename Real>
Real g_t_eval(Real t, Real theta)
{
    if (!(theta > Real(0) && theta <= std::numbers::pi_v<Real>))
        throw DomainError("g_t is evaluated for theta in (0, pi]");
    if (!(t > Real(0)))
        throw DomainError("g_t requires t > 0");
    return t / Real(2) * std::cos(theta / Real(2)) / std::sin(theta / Real(2)) - theta;
}

template <typename Real = double>
struct Atom {
    std::int64_t n;
    Real alpha;   // angle in (0, pi], strictly decreasing in n
    Real x;       // cos(alpha)
    Real versine; // 1 - cos(alpha), kept separately: x rounds to 1 for large n
    Real weight;  // c_n, carried by each of exp(+i alpha) and exp(-i alpha)
};

template <typename Real = double>
struct AtomList {
    std::vector<Atom<Real>> entries;
    std::int64_t truncation_index = -1; // largest n included
    Real captured_mass = Real(0);       // 2 * sum c_n
};

/// Either a fixed index range n = 0..n_max or a mass target with a hard index cap.
struct TruncationPolicy {
    std::optional<std::int64_t> n_max;
    double mass_target = 1.0 - 1e-8;
    std::int64_t index_cap = 50'000'000;

    static TruncationPolicy up_to(std::int64_t n) { return {n, 0.0, n}; }
    static TruncationPolicy mass(double target, std::int64_t cap = 50'000'000) { return {std::nullopt, target, cap}; }
};

namespace detail {

/// Solves g_t(alpha) = 2 n pi for alpha in (0, upper), where g_t(upper) < 2 n pi.
/// Safeguarded Newton iteration inside a shrinking bracket.
template <typename Real>
Real solve_atom_angle(Real t, std::int64_t n, Real upper)
{
    const Real pi = std::numbers::pi_v<Real>;
    const Real target = Real(2) * Real(n) * pi;
    auto f = [&](Real a) { return t / Real(2) * std::cos(a / Real(2)) / std::sin(a / Real(2)) - a - target; };
    auto df = [&](Real a) {
        const Real s = std::sin(a / Real(2));
        return -t / (Real(4) * s * s) - Real(1);
    };

    // Large-n asymptote of t/alpha - alpha = 2 n pi.
    Real guess = Real(2) * t / (target + std::sqrt(target * target + Real(4) * t));
    if (!(guess < upper))
        guess = upper / Real(2);

    Real hi = upper;
    Real lo = guess / Real(2);
    int halvings = 0;
    while (!(f(lo) > Real(0))) {
        lo /= Real(2);
        if (++halvings > 200 || lo == Real(0))
            throw BracketFailure("no positive side for atom " + std::to_string(n));
    }
    if (!(f(hi) <= Real(0)))
        throw BracketFailure("no negative side for atom " + std::to_string(n));

    Real a = guess > lo && guess < hi ? guess : (lo + hi) / Real(2);
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int iter = 0; iter < 200; ++iter) {
        const Real fa = f(a);
        if (fa == Real(0))
            return a;
        if (fa > Real(0))
            lo = a;
        else
            hi = a;
        Real next = a - fa / df(a);
        if (!(next > lo && next < hi))
            next = (lo + hi) / Real(2);
        if (std::abs(next - a) <= Real(2) * eps * a || hi - lo <= Real(2) * eps * a) {
            // Keep whichever bracket end has the smaller residual.
            Real best = next;
            for (Real cand : {lo, hi, a})
                if (cand > Real(0) && std::abs(f(cand)) < std::abs(f(best)))
                    best = cand;
            return best;
        }
        a = next;
    }
    throw BracketFailure("Newton iteration stalled for atom " + std::to_string(n));
}

template <typename Real>
Atom<Real> make_atom(Real t, std::int64_t n, Real alpha)
{
    const Real sh = std::sin(alpha / Real(2));
    const Real vers = Real(2) * sh * sh;
    return {n, alpha, std::cos(alpha), vers, Real(2) * vers / (t + Real(2) * vers)};
}

} // namespace detail

/// Visits atoms n = 0, 1, ... in index order until the policy is satisfied.
/// `visit(const Atom<Real>&)` is called for each; returns the last index and
/// the captured mass 2 sum c_n (compensated summation).
template <typename Real, typename Visitor>
std::pair<std::int64_t, Real> for_each_atom(Real t, const TruncationPolicy& policy, Visitor&& visit)
{
    if (!(t > Real(0)))
        throw DomainError("atoms are defined for t > 0");
    if (policy.n_max && *policy.n_max < 0)
        throw DomainError("n_max must be nonnegative");
    if (!policy.n_max && !(policy.mass_target > 0.0 && policy.mass_target < 1.0))
        throw DomainError("mass target must lie in (0, 1)");

    Real mass(0), comp(0);
    Real upper = std::numbers::pi_v<Real>;
    std::int64_t n = 0;
    for (;; ++n) {
        const Real alpha = detail::solve_atom_angle(t, n, upper);
        const Atom<Real> atom = detail::make_atom(t, n, alpha);
        visit(atom);
        const Real y = Real(2) * atom.weight - comp;
        const Real s = mass + y;
        comp = (s - mass) - y;
        mass = s;
        upper = alpha;
        if (policy.n_max) {
            if (n >= *policy.n_max)
                break;
        } else {
            if (Real(1) - mass <= Real(1) - Real(policy.mass_target))
                break;
            if (n >= policy.index_cap)
                throw TruncationNotReached("captured mass " + std::to_string(double(mass)) + " at index cap " +
                                           std::to_string(policy.index_cap));
        }
    }
    return {n, mass};
}

/// Atoms of nu_t materialized in index order.
template <typename Real = double>
AtomList<Real> solve_atoms(Real t, const TruncationPolicy& policy)
{
    AtomList<Real> list;
    auto [last, mass] = for_each_atom(t, policy, [&](const Atom<Real>& a) { list.entries.push_back(a); });
    list.truncation_index = last;
    list.captured_mass = mass;
    return list;
}

/// 2 sum_k c_k cos(n alpha_k): the n-th moment of the (truncated) atomic measure.
template <typename Real>
Real boolean_moment_from_atoms(const AtomList<Real>& atoms, int n)
{
    if (n < 0)
        throw DomainError("moment index must be nonnegative");
    Real acc(0), comp(0);
    for (const auto& a : atoms.entries) {
        const Real y = Real(2) * a.weight * std::cos(Real(n) * a.alpha) - comp;
        const Real s = acc + y;
        comp = (s - acc) - y;
        acc = s;
    }
    return acc;
}

template <typename Real = double>
struct AtomMoments {
    Eigen::Matrix<Real, Eigen::Dynamic, 1> moments; // m_1..m_{n_max}
    std::int64_t truncation_index;
    Real captured_mass;
};

/// Moments 1..n_max of the atomic measure accumulated while streaming atoms,
/// for truncations too long to keep in memory.
template <typename Real = double>
AtomMoments<Real> boolean_moments_by_atoms(Real t, int n_max, const TruncationPolicy& policy)
{
    using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    Vec acc = Vec::Zero(n_max), comp = Vec::Zero(n_max);
    auto [last, mass] = for_each_atom(t, policy, [&](const Atom<Real>& a) {
        for (int k = 1; k <= n_max; ++k) {
            const Real y = Real(2) * a.weight * std::cos(Real(k) * a.alpha) - comp[k - 1];
            const Real s = acc[k - 1] + y;
            comp[k - 1] = (s - acc[k - 1]) - y;
            acc[k - 1] = s;
        }
    });
    return {acc, last, mass};
}

/// x_0(t) = cos(alpha_0(t)) for each t; decreasing in t with limit -1.
template <typename Real = double>
std::vector<Real> x0_curve(const std::vector<Real>& t_values)
{
    std::vector<Real> out;
    out.reserve(t_values.size());
    for (Real t : t_values) {
        if (!(t > Real(0)))
            throw DomainError("x0_curve requires t > 0");
        out.push_back(std::cos(detail::solve_atom_angle(t, 0, std::numbers::pi_v<Real>)));
    }
    return out;
}

} // namespace ubm
