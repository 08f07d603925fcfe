#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ubm/errors.hpp"

namespace ubm {

/// Complex moments m_1..m_N of a probability measure on the unit circle.
/// Index k of `m` holds m_{k+1}.
template <typename Scalar = std::complex<double>>
struct MomentSequence {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Vector m;

    MomentSequence() = default;
    explicit MomentSequence(Vector moments) : m(std::move(moments)) {}

    static MomentSequence dirac_at_one(int order) { return MomentSequence(Vector::Ones(order)); }
    static MomentSequence haar(int order) { return MomentSequence(Vector::Zero(order)); }

    int order() const { return static_cast<int>(m.size()); }

    /// m_k for 1 <= k <= N, with m_0 = 1.
    Scalar operator()(int k) const { return k == 0 ? Scalar(1) : m[k - 1]; }

    /// Largest |m_k|; at most one for a genuine moment sequence.
    double max_modulus() const { return m.size() == 0 ? 0.0 : double(m.cwiseAbs().maxCoeff()); }

    MomentSequence truncated(int order) const
    {
        if (order > this->order())
            throw OrderMismatch("cannot extend a moment sequence of order " +
                                std::to_string(this->order()) + " to " + std::to_string(order));
        return MomentSequence(m.head(order));
    }
};

struct RhoAtom {
    double angle; // in (-pi, pi]
    double mass;  // > 0
};

/// Generator u(z) = i b + sum_j mass_j (x_j + z)/(x_j - z), x_j = exp(i angle_j),
/// of a monotone convolution semigroup. Only discrete rho is supported.
struct GeneratorSpec {
    double b = 0.0;
    std::vector<RhoAtom> rho;

    /// The generator of both unitary Brownian motions: b = 0, rho = delta_1 / 2.
    static GeneratorSpec brownian() { return {0.0, {{0.0, 0.5}}}; }

    void validate() const
    {
        for (std::size_t i = 0; i < rho.size(); ++i) {
            const auto& a = rho[i];
            if (!(a.mass > 0.0) || !std::isfinite(a.mass))
                throw DomainError("generator atom masses must be positive and finite");
            if (!(a.angle > -M_PI && a.angle <= M_PI))
                throw DomainError("generator atom angles must lie in (-pi, pi]");
            for (std::size_t j = 0; j < i; ++j)
                if (rho[j].angle == a.angle)
                    throw DomainError("generator atom angles must be distinct");
        }
    }

    template <typename T>
    std::complex<T> operator()(std::complex<T> z) const
    {
        std::complex<T> u(T(0), T(b));
        for (const auto& a : rho) {
            const std::complex<T> x = std::polar(T(1), T(a.angle));
            u += T(a.mass) * (x + z) / (x - z);
        }
        return u;
    }
};

/// Absolutely continuous measure: density w.r.t. normalized Haar measure
/// d theta / 2 pi, supported on the arc [theta_min, theta_max].
struct AbsolutelyContinuous {
    std::function<double(double)> density;
    double theta_min = -M_PI;
    double theta_max = M_PI;
    int nodes = 4096;
};

struct WeightedAngle {
    double angle;
    double weight;
};

/// Finite sum of point masses at exp(i angle).
struct Atomic {
    std::vector<WeightedAngle> atoms;
};

struct MonotoneBM {
    double t;
};

struct BooleanBM {
    double t;
};

using CircleMeasure = std::variant<AbsolutelyContinuous, Atomic, MonotoneBM, BooleanBM>;

} // namespace ubm
