#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ubm/errors.hpp"

// Discretized boolean Fock space C + L^2([0, T]) with a one-dimensional
// multiplicity space. A function f on [0, T] is represented by its values at
// the cell midpoints s_j = (j + 1/2) dt scaled by sqrt(dt), so L^2 inner
// products become plain dot products and kernel operators become matrices
// with entries kernel(s_j, s_k) dt.

namespace ubm {

struct FockGrid {
    double T;
    int M;

    FockGrid(double horizon, int cells) : T(horizon), M(cells)
    {
        if (!(T > 0.0) || !std::isfinite(T))
            throw DomainError("grid horizon must be positive");
        if (M < 1)
            throw DomainError("grid needs at least one cell");
    }

    double dt() const { return T / M; }
    double node(int j) const { return (j + 0.5) * dt(); }
};

/// Operator on C + C^M in 2x2 block form [[scalar, row], [col, bulk]].
template <typename Scalar = std::complex<double>>
struct BlockOperator {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Scalar scalar;
    RowVector row;
    Vector col;
    Matrix bulk;

    int cells() const { return static_cast<int>(bulk.rows()); }

    Matrix assembled() const
    {
        const int m = cells();
        Matrix full(m + 1, m + 1);
        full(0, 0) = scalar;
        full.block(0, 1, 1, m) = row;
        full.block(1, 0, m, 1) = col;
        full.block(1, 1, m, m) = bulk;
        return full;
    }

    /// (scalar v0 + row vb, col v0 + bulk vb).
    Vector apply(const Vector& v) const
    {
        const int m = cells();
        Vector out(m + 1);
        const auto vb = v.tail(m);
        out[0] = scalar * v[0] + (row * vb)(0, 0);
        out.tail(m).noalias() = bulk * vb;
        out.tail(m) += col * v[0];
        return out;
    }
};

/// Grid version of the solution U_t of dU = (dA - dA* - P_Omega dt / 2) U:
///   scalar = e^{-t/2},
///   row_j  = -e^{-(t - s_j)/2} sqrt(dt)           (s_j < t),
///   col_j  =  e^{-s_j/2} sqrt(dt)                 (s_j < t),
///   bulk   = I + V,  V_jk = -e^{-(s_j - s_k)/2} dt (s_k < s_j < t).
template <typename Scalar = std::complex<double>>
BlockOperator<Scalar> build_U(double t, const FockGrid& grid)
{
    if (grid.M < 8)
        throw GridTooCoarse("need at least 8 cells, got " + std::to_string(grid.M));
    if (!(t >= 0.0 && t <= grid.T))
        throw DomainError("t must lie in [0, T]");
    using Op = BlockOperator<Scalar>;
    const int m = grid.M;
    const double dt = grid.dt();
    const double sq = std::sqrt(dt);
    Op U{Scalar(std::exp(-t / 2.0)), Op::RowVector::Zero(m), Op::Vector::Zero(m), Op::Matrix::Identity(m, m)};
    for (int j = 0; j < m; ++j) {
        const double sj = grid.node(j);
        if (!(sj < t))
            continue;
        U.row[j] = Scalar(-std::exp(-(t - sj) / 2.0) * sq);
        U.col[j] = Scalar(std::exp(-sj / 2.0) * sq);
        for (int k = 0; k < j; ++k)
            U.bulk(j, k) = Scalar(-std::exp(-(sj - grid.node(k)) / 2.0) * dt);
    }
    return U;
}

/// <Omega, U^n Omega>, the top-left entry of U^n.
template <typename Scalar>
Scalar vacuum_moment(const BlockOperator<Scalar>& U, int n)
{
    if (n < 0)
        throw DomainError("power must be nonnegative");
    typename BlockOperator<Scalar>::Vector v = BlockOperator<Scalar>::Vector::Zero(U.cells() + 1);
    v[0] = Scalar(1);
    for (int k = 0; k < n; ++k)
        v = U.apply(v);
    return v[0];
}

/// Vacuum moments 1..n_max sharing one pass of repeated application.
template <typename Scalar>
std::vector<Scalar> vacuum_moments(const BlockOperator<Scalar>& U, int n_max)
{
    std::vector<Scalar> out;
    typename BlockOperator<Scalar>::Vector v = BlockOperator<Scalar>::Vector::Zero(U.cells() + 1);
    v[0] = Scalar(1);
    for (int k = 0; k < n_max; ++k) {
        v = U.apply(v);
        out.push_back(v[0]);
    }
    return out;
}

/// Grid-free vacuum moments from the closed recursion
///   m_{n+1} = e^{-t/2} [ m_n + sum_{k=0}^{n-1} m_{n-1-k} a_k ],
///   a_k = sum_{i=0}^{k} C(k, i) (-t)^{i+1} / (i+1)!,
/// with m_0 = 1. Returns m_1..m_{n_max}.
template <typename Real = double>
std::vector<Real> moment_recursion(Real t, int n_max)
{
    if (n_max < 1)
        throw DomainError("n_max must be positive");
    if (!(t >= Real(0)))
        throw DomainError("time must be nonnegative");
    std::vector<Real> a(n_max, Real(0));
    for (int k = 0; k < n_max; ++k) {
        Real binom(1), term(-t); // C(k, 0), (-t)^1 / 1!
        for (int i = 0; i <= k; ++i) {
            a[k] += binom * term;
            binom = binom * Real(k - i) / Real(i + 1);
            term = term * (-t) / Real(i + 2);
        }
    }
    const Real decay = std::exp(-t / Real(2));
    std::vector<Real> m(n_max + 1);
    m[0] = Real(1);
    for (int n = 0; n < n_max; ++n) {
        Real acc = m[n];
        for (int k = 0; k <= n - 1; ++k)
            acc += m[n - 1 - k] * a[k];
        m[n + 1] = decay * acc;
    }
    return {m.begin() + 1, m.end()};
}

/// max |U* U - I| over all entries of the assembled operator.
template <typename Scalar>
double unitarity_defect(const BlockOperator<Scalar>& U)
{
    using Matrix = typename BlockOperator<Scalar>::Matrix;
    const Matrix full = U.assembled();
    Matrix gram = full.adjoint() * full;
    gram.diagonal().array() -= Scalar(1);
    return gram.cwiseAbs().maxCoeff();
}

struct LemResidual {
    int i;
    double power_residual;      // sup |(V^i)_jk / dt - zeta^i(s_j, s_k)|
    double functional_residual; // sup |(row V^i)_k / sqrt(dt) + delta^{i+1}(s_k)|
    double scalar_value;        // row V^i col
    double scalar_expected;     // (-t)^{i+1} / (i+1)! e^{-t/2}
    double scalar_residual;
};

/// Grid residuals of the three kernel identities behind the moment recursion,
/// for i = 1..i_max, all built from powers of the grid Volterra block V:
///   (a) V^i against the kernel zeta^i(s, r) = (-1)^i (s-r)^{i-1}/(i-1)! e^{-(s-r)/2}, r < s < t;
///   (b) the functional row V^i against the kernel -delta^{i+1}(r),
///       delta^{i+1}(r) = (-1)^i (t-r)^i / i! e^{-(t-r)/2};
///   (c) the scalar row V^i col against (-t)^{i+1}/(i+1)! e^{-t/2}.
/// Each is O(dt) under refinement; (a) vanishes identically at i = 1.
inline std::vector<LemResidual> verify_lem_identities(double t, const FockGrid& grid, int i_max)
{
    if (i_max < 1 || i_max > 6)
        throw DomainError("i_max must lie in [1, 6]");
    const auto U = build_U<double>(t, grid);
    const int m = grid.M;
    const double dt = grid.dt();
    const double sq = std::sqrt(dt);
    const Eigen::MatrixXd V = U.bulk - Eigen::MatrixXd::Identity(m, m);

    std::vector<LemResidual> out;
    Eigen::MatrixXd P = V;
    double fact_im1 = 1.0; // (i-1)!
    for (int i = 1; i <= i_max; ++i) {
        if (i > 1) {
            P = (V * P).eval();
            fact_im1 *= (i - 1);
        }
        const double sign_i = (i % 2 == 0) ? 1.0 : -1.0;
        double power_res = 0.0;
        for (int j = 0; j < m; ++j) {
            const double sj = grid.node(j);
            for (int k = 0; k < m; ++k) {
                const double sk = grid.node(k);
                double kernel = 0.0;
                if (sk < sj && sj < t)
                    kernel = sign_i * std::pow(sj - sk, i - 1) / fact_im1 * std::exp(-(sj - sk) / 2.0);
                power_res = std::max(power_res, std::abs(P(j, k) / dt - kernel));
            }
        }
        const Eigen::RowVectorXd functional = U.row * P;
        const double fact_i = fact_im1 * i;
        double func_res = 0.0;
        for (int k = 0; k < m; ++k) {
            const double sk = grid.node(k);
            const double delta_next =
                sk < t ? sign_i * std::pow(t - sk, i) / fact_i * std::exp(-(t - sk) / 2.0) : 0.0;
            func_res = std::max(func_res, std::abs(functional[k] / sq + delta_next));
        }
        const double value = functional.dot(U.col);
        const double expected = std::pow(-t, i + 1) / (fact_i * (i + 1)) * std::exp(-t / 2.0);
        out.push_back({i, power_res, func_res, value, expected, std::abs(value - expected)});
    }
    return out;
}

/// Deviation |Phi(A^k B^l) - Phi(A^k) Phi(B^l)| for the increments
/// A = U_t U_s* - 1 and B = U_v U_u* - 1 over disjoint intervals [s, t), [u, v).
inline double increment_factorization_defect(const FockGrid& grid, double s, double t, double u, double v, int k,
                                             int l)
{
    if (!(0.0 <= s && s <= t && t <= grid.T && 0.0 <= u && u <= v && v <= grid.T))
        throw DomainError("increment intervals must lie in [0, T]");
    if (!(t <= u || v <= s))
        throw DomainError("increment intervals must be disjoint");
    using Matrix = Eigen::MatrixXcd;
    auto increment = [&grid](double a, double b) {
        Matrix inc = build_U<std::complex<double>>(b, grid).assembled() *
                     build_U<std::complex<double>>(a, grid).assembled().adjoint();
        inc.diagonal().array() -= 1.0;
        return inc;
    };
    const Matrix A = increment(s, t);
    const Matrix B = increment(u, v);
    auto power = [](const Matrix& X, int p) {
        Matrix out = Matrix::Identity(X.rows(), X.cols());
        for (int q = 0; q < p; ++q)
            out = (out * X).eval();
        return out;
    };
    const Matrix Ak = power(A, k);
    const Matrix Bl = power(B, l);
    const std::complex<double> joint = (Ak * Bl)(0, 0);
    return std::abs(joint - Ak(0, 0) * Bl(0, 0));
}

} // namespace ubm
