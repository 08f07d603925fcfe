#pragma once

namespace ubm {

enum class PolyFamily { Legendre, LaguerreAlpha1 };

/// Legendre polynomial P_n(x) by upward three-term recurrence
///   (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
template <typename Real>
Real legendre(int n, Real x)
{
    if (n <= 0)
        return Real(1);
    Real prev(1), cur = x;
    for (int k = 1; k < n; ++k) {
        Real next = (Real(2 * k + 1) * x * cur - Real(k) * prev) / Real(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Generalized Laguerre polynomial of index one, L_n^{(1)}(x):
///   (k+1) L_{k+1} = (2k+2-x) L_k - (k+1) L_{k-1}.
template <typename Real>
Real laguerre1(int n, Real x)
{
    if (n <= 0)
        return Real(1);
    Real prev(1), cur = Real(2) - x;
    for (int k = 1; k < n; ++k) {
        Real next = ((Real(2 * k + 2) - x) * cur - Real(k + 1) * prev) / Real(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

template <typename Real>
Real poly_eval(PolyFamily family, int n, Real x)
{
    return family == PolyFamily::Legendre ? legendre(n, x) : laguerre1(n, x);
}

} // namespace ubm
