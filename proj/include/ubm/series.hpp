#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>

#include <Eigen/Dense>

#include "ubm/errors.hpp"

namespace ubm {

/// Power series c_0 + c_1 z + ... + c_N z^N truncated at a fixed order N.
///
/// Arithmetic between two series requires equal orders; nothing is ever read
/// or written past index N. Mixed orders throw OrderMismatch instead of being
/// silently truncated to the smaller one.
template <typename Scalar = std::complex<double>>
class TruncatedSeries {
public:
    using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    explicit TruncatedSeries(int order) : c_(Coeffs::Zero(order + 1))
    {
        if (order < 0)
            throw DomainError("series order must be nonnegative");
    }

    explicit TruncatedSeries(Coeffs coeffs) : c_(std::move(coeffs))
    {
        if (c_.size() == 0)
            throw DomainError("series needs at least a constant term");
    }

    TruncatedSeries(int order, std::initializer_list<Scalar> leading) : TruncatedSeries(order)
    {
        int k = 0;
        for (const Scalar& v : leading) {
            if (k > order)
                break;
            c_[k++] = v;
        }
    }

    /// The series z at the given order.
    static TruncatedSeries identity(int order)
    {
        TruncatedSeries s(order);
        if (order >= 1)
            s.c_[1] = Scalar(1);
        return s;
    }

    static TruncatedSeries constant(int order, Scalar value)
    {
        TruncatedSeries s(order);
        s.c_[0] = value;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Coeffs& coeffs() const { return c_; }
    Scalar operator[](int k) const { return c_[k]; }
    Scalar& operator[](int k) { return c_[k]; }

    TruncatedSeries& operator+=(const TruncatedSeries& o)
    {
        require_same_order(o);
        c_ += o.c_;
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o)
    {
        require_same_order(o);
        c_ -= o.c_;
        return *this;
    }
    TruncatedSeries& operator*=(Scalar s)
    {
        c_ *= s;
        return *this;
    }

    void require_same_order(const TruncatedSeries& o) const
    {
        if (o.order() != order())
            throw OrderMismatch("orders " + std::to_string(order()) + " and " +
                                std::to_string(o.order()));
    }

private:
    Coeffs c_;
};

template <typename Scalar>
TruncatedSeries<Scalar> operator+(TruncatedSeries<Scalar> a, const TruncatedSeries<Scalar>& b)
{
    return a += b;
}

template <typename Scalar>
TruncatedSeries<Scalar> operator-(TruncatedSeries<Scalar> a, const TruncatedSeries<Scalar>& b)
{
    return a -= b;
}

template <typename Scalar>
TruncatedSeries<Scalar> operator*(TruncatedSeries<Scalar> a, Scalar s)
{
    return a *= s;
}

template <typename Scalar>
TruncatedSeries<Scalar> operator*(Scalar s, TruncatedSeries<Scalar> a)
{
    return a *= s;
}

/// Cauchy product truncated at N.
template <typename Scalar>
TruncatedSeries<Scalar> operator*(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b)
{
    a.require_same_order(b);
    const int n = a.order();
    TruncatedSeries<Scalar> out(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == Scalar(0))
            continue;
        for (int j = 0; i + j <= n; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

/// The series d with b * d = a through order N.
template <typename Scalar>
TruncatedSeries<Scalar> operator/(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b)
{
    a.require_same_order(b);
    if (b[0] == Scalar(0))
        throw DivisionByZeroConstantTerm();
    const int n = a.order();
    TruncatedSeries<Scalar> d(n);
    for (int k = 0; k <= n; ++k) {
        Scalar acc = a[k];
        for (int j = 1; j <= k; ++j)
            acc -= b[j] * d[k - j];
        d[k] = acc / b[0];
    }
    return d;
}

template <typename Scalar>
TruncatedSeries<Scalar> series_add(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b)
{
    return a + b;
}

template <typename Scalar>
TruncatedSeries<Scalar> series_mul(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b)
{
    return a * b;
}

template <typename Scalar>
TruncatedSeries<Scalar> series_div(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b)
{
    return a / b;
}

/// outer(inner(z)) through order N, by Horner's scheme in the inner series.
template <typename Scalar>
TruncatedSeries<Scalar> series_compose(const TruncatedSeries<Scalar>& outer,
                                       const TruncatedSeries<Scalar>& inner)
{
    outer.require_same_order(inner);
    if (inner[0] != Scalar(0))
        throw NonzeroConstantTerm();
    const int n = outer.order();
    TruncatedSeries<Scalar> acc = TruncatedSeries<Scalar>::constant(n, outer[n]);
    for (int k = n - 1; k >= 0; --k) {
        acc = acc * inner;
        acc[0] += outer[k];
    }
    return acc;
}

/// Evaluates the truncated polynomial at a point.
template <typename Scalar>
Scalar series_eval(const TruncatedSeries<Scalar>& s, Scalar z)
{
    Scalar acc(0);
    for (int k = s.order(); k >= 0; --k)
        acc = acc * z + s[k];
    return acc;
}

} // namespace ubm
