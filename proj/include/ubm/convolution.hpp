#pragma once

#include <string>

#include "ubm/errors.hpp"
#include "ubm/measure.hpp"
#include "ubm/series.hpp"
#include "ubm/transforms.hpp"

namespace ubm {

/// Orders above this make series composition round-off exceed ~1e-9.
inline constexpr int kDefaultConvolutionOrderCap = 64;

namespace detail {

template <typename Scalar>
void check_convolution_orders(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int cap)
{
    if (a.order() != b.order())
        throw OrderMismatch("moment sequences of order " + std::to_string(a.order()) + " and " +
                            std::to_string(b.order()));
    if (a.order() < 1)
        throw DomainError("convolution needs at least one moment");
    if (a.order() > cap)
        throw DomainError("order " + std::to_string(a.order()) + " exceeds the cap " + std::to_string(cap));
}

} // namespace detail

/// Moments of mu1 |> mu2, from K_nu = K_mu1 o K_mu2.
template <typename Scalar>
MomentSequence<Scalar> monotone_convolve(const MomentSequence<Scalar>& m1, const MomentSequence<Scalar>& m2,
                                         int order_cap = kDefaultConvolutionOrderCap)
{
    detail::check_convolution_orders(m1, m2, order_cap);
    const auto K1 = K_from_psi(psi_from_moments(m1));
    const auto K2 = K_from_psi(psi_from_moments(m2));
    return moments_from_psi(psi_from_K(series_compose(K1, K2)));
}

/// Moments of the multiplicative boolean convolution, from F_nu = F_mu1 F_mu2.
template <typename Scalar>
MomentSequence<Scalar> boolean_convolve(const MomentSequence<Scalar>& m1, const MomentSequence<Scalar>& m2,
                                        int order_cap = kDefaultConvolutionOrderCap)
{
    detail::check_convolution_orders(m1, m2, order_cap);
    const auto F1 = F_from_psi(psi_from_moments(m1));
    const auto F2 = F_from_psi(psi_from_moments(m2));
    return moments_from_psi(psi_from_F(F1 * F2));
}

} // namespace ubm
