#pragma once

#include <span>

#include "fdcalc/frac_order.hpp"
#include "fdcalc/gamma_kernel.hpp"
#include "fdcalc/grid.hpp"

namespace fdcalc {

// Fractional sum of order nu > 0 with caller-supplied kernel coefficients
// (coeffs[n] standing in for binom_rising(nu, n); at least f.size() of them).
// Exists so tests can feed a deliberately wrong kernel through the very same
// accumulation path the real operator uses.
template <class S>
GridFn<S> fractional_sum(const GridFn<S>& f, const Rational& order,
                         std::span<const S> coeffs) {
    if (order <= 0)
        throw DomainError("fractional sum order must be positive, got " + rational_str(order));
    const long n = f.size();
    if (static_cast<long>(coeffs.size()) < n)
        throw DomainError("kernel has " + std::to_string(coeffs.size()) +
                          " coefficients, grid needs " + std::to_string(n));
    std::vector<S> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long N = 0; N < n; ++N) {
        S acc = scalar_from<S>(Rational(0));
        for (long j = 0; j <= N; ++j) acc = acc + coeffs[static_cast<std::size_t>(N - j)] * f[j];
        out.push_back(acc);
    }
    return GridFn<S>(f.base() + order, std::move(out));
}

// Fractional sum of order nu > 0: a discrete convolution with the kernel
// c_n = binom_rising(nu, n), mapping a function on {a, a+1, ...} to one on
// {a+nu, a+nu+1, ...}. output[N] = sum_{j=0..N} c_{N-j} f[j]; the float
// backend accumulates in ascending j so results are bit-reproducible.
template <class S>
GridFn<S> fractional_sum(const GridFn<S>& f, const Rational& order) {
    if (order <= 0)
        throw DomainError("fractional sum order must be positive, got " + rational_str(order));
    const std::vector<S> c = kernel_coeffs<S>(order, f.size());
    return fractional_sum(f, order, std::span<const S>(c));
}

// m-fold forward difference, one first-difference pass per order. Drops m
// points off the right end; the base is unchanged.
template <class S>
GridFn<S> forward_difference(const GridFn<S>& f, long order_m) {
    if (order_m < 1)
        throw DomainError("difference order must be at least 1, got " + std::to_string(order_m));
    if (f.size() <= order_m)
        throw TooShort("grid has " + std::to_string(f.size()) +
                       " points; difference of order " + std::to_string(order_m) +
                       " needs at least " + std::to_string(order_m + 1));
    std::vector<S> v(f.values());
    long len = f.size();
    for (long pass = 0; pass < order_m; ++pass) {
        --len;
        for (long i = 0; i < len; ++i)
            v[static_cast<std::size_t>(i)] =
                v[static_cast<std::size_t>(i + 1)] - v[static_cast<std::size_t>(i)];
    }
    v.resize(static_cast<std::size_t>(len));
    return GridFn<S>(f.base(), std::move(v));
}

namespace detail {

template <class S>
void require_length_for_order(const GridFn<S>& f, const FracOrder& ord) {
    if (f.size() <= ord.m)
        throw TooShort("grid has " + std::to_string(f.size()) + " points; order " +
                       rational_str(ord.mu) + " (m = " + std::to_string(ord.m) +
                       ") needs at least " + std::to_string(ord.m + 1));
}

}  // namespace detail

// Caputo-type difference of order mu: fractional sum of order nu applied to
// the m-th difference. Domain {a+nu, ..., a+nu+n-m-1}.
template <class S>
GridFn<S> caputo_difference(const GridFn<S>& f, const FracOrder& ord) {
    detail::require_length_for_order(f, ord);
    return fractional_sum(forward_difference(f, ord.m), ord.nu);
}

// Riemann-Liouville-type difference of order mu: m-th difference of the
// fractional sum of order nu. Same domain as the Caputo form.
template <class S>
GridFn<S> rl_difference(const GridFn<S>& f, const FracOrder& ord) {
    detail::require_length_for_order(f, ord);
    return forward_difference(fractional_sum(f, ord.nu), ord.m);
}

}  // namespace fdcalc
