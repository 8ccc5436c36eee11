#pragma once

#include <span>
#include <string>
#include <vector>

#include "fdcalc/operators.hpp"

namespace fdcalc {

// One evaluation point of an identity: both sides kept so reports can show
// where and how an identity failed, not just that it did.
template <class S>
struct ResidualPoint {
    Rational t;
    S lhs;
    S rhs;
    S residual() const { return lhs - rhs; }
};

template <class S>
struct ResidualSeries {
    std::vector<ResidualPoint<S>> points;

    void add(const Rational& t, S lhs, S rhs) {
        points.push_back({t, std::move(lhs), std::move(rhs)});
    }
    bool empty() const { return points.empty(); }

    // Exact-backend verdict: the identity holds iff every residual is zero.
    bool all_zero() const {
        for (const auto& p : points)
            if (p.lhs != p.rhs) return false;
        return true;
    }

    S max_abs_residual() const {
        S worst = scalar_from<S>(Rational(0));
        for (const auto& p : points) {
            S r = scalar_abs<S>(p.residual());
            if (worst < r) worst = r;
        }
        return worst;
    }

    long worst_index() const {
        if (points.empty()) return -1;
        long arg = 0;
        S worst = scalar_abs<S>(points[0].residual());
        for (long i = 1; i < static_cast<long>(points.size()); ++i) {
            S r = scalar_abs<S>(points[static_cast<std::size_t>(i)].residual());
            if (worst < r) {
                worst = r;
                arg = i;
            }
        }
        return arg;
    }
};

// Forward differences at the left endpoint, diffs[k] = (k-th difference)(a).
template <class S>
struct InitialDiffs {
    Rational a;
    std::vector<S> diffs;
};

template <class S>
InitialDiffs<S> initial_diffs(const GridFn<S>& f, long count) {
    if (count < 1)
        throw DomainError("initial difference count must be at least 1, got " +
                          std::to_string(count));
    if (f.size() < count)
        throw TooShort("grid has " + std::to_string(f.size()) + " points; " +
                       std::to_string(count) + " initial differences need at least " +
                       std::to_string(count));
    std::vector<S> v(f.values().begin(), f.values().begin() + count);
    InitialDiffs<S> out{f.base(), {}};
    out.diffs.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        out.diffs.push_back(v[0]);
        for (long i = 0; i + k + 1 < count; ++i)
            v[static_cast<std::size_t>(i)] =
                v[static_cast<std::size_t>(i + 1)] - v[static_cast<std::size_t>(i)];
    }
    return out;
}

namespace detail {

// Shared validation for the fractional Taylor formulas. Returns t - a.
template <class S>
long taylor_point_index(const GridFn<S>& f, const FracOrder& ord, long p, const Rational& t) {
    if (p < 0) throw DomainError("shift p must be nonnegative, got " + std::to_string(p));
    if (Rational(p) >= ord.mu)
        throw OrderError("shift p = " + std::to_string(p) +
                         " must be smaller than the order mu = " + rational_str(ord.mu));
    if (!is_integer(f.base()) || f.base() < 0)
        throw DomainError("Taylor formulas need a nonnegative integer base, got " +
                          rational_str(f.base()));
    const Rational d = t - f.base();
    if (!is_integer(d) || d < ord.m - p)
        throw DomainError("evaluation point " + rational_str(t) +
                          " does not lie in the Taylor domain {a+m-p, a+m-p+1, ...}");
    const long ta = integer_value(d);
    if (ta + p > f.size() - 1)
        throw TooShort("grid has " + std::to_string(f.size()) +
                       " points; evaluating at t = " + rational_str(t) + " with shift p = " +
                       std::to_string(p) + " needs at least " + std::to_string(ta + p + 1));
    return ta;
}

// sum_{k=p..m-1} (t-a)^(k-p)/(k-p)! * diffs[k], the polynomial part.
template <class S>
S taylor_head(const InitialDiffs<S>& d, long m, long p, long ta) {
    S acc = scalar_from<S>(Rational(0));
    for (long k = p; k < m; ++k)
        acc = acc + binom_gamma<S>(Rational(ta), Rational(k - p)) *
                        d.diffs[static_cast<std::size_t>(k)];
    return acc;
}

}  // namespace detail

// Right-hand side of the fractional Taylor formula with integer shift p,
// 0 <= p < mu: polynomial head in the initial differences plus the fractional
// sum of order mu - p of the Caputo difference, evaluated at t in
// {a+m-p, ...}. It reproduces (p-th difference of f)(t).
template <class S>
S taylor_extended_rhs(const GridFn<S>& f, const FracOrder& ord, long p, const Rational& t) {
    const long ta = detail::taylor_point_index(f, ord, p, t);
    const InitialDiffs<S> d = initial_diffs(f, ord.m);
    const GridFn<S> cap = caputo_difference(f, ord);
    const long count = ta - ord.m + p + 1;
    const std::vector<S> w = kernel_coeffs<S>(ord.mu - p, count);
    S tail = scalar_from<S>(Rational(0));
    for (long i = 0; i < count; ++i)
        tail = tail + w[static_cast<std::size_t>(count - 1 - i)] * cap[i];
    return detail::taylor_head(d, ord.m, p, ta) + tail;
}

// The p = 0 case: rhs reproducing f(t) itself.
template <class S>
S taylor_caputo_rhs(const GridFn<S>& f, const FracOrder& ord, const Rational& t) {
    return taylor_extended_rhs(f, ord, 0, t);
}

// Integer-order Taylor formula with the m-th-difference remainder sum; holds
// on any base (no integrality needed, the formula is shift-invariant).
template <class S>
S taylor_classic_rhs(const GridFn<S>& f, long m, const Rational& t) {
    if (m < 1)
        throw DomainError("classic Taylor order must be at least 1, got " + std::to_string(m));
    const Rational d = t - f.base();
    if (!is_integer(d) || d < m)
        throw DomainError("evaluation point " + rational_str(t) +
                          " does not lie in the Taylor domain {a+m, a+m+1, ...}");
    const long ta = integer_value(d);
    if (ta > f.size() - 1)
        throw TooShort("grid has " + std::to_string(f.size()) +
                       " points; evaluating at t = " + rational_str(t) + " needs at least " +
                       std::to_string(ta + 1));
    const InitialDiffs<S> diffs = initial_diffs(f, m);
    const GridFn<S> dmf = forward_difference(f, m);
    S acc = detail::taylor_head(diffs, m, 0, ta);
    for (long j = 0; j <= ta - m; ++j)
        acc = acc + binom_gamma<S>(Rational(ta - j - 1), Rational(m - 1)) * dmf[j];
    return acc;
}

// Residual series lhs - rhs of the shifted Taylor formula over every
// admissible t at once. The remainder for all t is one fractional sum of the
// Caputo difference (order mu - p), so the whole series costs what a single
// operator application costs; the accumulation order matches the pointwise
// evaluator exactly, so the two agree bit for bit in the float backend too.
// The kernel overload substitutes the supplied coefficients for the real
// remainder kernel.
template <class S>
ResidualSeries<S> taylor_extended_residual(const GridFn<S>& f, const FracOrder& ord, long p,
                                           std::span<const S> kernel) {
    detail::taylor_point_index(f, ord, p, f.base() + (ord.m - p));
    const InitialDiffs<S> d = initial_diffs(f, ord.m);
    const GridFn<S> cap = caputo_difference(f, ord);
    const GridFn<S> rem = fractional_sum(cap, ord.mu - p, kernel);
    const GridFn<S> dpf = p == 0 ? f : forward_difference(f, p);
    ResidualSeries<S> series;
    for (long i = 0; i < rem.size(); ++i) {
        const long ta = ord.m - p + i;
        const Rational t = f.base() + ta;
        series.add(t, dpf[ta], detail::taylor_head(d, ord.m, p, ta) + rem[i]);
    }
    return series;
}

template <class S>
ResidualSeries<S> taylor_extended_residual(const GridFn<S>& f, const FracOrder& ord, long p) {
    const std::vector<S> kernel = kernel_coeffs<S>(ord.mu - p, f.size() - ord.m);
    return taylor_extended_residual(f, ord, p, std::span<const S>(kernel));
}

template <class S>
ResidualSeries<S> taylor_caputo_residual(const GridFn<S>& f, const FracOrder& ord) {
    return taylor_extended_residual(f, ord, 0);
}

template <class S>
ResidualSeries<S> taylor_classic_residual(const GridFn<S>& f, long m) {
    if (f.size() <= m)
        throw TooShort("grid has " + std::to_string(f.size()) + " points; order " +
                       std::to_string(m) + " needs at least " + std::to_string(m + 1));
    ResidualSeries<S> series;
    for (long ta = m; ta < f.size(); ++ta) {
        const Rational t = f.base() + ta;
        series.add(t, f[ta], taylor_classic_rhs(f, m, t));
    }
    return series;
}

// Composition law: applying fractional sums of orders mu then nu (either way
// round) equals the single sum of order mu + nu. Three-way comparison folded
// into one series: both iterated results against the single sum.
template <class S>
ResidualSeries<S> composition_residual(const GridFn<S>& f, const Rational& mu,
                                       const Rational& nu) {
    const GridFn<S> ab = fractional_sum(fractional_sum(f, mu), nu);
    const GridFn<S> ba = fractional_sum(fractional_sum(f, nu), mu);
    const GridFn<S> once = fractional_sum(f, mu + nu);
    ResidualSeries<S> series;
    for (long i = 0; i < once.size(); ++i) {
        const Rational t = once.point(i);
        series.add(t, ab[i], once[i]);
        series.add(t, ba[i], once[i]);
    }
    return series;
}

// Moving a p-th difference from inside a fractional sum to outside it costs a
// boundary correction in the first p initial differences:
//   (sum of order nu of the p-th difference)(t)
//     = (p-th difference of the sum of order nu)(t)
//       - sum_{k=0..p-1} (t-a)^(nu-p+k)/Gamma(nu-p+k+1) * diffs[k].
template <class S>
ResidualSeries<S> exchange_residual(const GridFn<S>& f, const Rational& nu, long p) {
    if (nu <= 0)
        throw DomainError("fractional sum order must be positive, got " + rational_str(nu));
    if (p < 1)
        throw DomainError("difference order must be at least 1, got " + std::to_string(p));
    const GridFn<S> lhs = fractional_sum(forward_difference(f, p), nu);
    const GridFn<S> rhs = forward_difference(fractional_sum(f, nu), p);
    const InitialDiffs<S> d = initial_diffs(f, p);
    ResidualSeries<S> series;
    for (long i = 0; i < lhs.size(); ++i) {
        const Rational t = lhs.point(i);
        S corr = scalar_from<S>(Rational(0));
        for (long k = 0; k < p; ++k)
            corr = corr + binom_gamma<S>(t - f.base(), nu - p + k) *
                              d.diffs[static_cast<std::size_t>(k)];
        series.add(t, lhs[i], rhs[i] - corr);
    }
    return series;
}

// Caputo and Riemann-Liouville differences of the same order differ by the
// m-term initial-data polynomial; the series checks
//   rl(t) = caputo(t) + sum_{k=0..m-1} (t-a)^(nu-m+k)/Gamma(nu-m+k+1) * diffs[k].
template <class S>
ResidualSeries<S> caputo_rl_residual(const GridFn<S>& f, const FracOrder& ord) {
    const GridFn<S> rl = rl_difference(f, ord);
    const GridFn<S> cap = caputo_difference(f, ord);
    const InitialDiffs<S> d = initial_diffs(f, ord.m);
    ResidualSeries<S> series;
    for (long i = 0; i < rl.size(); ++i) {
        const Rational t = rl.point(i);
        S corr = scalar_from<S>(Rational(0));
        for (long k = 0; k < ord.m; ++k)
            corr = corr + binom_gamma<S>(t - f.base(), ord.nu - ord.m + k) *
                              d.diffs[static_cast<std::size_t>(k)];
        series.add(t, rl[i], cap[i] + corr);
    }
    return series;
}

// For nu > p the p-th difference of a fractional sum of order nu is again a
// fractional sum, of order nu - p, with no boundary term. The two grids are
// offset by p indices; points are matched by abscissa.
template <class S>
ResidualSeries<S> commute_diff_sum_residual(const GridFn<S>& f, const Rational& nu, long p) {
    if (p < 1)
        throw DomainError("difference order must be at least 1, got " + std::to_string(p));
    if (Rational(p) >= nu)
        throw OrderError("difference order p = " + std::to_string(p) +
                         " must be smaller than the sum order nu = " + rational_str(nu));
    const GridFn<S> lhs = forward_difference(fractional_sum(f, nu), p);
    const GridFn<S> rhs = fractional_sum(f, nu - p);
    ResidualSeries<S> series;
    for (long i = 0; i < lhs.size(); ++i)
        series.add(lhs.point(i), lhs[i], rhs[i + p]);
    return series;
}

// Closed form of the fractional-sum kernel's own sum: for t in {a+m, ...},
//   sum_{s=a..t-mu} (t-s-1)^(mu-1) / Gamma(mu) = (t-a-nu)^(mu) / mu.
// The gamma face carries the exact irrational value; the Rational face throws
// ExactnessError when the gamma factors do not cancel.
GammaValue closed_kernel_sum_gamma(const Rational& a, const FracOrder& ord, const Rational& t);

template <class S>
S closed_kernel_sum(const Rational& a, const FracOrder& ord, const Rational& t);

// Closed form of sum_{s=a..b} s^(nu) on the shifted lattice b in {a, a+1, ...}
// (needs a > nu > -1):
//   ((b+1)^(nu+1) - a^(nu+1)) / (nu+1).
GammaValue sum_falling_gamma(const Rational& a, const Rational& b, const Rational& nu);

template <class S>
S sum_falling(const Rational& a, const Rational& b, const Rational& nu);

namespace detail {

inline void check_kernel_sum_domain(const Rational& a, const FracOrder& ord, const Rational& t) {
    const Rational d = t - a;
    if (!is_integer(d) || d < ord.m)
        throw DomainError("evaluation point " + rational_str(t) +
                          " does not lie in {a+m, a+m+1, ...} for a = " + rational_str(a) +
                          ", m = " + std::to_string(ord.m));
}

inline void check_sum_falling_domain(const Rational& a, const Rational& b, const Rational& nu) {
    if (nu <= -1)
        throw DomainError("exponent must exceed -1, got " + rational_str(nu));
    if (a <= nu)
        throw DomainError("lower endpoint a = " + rational_str(a) +
                          " must exceed the exponent nu = " + rational_str(nu));
    const Rational d = b - a;
    if (!is_integer(d) || d < 0)
        throw DomainError("upper endpoint b = " + rational_str(b) +
                          " must lie in {a, a+1, ...} for a = " + rational_str(a));
}

}  // namespace detail

inline GammaValue closed_kernel_sum_gamma(const Rational& a, const FracOrder& ord,
                                          const Rational& t) {
    detail::check_kernel_sum_domain(a, ord, t);
    return falling_factorial_gamma(t - a - ord.nu, ord.mu) / ord.mu;
}

template <class S>
S closed_kernel_sum(const Rational& a, const FracOrder& ord, const Rational& t) {
    if constexpr (is_exact_backend_v<S>) {
        const GammaValue v = closed_kernel_sum_gamma(a, ord, t);
        if (!v.is_rational())
            throw ExactnessError("closed kernel sum is irrational (" + v.str() +
                                 "); use the gamma or float face");
        return v.as_rational();
    } else {
        detail::check_kernel_sum_domain(a, ord, t);
        return falling_factorial(to_double(t - a - ord.nu), to_double(ord.mu)) /
               to_double(ord.mu);
    }
}

inline GammaValue sum_falling_gamma(const Rational& a, const Rational& b, const Rational& nu) {
    detail::check_sum_falling_domain(a, b, nu);
    return (falling_factorial_gamma(b + 1, nu + 1) - falling_factorial_gamma(a, nu + 1)) /
           Rational(nu + 1);
}

template <class S>
S sum_falling(const Rational& a, const Rational& b, const Rational& nu) {
    if constexpr (is_exact_backend_v<S>) {
        const GammaValue v = sum_falling_gamma(a, b, nu);
        if (!v.is_rational())
            throw ExactnessError("falling-power sum is irrational (" + v.str() +
                                 "); use the gamma or float face");
        return v.as_rational();
    } else {
        detail::check_sum_falling_domain(a, b, nu);
        const double nud = to_double(nu);
        return (falling_factorial(to_double(b) + 1.0, nud + 1.0) -
                falling_factorial(to_double(a), nud + 1.0)) /
               (nud + 1.0);
    }
}

}  // namespace fdcalc
