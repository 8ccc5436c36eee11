#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fdcalc/identities.hpp"

namespace fdcalc {

// Conjugate Hoelder exponents, 1/gamma + 1/delta = 1 held exactly.
struct HolderPair {
    Rational gamma;
    Rational delta;
    HolderPair(const Rational& g, const Rational& d);
};

// Float certificates tolerate this much negative slack, relative to
// max(1, |rhs|); exact certificates tolerate none.
inline constexpr double kSlackFloor = 1e-9;

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Outcome of one inequality check: both sides, the slack rhs - lhs, and
// enough witness data (arg-max points, partial sums) to audit the verdict.
// exact means lhs/rhs/slack are exact rationals, so pass is a proof.
struct BoundCertificate {
    std::string inequality;
    KeyValues params;
    Scalar lhs = Rational(0);
    Scalar rhs = Rational(0);
    Scalar slack = Rational(0);
    bool exact = false;
    KeyValues witness;
    bool pass = false;
};

std::string certificate_json(const BoundCertificate& c);

namespace detail {

inline BoundCertificate make_exact_certificate(std::string name, const Rational& lhs,
                                               const Rational& rhs, KeyValues params,
                                               KeyValues witness) {
    BoundCertificate c;
    c.inequality = std::move(name);
    c.params = std::move(params);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = Rational(rhs - lhs);
    c.exact = true;
    c.witness = std::move(witness);
    c.pass = rhs >= lhs;
    return c;
}

inline BoundCertificate make_float_certificate(std::string name, double lhs, double rhs,
                                               KeyValues params, KeyValues witness) {
    BoundCertificate c;
    c.inequality = std::move(name);
    c.params = std::move(params);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    c.exact = false;
    c.witness = std::move(witness);
    c.pass = rhs - lhs >= -kSlackFloor * std::max(1.0, std::fabs(rhs));
    return c;
}

// Shared frame for the window inequalities: p-th difference of f, the Caputo
// difference, and the index windows j in [a+m-p(+1), b] (indices into dpf)
// and s-index in [0, b-a-m+p] (indices into cap).
template <class S>
struct IneqFrame {
    GridFn<S> dpf;
    GridFn<S> cap;
    long lo;
    long hi;
    long cap_hi;
};

template <class S>
IneqFrame<S> make_frame(const GridFn<S>& f, const FracOrder& ord, long p, const Rational& b,
                        bool strict_window) {
    if (p < 0) throw DomainError("shift p must be nonnegative, got " + std::to_string(p));
    if (Rational(p) >= ord.mu)
        throw OrderError("shift p = " + std::to_string(p) +
                         " must be smaller than the order mu = " + rational_str(ord.mu));
    if (!is_integer(f.base()) || f.base() < 0)
        throw DomainError("inequality window needs a nonnegative integer base, got " +
                          rational_str(f.base()));
    const Rational d = b - f.base();
    if (!is_integer(d))
        throw DomainError("right endpoint " + rational_str(b) +
                          " is not on the integer lattice of base " + rational_str(f.base()));
    const long ba = integer_value(d);
    const long lo = ord.m - p + (strict_window ? 1 : 0);
    if (ba < lo)
        throw EmptyDomain("window {a+" + std::to_string(lo) + ", ..., b} is empty for b = " +
                          rational_str(b));
    if (ba + p > f.size() - 1)
        throw TooShort("grid has " + std::to_string(f.size()) + " points; window up to b = " +
                       rational_str(b) + " with shift p = " + std::to_string(p) +
                       " needs at least " + std::to_string(ba + p + 1));
    return IneqFrame<S>{p == 0 ? f : forward_difference(f, p), caputo_difference(f, ord), lo,
                        ba, ba - ord.m + p};
}

// Theorem hypothesis: initial differences k = klo..khi vanish at the base.
template <class S>
void require_vanishing(const GridFn<S>& f, long klo, long khi) {
    if (klo > khi) return;
    const InitialDiffs<S> d = initial_diffs(f, khi + 1);
    const S zero = scalar_from<S>(Rational(0));
    for (long k = klo; k <= khi; ++k)
        if (!(d.diffs[static_cast<std::size_t>(k)] == zero))
            throw HypothesisViolated("initial difference k = " + std::to_string(k) +
                                     " must vanish at the base, got " +
                                     scalar_str(d.diffs[static_cast<std::size_t>(k)]));
}

template <class S>
std::pair<S, long> max_abs_caputo(const GridFn<S>& cap, long cap_hi) {
    S worst = scalar_abs<S>(cap[0]);
    long arg = 0;
    for (long s = 1; s <= cap_hi; ++s) {
        S v = scalar_abs<S>(cap[s]);
        if (worst < v) {
            worst = v;
            arg = s;
        }
    }
    return {worst, arg};
}

inline double pow_abs(double v, const Rational& e) { return std::pow(std::fabs(v), to_double(e)); }

// |v|^e for integer e >= 1.
inline Rational pow_abs_int(const Rational& v, long e) { return pow_int(abs(v), e); }

}  // namespace detail

// Bound on the Taylor remainder with shift p: for t in {a+m-p, ...},
//   |(p-th diff of f)(t) - head(t)| <=
//       (t-a-nu)^(mu-p)/Gamma(mu-p+1) * max_s |caputo(s)|,
// the max over the s-window {a+nu, ..., t-mu+p}. Exact in the exact backend.
template <class S>
BoundCertificate remainder_bound_p(const GridFn<S>& f, const FracOrder& ord, long p,
                                   const Rational& t) {
    const long ta = detail::taylor_point_index(f, ord, p, t);
    const InitialDiffs<S> d = initial_diffs(f, ord.m);
    const GridFn<S> cap = caputo_difference(f, ord);
    const GridFn<S> dpf = p == 0 ? f : forward_difference(f, p);
    const long cap_hi = ta - ord.m + p;
    const auto [worst, arg] = detail::max_abs_caputo(cap, cap_hi);
    const S lhs = scalar_abs<S>(dpf[ta] - detail::taylor_head(d, ord.m, p, ta));
    const S coeff = binom_gamma<S>(t - f.base() - ord.nu, ord.mu - p);
    const S rhs = coeff * worst;
    KeyValues params{{"backend", backend_name(backend_v<S>)},
                     {"mu", rational_str(ord.mu)},
                     {"p", std::to_string(p)},
                     {"a", rational_str(f.base())},
                     {"t", rational_str(t)}};
    KeyValues witness{{"argmax_s", rational_str(cap.point(arg))},
                      {"max_abs_caputo", scalar_str(worst)}};
    const std::string name = p == 0 ? "remainder_bound" : "remainder_bound_p";
    if constexpr (is_exact_backend_v<S>)
        return detail::make_exact_certificate(name, lhs, rhs, std::move(params),
                                              std::move(witness));
    else
        return detail::make_float_certificate(name, lhs, rhs, std::move(params),
                                              std::move(witness));
}

template <class S>
BoundCertificate remainder_bound(const GridFn<S>& f, const FracOrder& ord, const Rational& t) {
    return remainder_bound_p(f, ord, 0, t);
}

// Ostrowski-type bound: the average of the p-th difference over
// {a+m-p+1, ..., b} deviates from its base value by at most
//   [(b-a-nu+1)^(mu-p+1)/Gamma(mu-p+2) - 1] * max|caputo| / (b-a-m+p),
// provided the initial differences k = p+1..m-1 vanish.
template <class S>
BoundCertificate ostrowski(const GridFn<S>& f, const FracOrder& ord, long p, const Rational& b) {
    const auto frame = detail::make_frame(f, ord, p, b, true);
    detail::require_vanishing(f, p + 1, ord.m - 1);
    const long width = frame.hi - frame.lo + 1;
    S sum = scalar_from<S>(Rational(0));
    for (long j = frame.lo; j <= frame.hi; ++j) sum = sum + frame.dpf[j];
    const S avg = sum * scalar_from<S>(Rational(1) / width);
    const S lhs = scalar_abs<S>(avg - frame.dpf[0]);
    const auto [worst, arg] = detail::max_abs_caputo(frame.cap, frame.cap_hi);
    const S bracket = binom_gamma<S>(b - f.base() - ord.nu + 1, ord.mu - p + 1) -
                      scalar_from<S>(Rational(1));
    const S rhs = bracket * worst * scalar_from<S>(Rational(1) / width);
    KeyValues params{{"backend", backend_name(backend_v<S>)},
                     {"mu", rational_str(ord.mu)},
                     {"p", std::to_string(p)},
                     {"a", rational_str(f.base())},
                     {"b", rational_str(b)}};
    KeyValues witness{{"average", scalar_str(avg)},
                      {"base_value", scalar_str(frame.dpf[0])},
                      {"argmax_s", rational_str(frame.cap.point(arg))},
                      {"max_abs_caputo", scalar_str(worst)}};
    if constexpr (is_exact_backend_v<S>)
        return detail::make_exact_certificate("ostrowski", lhs, rhs, std::move(params),
                                              std::move(witness));
    else
        return detail::make_float_certificate("ostrowski", lhs, rhs, std::move(params),
                                              std::move(witness));
}

// Poincare-type bound in the delta-power form: with conjugate (gamma, delta)
// and vanishing initial differences k = p..m-1,
//   sum_j |(p-th diff of f)(j)|^delta <=
//     [sum_j (sum_n c_n^gamma)^(delta/gamma)] * sum_s |caputo(s)|^delta,
// windows j in {a+m-p, ..., b}, s-index 0..j-a-m+p (kernel prefix) resp.
// 0..b-a-m+p, c_n the kernel coefficients of order mu-p. The gamma-function
// prefactors cancel exactly at (2, 2), so that case is certified in exact
// rational arithmetic; other exponent pairs need real powers and are
// certified in float regardless of backend.
template <class S>
BoundCertificate poincare(const GridFn<S>& f, const FracOrder& ord, long p,
                          const HolderPair& hp, const Rational& b) {
    const auto frame = detail::make_frame(f, ord, p, b, false);
    detail::require_vanishing(f, p, ord.m - 1);
    KeyValues params{{"backend", backend_name(backend_v<S>)},
                     {"mu", rational_str(ord.mu)},
                     {"p", std::to_string(p)},
                     {"gamma", rational_str(hp.gamma)},
                     {"delta", rational_str(hp.delta)},
                     {"a", rational_str(f.base())},
                     {"b", rational_str(b)}};
    if constexpr (is_exact_backend_v<S>) {
        if (hp.gamma == 2 && hp.delta == 2) {
            const std::vector<Rational> c = kernel_coeffs<Rational>(ord.mu - p, frame.cap_hi + 1);
            std::vector<Rational> prefix_sq(c.size());
            Rational acc = 0;
            for (std::size_t n = 0; n < c.size(); ++n) {
                acc += c[n] * c[n];
                prefix_sq[n] = acc;
            }
            Rational lhs = 0, kernel_sum = 0, cap_sum = 0;
            for (long j = frame.lo; j <= frame.hi; ++j) {
                lhs += frame.dpf[j] * frame.dpf[j];
                kernel_sum += prefix_sq[static_cast<std::size_t>(j - ord.m + p)];
            }
            for (long s = 0; s <= frame.cap_hi; ++s) cap_sum += frame.cap[s] * frame.cap[s];
            KeyValues witness{{"kernel_sq_sum", rational_str(kernel_sum)},
                              {"caputo_sq_sum", rational_str(cap_sum)}};
            return detail::make_exact_certificate("poincare", lhs, kernel_sum * cap_sum,
                                                  std::move(params), std::move(witness));
        }
    }
    const std::vector<double> c = kernel_coeffs<double>(ord.mu - p, frame.cap_hi + 1);
    std::vector<double> prefix(c.size());
    double acc = 0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        acc += detail::pow_abs(c[n], hp.gamma);
        prefix[n] = acc;
    }
    const Rational ratio = hp.delta / hp.gamma;
    double lhs = 0, kernel_sum = 0, cap_sum = 0;
    for (long j = frame.lo; j <= frame.hi; ++j) {
        lhs += detail::pow_abs(scalar_to_double<S>(frame.dpf[j]), hp.delta);
        kernel_sum += detail::pow_abs(prefix[static_cast<std::size_t>(j - ord.m + p)], ratio);
    }
    for (long s = 0; s <= frame.cap_hi; ++s)
        cap_sum += detail::pow_abs(scalar_to_double<S>(frame.cap[s]), hp.delta);
    KeyValues witness{{"kernel_pow_sum", double_str(kernel_sum)},
                      {"caputo_pow_sum", double_str(cap_sum)}};
    if (is_exact_backend_v<S>)
        witness.emplace_back("note", "real powers computed in float for non-(2,2) exponents");
    return detail::make_float_certificate("poincare", lhs, kernel_sum * cap_sum,
                                          std::move(params), std::move(witness));
}

// Sobolev-type bound: with conjugate (gamma, delta), r >= 1, and vanishing
// initial differences k = p..m-1,
//   (sum_j |(p-th diff of f)(j)|^r)^(1/r) <=
//     [sum_j (sum_n c_n^gamma)^(r/gamma)]^(1/r) * (sum_s |caputo(s)|^delta)^(1/delta).
// The final roots force a float certificate; when every exponent involved is
// an integer the inner sums are still accumulated exactly in the exact
// backend (witness records which).
template <class S>
BoundCertificate sobolev(const GridFn<S>& f, const FracOrder& ord, long p, const HolderPair& hp,
                         const Rational& r, const Rational& b) {
    if (r < 1) throw RangeError("exponent r must be at least 1, got " + rational_str(r));
    const auto frame = detail::make_frame(f, ord, p, b, false);
    detail::require_vanishing(f, p, ord.m - 1);
    KeyValues params{{"backend", backend_name(backend_v<S>)},
                     {"mu", rational_str(ord.mu)},
                     {"p", std::to_string(p)},
                     {"gamma", rational_str(hp.gamma)},
                     {"delta", rational_str(hp.delta)},
                     {"r", rational_str(r)},
                     {"b", rational_str(b)}};
    const Rational ratio = r / hp.gamma;
    double lhs_sum = 0, kernel_sum = 0, cap_sum = 0;
    bool exact_inner = false;
    if constexpr (is_exact_backend_v<S>) {
        exact_inner =
            is_integer(r) && is_integer(hp.gamma) && is_integer(hp.delta) && is_integer(ratio);
    }
    if (exact_inner) {
        if constexpr (is_exact_backend_v<S>) {
            const std::vector<Rational> c =
                kernel_coeffs<Rational>(ord.mu - p, frame.cap_hi + 1);
            std::vector<Rational> prefix(c.size());
            Rational acc = 0;
            for (std::size_t n = 0; n < c.size(); ++n) {
                acc += detail::pow_abs_int(c[n], integer_value(hp.gamma));
                prefix[n] = acc;
            }
            Rational ls = 0, ks = 0, cs = 0;
            for (long j = frame.lo; j <= frame.hi; ++j) {
                ls += detail::pow_abs_int(frame.dpf[j], integer_value(r));
                ks += detail::pow_abs_int(prefix[static_cast<std::size_t>(j - ord.m + p)],
                                          integer_value(ratio));
            }
            for (long s = 0; s <= frame.cap_hi; ++s)
                cs += detail::pow_abs_int(frame.cap[s], integer_value(hp.delta));
            lhs_sum = to_double(ls);
            kernel_sum = to_double(ks);
            cap_sum = to_double(cs);
        }
    }
    if (!exact_inner) {
        const std::vector<double> c = kernel_coeffs<double>(ord.mu - p, frame.cap_hi + 1);
        std::vector<double> prefix(c.size());
        double acc = 0;
        for (std::size_t n = 0; n < c.size(); ++n) {
            acc += detail::pow_abs(c[n], hp.gamma);
            prefix[n] = acc;
        }
        double ls = 0, ks = 0, cs = 0;
        for (long j = frame.lo; j <= frame.hi; ++j) {
            ls += detail::pow_abs(scalar_to_double<S>(frame.dpf[j]), r);
            ks += detail::pow_abs(prefix[static_cast<std::size_t>(j - ord.m + p)], ratio);
        }
        for (long s = 0; s <= frame.cap_hi; ++s)
            cs += detail::pow_abs(scalar_to_double<S>(frame.cap[s]), hp.delta);
        lhs_sum = ls;
        kernel_sum = ks;
        cap_sum = cs;
    }
    const double rd = to_double(r);
    const double lhs = std::pow(lhs_sum, 1.0 / rd);
    const double rhs =
        std::pow(kernel_sum, 1.0 / rd) * std::pow(cap_sum, 1.0 / to_double(hp.delta));
    KeyValues witness{{"inner_sums", exact_inner ? "exact" : "float"},
                      {"lhs_pow_sum", double_str(lhs_sum)},
                      {"kernel_pow_sum", double_str(kernel_sum)},
                      {"caputo_pow_sum", double_str(cap_sum)}};
    return detail::make_float_certificate("sobolev", lhs, rhs, std::move(params),
                                          std::move(witness));
}

// Weighted multi-order form: orders mu_1 < ... < mu_k, each with a positive
// weight function on its Caputo window.
template <class S>
struct AvgSobolevSpec {
    std::vector<FracOrder> orders;
    std::vector<GridFn<S>> weights;
    Rational r = 2;
};

// Averaged Sobolev-type bound over k orders: with f's initial differences
// 0..m_k-1 vanishing and positive weights C_l,
//   (sum_{j=a+m_k..b} |f(j)|^r)^(1/r) <=
//     sqrt( delta* ** rho* ** (1/k) sum_l B_l ),
// where B_l = sum_s C_l(s) caputo_l(s)^2, rho* = max_{l,s} 1/C_l(s), and
// delta* = max_l [sum_j (kernel prefix of order mu_l)^(r/2)]^(2/r). The
// outer square root makes the certificate float; for r = 2 in the exact
// backend the squared comparison is still decided exactly.
template <class S>
BoundCertificate avg_sobolev(const GridFn<S>& f, const AvgSobolevSpec<S>& spec,
                             const Rational& b) {
    const long k = static_cast<long>(spec.orders.size());
    if (k == 0) throw ConfigError("averaged bound needs at least one order");
    if (static_cast<long>(spec.weights.size()) != k)
        throw ConfigError("got " + std::to_string(spec.weights.size()) + " weight grids for " +
                          std::to_string(k) + " orders");
    for (long l = 1; l < k; ++l)
        if (!(spec.orders[static_cast<std::size_t>(l - 1)].mu <
              spec.orders[static_cast<std::size_t>(l)].mu))
            throw ConfigError("orders must be strictly increasing");
    if (spec.r < 1)
        throw RangeError("exponent r must be at least 1, got " + rational_str(spec.r));
    if (!is_integer(f.base()) || f.base() < 0)
        throw DomainError("inequality window needs a nonnegative integer base, got " +
                          rational_str(f.base()));
    const Rational d = b - f.base();
    const long m_top = spec.orders.back().m;
    if (!is_integer(d) || d < m_top)
        throw DomainError("window {a+m_k, ..., b} is empty for b = " + rational_str(b));
    const long ba = integer_value(d);
    if (ba > f.size() - 1)
        throw TooShort("grid has " + std::to_string(f.size()) + " points; window up to b = " +
                       rational_str(b) + " needs at least " + std::to_string(ba + 1));
    detail::require_vanishing(f, 0, m_top - 1);

    const bool exact_sq = is_exact_backend_v<S> && spec.r == 2;
    S rho = scalar_from<S>(Rational(0));
    Rational rho_arg_s = 0;
    long rho_arg_l = 0;
    S b_sum = scalar_from<S>(Rational(0));
    double delta_star = 0;
    S delta_star_exact = scalar_from<S>(Rational(0));
    long delta_arg = 0;
    KeyValues witness;
    for (long l = 0; l < k; ++l) {
        const FracOrder& ord = spec.orders[static_cast<std::size_t>(l)];
        const GridFn<S>& w = spec.weights[static_cast<std::size_t>(l)];
        const long s_hi = ba - ord.m;
        if (w.base() != f.base() + ord.nu)
            throw ConfigError("weight grid " + std::to_string(l) + " starts at " +
                              rational_str(w.base()) + ", expected " +
                              rational_str(f.base() + ord.nu));
        if (w.size() <= s_hi)
            throw ConfigError("weight grid " + std::to_string(l) + " has " +
                              std::to_string(w.size()) + " points, window needs " +
                              std::to_string(s_hi + 1));
        const S zero = scalar_from<S>(Rational(0));
        for (long s = 0; s <= s_hi; ++s) {
            if (!(zero < w[s]))
                throw WeightError("weight " + std::to_string(l) + " is nonpositive at s = " +
                                  rational_str(w.point(s)));
            S recip = scalar_from<S>(Rational(1)) / w[s];
            if (rho < recip) {
                rho = recip;
                rho_arg_s = w.point(s);
                rho_arg_l = l;
            }
        }
        const GridFn<S> cap = caputo_difference(f, ord);
        S bl = zero;
        for (long s = 0; s <= s_hi; ++s) bl = bl + w[s] * cap[s] * cap[s];
        b_sum = b_sum + bl;
        witness.emplace_back("B_" + std::to_string(l), scalar_str(bl));

        const std::vector<S> c = kernel_coeffs<S>(ord.mu, s_hi + 1);
        std::vector<S> prefix_sq(c.size());
        S acc = zero;
        for (std::size_t n = 0; n < c.size(); ++n) {
            acc = acc + c[n] * c[n];
            prefix_sq[n] = acc;
        }
        if (exact_sq || (!is_exact_backend_v<S> && spec.r == 2)) {
            S dl = zero;
            for (long j = ord.m; j <= ba; ++j)
                dl = dl + prefix_sq[static_cast<std::size_t>(j - ord.m)];
            if (l == 0 || delta_star_exact < dl) {
                delta_star_exact = dl;
                delta_arg = l;
            }
            witness.emplace_back("delta_" + std::to_string(l), scalar_str(dl));
        } else {
            const Rational half_r = spec.r / 2;
            double dl = 0;
            for (long j = ord.m; j <= ba; ++j)
                dl += detail::pow_abs(scalar_to_double<S>(prefix_sq[static_cast<std::size_t>(
                                          j - ord.m)]),
                                      half_r);
            dl = std::pow(dl, to_double(Rational(2) / spec.r));
            if (l == 0 || delta_star < dl) {
                delta_star = dl;
                delta_arg = l;
            }
            witness.emplace_back("delta_" + std::to_string(l), double_str(dl));
        }
    }
    witness.emplace_back("argmax_weight", rational_str(rho_arg_s) + " (order index " +
                                              std::to_string(rho_arg_l) + ")");
    witness.emplace_back("argmax_delta", std::to_string(delta_arg));

    std::string orders_text;
    for (long l = 0; l < k; ++l) {
        if (l) orders_text += ',';
        orders_text += rational_str(spec.orders[static_cast<std::size_t>(l)].mu);
    }
    KeyValues params{{"backend", backend_name(backend_v<S>)},
                     {"orders", orders_text},
                     {"r", rational_str(spec.r)},
                     {"a", rational_str(f.base())},
                     {"b", rational_str(b)},
                     {"k", std::to_string(k)}};

    if (spec.r == 2) {
        // Squared comparison: lhs^2 and rhs^2 live in S even though the
        // reported sides need square roots.
        S lhs_sq = scalar_from<S>(Rational(0));
        for (long j = m_top; j <= ba; ++j) lhs_sq = lhs_sq + f[j] * f[j];
        const S rhs_sq =
            delta_star_exact * rho * b_sum * scalar_from<S>(Rational(1) / Rational(k));
        const double lhs = std::sqrt(scalar_to_double<S>(lhs_sq));
        const double rhs = std::sqrt(scalar_to_double<S>(rhs_sq));
        witness.emplace_back("square_compare", exact_sq ? "exact" : "float");
        BoundCertificate c = detail::make_float_certificate("avg_sobolev", lhs, rhs,
                                                            std::move(params),
                                                            std::move(witness));
        if (exact_sq) c.pass = !(rhs_sq < lhs_sq);
        return c;
    }
    double lhs_sum = 0;
    for (long j = m_top; j <= ba; ++j)
        lhs_sum += detail::pow_abs(scalar_to_double<S>(f[j]), spec.r);
    const double lhs = std::pow(lhs_sum, 1.0 / to_double(spec.r));
    const double rhs = std::sqrt(delta_star * scalar_to_double<S>(rho) *
                                 scalar_to_double<S>(b_sum) / static_cast<double>(k));
    return detail::make_float_certificate("avg_sobolev", lhs, rhs, std::move(params),
                                          std::move(witness));
}

}  // namespace fdcalc
