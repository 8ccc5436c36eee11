#pragma once

#include <string>
#include <vector>

#include "fdcalc/scalar.hpp"

namespace fdcalc {

// log|Gamma(x)| plus the sign of Gamma(x); sign = 0 flags a pole. Float
// gamma ratios are always formed from differences of these, never from two
// raw gamma calls, so grid-scale arguments (~50+) cannot overflow.
struct SignedLogGamma {
    double log_abs = 0.0;
    int sign = 1;
};

SignedLogGamma log_gamma_signed(double x);

// Exact value of the form coeff * Gamma(p) / Gamma(q) with p, q shifted into
// [1, 2) by the recurrence Gamma(g+1) = g*Gamma(g), shift factors folded into
// the rational coeff. Values sharing the same (p, q) shape form a
// one-dimensional rational space, so sums and equality tests of same-shape
// values are exact. This is what lets the closed-form identities be checked
// with zero rounding even though the values themselves (multiples of
// Gamma(1/2) etc.) are irrational.
class GammaValue {
public:
    GammaValue() = default;                    // zero
    explicit GammaValue(const Rational& r);    // the rational r itself

    // Gamma(num_arg)/Gamma(den_arg) with the usual pole conventions:
    // denominator pole alone -> 0; both poles -> the finite limit; numerator
    // pole alone -> PoleError.
    static GammaValue gamma_ratio(const Rational& num_arg, const Rational& den_arg);

    bool is_zero() const { return coeff_ == 0; }
    // True when the gamma factors cancel and the value is the plain rational coeff.
    bool is_rational() const { return num_shape_ == den_shape_; }
    Rational as_rational() const;  // ExactnessError unless is_rational()

    const Rational& coeff() const { return coeff_; }
    const Rational& num_shape() const { return num_shape_; }
    const Rational& den_shape() const { return den_shape_; }

    double to_double() const;
    std::string str() const;

    GammaValue& operator+=(const GammaValue& o);
    GammaValue& operator-=(const GammaValue& o);
    GammaValue& operator*=(const Rational& c);
    GammaValue& operator/=(const Rational& c);

    friend GammaValue operator+(GammaValue a, const GammaValue& b) { return a += b; }
    friend GammaValue operator-(GammaValue a, const GammaValue& b) { return a -= b; }
    friend GammaValue operator*(GammaValue a, const Rational& c) { return a *= c; }
    friend GammaValue operator*(const Rational& c, GammaValue a) { return a *= c; }
    friend GammaValue operator/(GammaValue a, const Rational& c) { return a /= c; }
    friend GammaValue operator-(GammaValue a) {
        a.coeff_ = -a.coeff_;
        return a;
    }
    friend bool operator==(const GammaValue& a, const GammaValue& b) {
        return a.coeff_ == b.coeff_ && a.num_shape_ == b.num_shape_ &&
               a.den_shape_ == b.den_shape_;
    }

private:
    Rational coeff_ = 0;
    Rational num_shape_ = 1;
    Rational den_shape_ = 1;
    void canonicalize();
};

// Falling factorial x^(alpha) = Gamma(x+1)/Gamma(x-alpha+1).
//
// Pole conventions (both overloads): a denominator pole alone gives 0, two
// poles give the finite limit of the ratio, a numerator pole alone is a
// PoleError. The exact overload additionally throws ExactnessError when the
// value exists but is not a rational number (non-integer alpha off the pole
// set); such values are reached through GammaValue / binom_rising instead.
double falling_factorial(double x, double alpha);
Rational falling_factorial(const Rational& x, const Rational& alpha);
GammaValue falling_factorial_gamma(const Rational& x, const Rational& alpha);

// Fractional-sum kernel coefficient c_n = Gamma(nu+n)/(Gamma(nu) n!),
// computed as the incremental product prod_{i=1..n} (nu+i-1)/i. Exact for
// rational nu; the float instantiation rounds each factor once.
template <class S>
S binom_rising(const Rational& nu, long n) {
    S acc = scalar_from<S>(Rational(1));
    for (long i = 1; i <= n; ++i) acc = acc * scalar_from<S>(Rational(nu + i - 1) / i);
    return acc;
}

// c_0 .. c_{count-1} in one pass.
template <class S>
std::vector<S> kernel_coeffs(const Rational& nu, long count) {
    std::vector<S> c;
    c.reserve(static_cast<std::size_t>(count));
    S acc = scalar_from<S>(Rational(1));
    for (long n = 0; n < count; ++n) {
        if (n > 0) acc = acc * scalar_from<S>(Rational(nu + n - 1) / n);
        c.push_back(acc);
    }
    return c;
}

// Generalized binomial Gamma(x+1)/(Gamma(alpha+1) Gamma(x-alpha+1)) for
// x - alpha a nonnegative integer: equals prod_{i=1..n} (alpha+i)/i with
// n = x - alpha. This is the shape of every Taylor head term
// (t-a)^(k)/k! and every initial-data correction coefficient
// (t-a)^(nu-m+k)/Gamma(nu+k-m+1); a pole of Gamma(alpha+1) shows up as a
// zero factor, which is exactly the reciprocal-gamma convention.
template <class S>
S binom_gamma(const Rational& x, const Rational& alpha) {
    const Rational diff = x - alpha;
    if (!is_integer(diff) || diff < 0)
        throw DomainError("binom_gamma requires x - alpha to be a nonnegative integer, got " +
                          rational_str(diff));
    const long n = integer_value(diff);
    S acc = scalar_from<S>(Rational(1));
    for (long i = 1; i <= n; ++i) acc = acc * scalar_from<S>(Rational(alpha + i) / i);
    return acc;
}

// LHS - RHS of the telescoping identity
//   Gamma(x+1)/Gamma(x-k+1) = (Gamma(x+2)/Gamma(x-k+1) - Gamma(x+1)/Gamma(x-k)) / (k+1)
// on its domain x > k, x > -1, k > -1. Identically zero; the exact
// instantiation proves it term by term through GammaValue.
template <class S>
S gamma_telescope_residual(const S& x, const S& k);

template <>
Rational gamma_telescope_residual(const Rational& x, const Rational& k);
template <>
double gamma_telescope_residual(double const& x, double const& k);

}  // namespace fdcalc
