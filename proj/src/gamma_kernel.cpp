#include "fdcalc/gamma_kernel.hpp"

#include <cmath>
#include <limits>

#include "fdcalc/errors.hpp"

namespace fdcalc {

namespace {

// Exact test; callers form arguments in rational arithmetic and convert once,
// so on-lattice values are exact doubles.
bool nonpositive_integer(double v, long& n) {
    if (v > 0.0 || v != std::floor(v)) return false;
    n = std::lround(-v);
    return true;
}

Rational factorial_rat(long n) {
    BigInt f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

// Gamma(g) = coeff * Gamma(shape) with shape in [1, 2).
void fold_gamma(Rational g, Rational& coeff, Rational& shape) {
    coeff = 1;
    while (g >= 2) {
        g -= 1;
        coeff *= g;
    }
    while (g < 1) {
        coeff /= g;
        g += 1;
    }
    shape = g;
}

}  // namespace

SignedLogGamma log_gamma_signed(double x) {
    if (x > 0.0) return {std::lgamma(x), 1};
    if (x == std::floor(x)) return {std::numeric_limits<double>::infinity(), 0};
    // Gamma alternates sign between consecutive negative integers:
    // positive on (-2,-1), negative on (-1,0) and (-3,-2), ...
    const long k = static_cast<long>(std::floor(-x));
    return {std::lgamma(x), (k % 2 == 0) ? -1 : 1};
}

GammaValue::GammaValue(const Rational& r) { coeff_ = r; }

void GammaValue::canonicalize() {
    if (coeff_ == 0 || num_shape_ == den_shape_) {
        num_shape_ = 1;
        den_shape_ = 1;
    }
}

GammaValue GammaValue::gamma_ratio(const Rational& num_arg, const Rational& den_arg) {
    const bool num_pole = is_nonpositive_integer(num_arg);
    const bool den_pole = is_nonpositive_integer(den_arg);
    GammaValue v;
    if (den_pole) {
        if (!num_pole) return v;  // reciprocal gamma vanishes
        const long n1 = -integer_value(num_arg);
        const long n2 = -integer_value(den_arg);
        v.coeff_ = factorial_rat(n2) / factorial_rat(n1);
        if ((n1 - n2) % 2 != 0) v.coeff_ = -v.coeff_;
        return v;
    }
    if (num_pole)
        throw PoleError("gamma pole in numerator at " + rational_str(num_arg));
    Rational cn, cd;
    fold_gamma(num_arg, cn, v.num_shape_);
    fold_gamma(den_arg, cd, v.den_shape_);
    v.coeff_ = cn / cd;
    v.canonicalize();
    return v;
}

Rational GammaValue::as_rational() const {
    if (!is_rational())
        throw ExactnessError("gamma value is not rational: " + str());
    return coeff_;
}

double GammaValue::to_double() const {
    if (is_rational()) return fdcalc::to_double(coeff_);
    const double ln = std::lgamma(fdcalc::to_double(num_shape_));
    const double ld = std::lgamma(fdcalc::to_double(den_shape_));
    return fdcalc::to_double(coeff_) * std::exp(ln - ld);
}

std::string GammaValue::str() const {
    if (is_rational()) return rational_str(coeff_);
    return rational_str(coeff_) + " * Gamma(" + rational_str(num_shape_) + ")/Gamma(" +
           rational_str(den_shape_) + ")";
}

GammaValue& GammaValue::operator+=(const GammaValue& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (num_shape_ != o.num_shape_ || den_shape_ != o.den_shape_)
        throw ExactnessError("cannot combine gamma values of different shapes: " + str() +
                             " and " + o.str());
    coeff_ += o.coeff_;
    canonicalize();
    return *this;
}

GammaValue& GammaValue::operator-=(const GammaValue& o) { return *this += -GammaValue(o); }

GammaValue& GammaValue::operator*=(const Rational& c) {
    coeff_ *= c;
    canonicalize();
    return *this;
}

GammaValue& GammaValue::operator/=(const Rational& c) {
    if (c == 0) throw DomainError("division of gamma value by zero");
    coeff_ /= c;
    return *this;
}

GammaValue falling_factorial_gamma(const Rational& x, const Rational& alpha) {
    return GammaValue::gamma_ratio(x + 1, x - alpha + 1);
}

Rational falling_factorial(const Rational& x, const Rational& alpha) {
    const GammaValue v = falling_factorial_gamma(x, alpha);
    if (!v.is_rational())
        throw ExactnessError("falling factorial (" + rational_str(x) + ")^(" +
                             rational_str(alpha) + ") is irrational: " + v.str());
    return v.as_rational();
}

double falling_factorial(double x, double alpha) {
    const double num = x + 1.0;
    const double den = x - alpha + 1.0;
    long n1 = 0, n2 = 0;
    const bool num_pole = nonpositive_integer(num, n1);
    if (nonpositive_integer(den, n2)) {
        if (!num_pole) return 0.0;
        const double mag = std::exp(std::lgamma(static_cast<double>(n2) + 1.0) -
                                    std::lgamma(static_cast<double>(n1) + 1.0));
        return ((n1 - n2) % 2 == 0) ? mag : -mag;
    }
    if (num_pole)
        throw PoleError("gamma pole in numerator of falling factorial at x = " +
                        double_str(x));
    const SignedLogGamma a = log_gamma_signed(num);
    const SignedLogGamma b = log_gamma_signed(den);
    return a.sign * b.sign * std::exp(a.log_abs - b.log_abs);
}

namespace {

void check_telescope_domain(bool ok, const std::string& what) {
    if (!ok) throw DomainError("telescope identity needs x > k > -1, got " + what);
}

}  // namespace

template <>
Rational gamma_telescope_residual(const Rational& x, const Rational& k) {
    check_telescope_domain(x > k && k > -1, rational_str(x) + ", " + rational_str(k));
    const GammaValue lhs = falling_factorial_gamma(x, k);
    const GammaValue rhs =
        (falling_factorial_gamma(x + 1, k + 1) - falling_factorial_gamma(x, k + 1)) /
        Rational(k + 1);
    return (lhs - rhs).as_rational();
}

template <>
double gamma_telescope_residual(double const& x, double const& k) {
    check_telescope_domain(x > k && k > -1.0, double_str(x) + ", " + double_str(k));
    const double lhs = falling_factorial(x, k);
    const double rhs =
        (falling_factorial(x + 1.0, k + 1.0) - falling_factorial(x, k + 1.0)) / (k + 1.0);
    return lhs - rhs;
}

}  // namespace fdcalc
