#include "fdcalc/rational.hpp"

#include <cctype>
#include <limits>

namespace fdcalc {

namespace {

bool parse_big(std::string_view text, BigInt& out) {
    if (text.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (text[0] == '-' || text[0] == '+') {
        neg = text[0] == '-';
        i = 1;
    }
    if (i == text.size()) return false;
    BigInt value = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
        value = value * 10 + (text[i] - '0');
    }
    out = neg ? BigInt(-value) : value;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    BigInt num;
    if (slash == std::string_view::npos) {
        if (!parse_big(text, num))
            throw DomainError("not a rational: '" + std::string(text) + "'");
        return Rational(num);
    }
    BigInt den;
    if (!parse_big(text.substr(0, slash), num) || !parse_big(text.substr(slash + 1), den))
        throw DomainError("not a rational: '" + std::string(text) + "'");
    if (den == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

Rational parse_number(std::string_view text) {
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return parse_rational(text);
    if (text.find('/') != std::string_view::npos)
        throw DomainError("not a number: '" + std::string(text) + "'");
    const std::string_view frac = text.substr(dot + 1);
    BigInt scaled;
    std::string digits(text.substr(0, dot));
    digits.append(frac);
    if (frac.empty() || !parse_big(digits, scaled))
        throw DomainError("not a number: '" + std::string(text) + "'");
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(scaled, den);
}

std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

BigInt floor_big(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);  // truncates toward zero
    if (r < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

BigInt ceil_big(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (r > 0 && q * denominator(r) != numerator(r)) ++q;
    return q;
}

long to_long(const BigInt& n) {
    if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
        throw DomainError("integer out of lattice-index range: " + n.str());
    return static_cast<long>(n);
}

long integer_value(const Rational& r) {
    if (!is_integer(r)) throw DomainError("not an integer: " + rational_str(r));
    return to_long(numerator(r));
}

Rational pow_int(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) throw DomainError("0 raised to a negative power");
    Rational acc(1);
    Rational b = base;
    unsigned long e = exp < 0 ? static_cast<unsigned long>(-(exp + 1)) + 1ul
                              : static_cast<unsigned long>(exp);
    while (e != 0) {
        if (e & 1ul) acc *= b;
        b *= b;
        e >>= 1;
    }
    if (exp < 0) acc = Rational(1) / acc;
    return acc;
}

}  // namespace fdcalc
