#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <type_traits>
#include <variant>

#include "fdcalc/rational.hpp"

namespace fdcalc {

// The core is templated on the scalar type S: Rational for the exact backend,
// double for the float backend. Scalar is the runtime carrier used at the
// I/O boundary (CSV, certificates, CLI), where the backend is a config value.
enum class Backend { exact, f64 };

using Scalar = std::variant<Rational, double>;

template <class S>
inline constexpr bool is_exact_backend_v = std::is_same_v<S, Rational>;

template <class S>
constexpr Backend backend_v = is_exact_backend_v<S> ? Backend::exact : Backend::f64;

inline Backend backend_of(const Scalar& s) {
    return std::holds_alternative<Rational>(s) ? Backend::exact : Backend::f64;
}

// Rational -> S, the one conversion the kernels need: exact coefficients are
// derived in Rational and lowered to the working scalar at the last moment.
template <class S>
S scalar_from(const Rational& r) {
    if constexpr (is_exact_backend_v<S>)
        return r;
    else
        return to_double(r);
}

template <class S>
double scalar_to_double(const S& v) {
    if constexpr (is_exact_backend_v<S>)
        return to_double(v);
    else
        return v;
}

inline double scalar_to_double(const Scalar& v) {
    return std::visit([](const auto& x) { return scalar_to_double(x); }, v);
}

template <class S>
S scalar_abs(const S& v) {
    if constexpr (is_exact_backend_v<S>)
        return abs(v);
    else
        return std::fabs(v);
}

// Shortest exact decimal for doubles; %.17g always round-trips.
std::string double_str(double v);

inline std::string scalar_str(const Scalar& s) {
    if (const auto* r = std::get_if<Rational>(&s)) return rational_str(*r);
    return double_str(std::get<double>(s));
}

template <class S>
std::string scalar_str(const S& v) {
    if constexpr (is_exact_backend_v<S>)
        return rational_str(v);
    else
        return double_str(v);
}

inline const char* backend_name(Backend b) { return b == Backend::exact ? "exact" : "f64"; }

}  // namespace fdcalc
