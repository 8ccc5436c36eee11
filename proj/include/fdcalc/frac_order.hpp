#pragma once

#include "fdcalc/errors.hpp"
#include "fdcalc/rational.hpp"

namespace fdcalc {

// A positive non-integer order mu together with the derived pair
// m = ceil(mu), nu = m - mu in (0, 1). Construction is the only way to get
// one, so m and nu can never drift out of sync with mu.
struct FracOrder {
    Rational mu;
    long m;
    Rational nu;

    explicit FracOrder(const Rational& order) : mu(order), m(0), nu(0) {
        if (mu <= 0 || is_integer(mu))
            throw DomainError("fractional order must be positive and non-integer, got " +
                              rational_str(mu));
        m = ceil_long(mu);
        nu = Rational(m) - mu;
    }
};

}  // namespace fdcalc
