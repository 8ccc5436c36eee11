#pragma once

#include <utility>
#include <vector>

#include "fdcalc/errors.hpp"
#include "fdcalc/scalar.hpp"

namespace fdcalc {

// Index window [a, b] into a grid, endpoints included.
struct DiscreteInterval {
    long a;
    long b;
    DiscreteInterval(long a_, long b_) : a(a_), b(b_) {
        if (a > b)
            throw EmptyDomain("interval [" + std::to_string(a) + ", " + std::to_string(b) +
                              "] is empty");
    }
    long length() const { return b - a + 1; }
};

// A function sampled on the unit-step lattice {base, base+1, ...}. The base
// may be any rational; fractional-order operators shift it by non-integer
// amounts, which is why the abscissae are not stored per point.
template <class S>
class GridFn {
public:
    GridFn(Rational base, std::vector<S> values)
        : base_(std::move(base)), values_(std::move(values)) {
        if (values_.empty()) throw EmptyDomain("grid function needs at least one sample");
    }

    static GridFn from_samples(const Rational& base, std::vector<S> values) {
        return GridFn(base, std::move(values));
    }

    const Rational& base() const { return base_; }
    long size() const { return static_cast<long>(values_.size()); }
    Rational point(long i) const { return base_ + i; }
    Rational back_point() const { return base_ + (size() - 1); }
    const std::vector<S>& values() const { return values_; }
    const S& operator[](long i) const { return values_[static_cast<std::size_t>(i)]; }

    long index_of(const Rational& t) const {
        const Rational d = t - base_;
        if (!is_integer(d))
            throw OffGrid("point " + rational_str(t) + " is not on the lattice with base " +
                          rational_str(base_));
        const long i = integer_value(d);
        if (i < 0 || i >= size())
            throw OutOfRange("point " + rational_str(t) + " lies outside [" +
                             rational_str(base_) + ", " + rational_str(back_point()) + "]");
        return i;
    }

    const S& eval(const Rational& t) const { return values_[static_cast<std::size_t>(index_of(t))]; }

    GridFn restrict(const Rational& from, const Rational& to) const {
        const Rational df = from - base_;
        const Rational dt = to - base_;
        if (!is_integer(df) || !is_integer(dt))
            throw OffGrid("restriction endpoints must lie on the lattice with base " +
                          rational_str(base_));
        if (from > to)
            throw EmptyDomain("restriction [" + rational_str(from) + ", " + rational_str(to) +
                              "] is empty");
        const long i = index_of(from);
        const long j = index_of(to);
        return GridFn(from, std::vector<S>(values_.begin() + i, values_.begin() + j + 1));
    }

private:
    Rational base_;
    std::vector<S> values_;
};

namespace detail {

template <class S>
void require_same_domain(const GridFn<S>& f, const GridFn<S>& g) {
    if (f.base() != g.base() || f.size() != g.size())
        throw DomainError("grid functions live on different domains");
}

}  // namespace detail

template <class S>
GridFn<S> operator+(const GridFn<S>& f, const GridFn<S>& g) {
    detail::require_same_domain(f, g);
    std::vector<S> v(f.values());
    for (long i = 0; i < f.size(); ++i) v[static_cast<std::size_t>(i)] = f[i] + g[i];
    return GridFn<S>(f.base(), std::move(v));
}

template <class S>
GridFn<S> operator-(const GridFn<S>& f, const GridFn<S>& g) {
    detail::require_same_domain(f, g);
    std::vector<S> v(f.values());
    for (long i = 0; i < f.size(); ++i) v[static_cast<std::size_t>(i)] = f[i] - g[i];
    return GridFn<S>(f.base(), std::move(v));
}

template <class S>
GridFn<S> scale(const S& c, const GridFn<S>& f) {
    std::vector<S> v(f.values());
    for (auto& x : v) x = c * x;
    return GridFn<S>(f.base(), std::move(v));
}

}  // namespace fdcalc
