#include <doctest.h>

#include <cmath>

#include "fdcalc/operators.hpp"

using namespace fdcalc;

namespace {

// Binomial-formula m-th difference at one point, written against the
// definition rather than the pass-based implementation under test.
Rational diff_oracle(const GridFn<Rational>& f, long m, long i) {
    Rational acc = 0;
    Rational binom = 1;  // C(m, k), updated incrementally
    for (long k = 0; k <= m; ++k) {
        const Rational sign = (m - k) % 2 == 0 ? 1 : -1;
        acc += sign * binom * f[i + k];
        binom = binom * (m - k) / (k + 1);
    }
    return acc;
}

}  // namespace

TEST_CASE("half-order sum of the all-ones function") {
    const GridFn<Rational> ones(Rational(0), {1, 1, 1});
    const auto s = fractional_sum(ones, Rational(1, 2));
    CHECK(s.base() == Rational(1, 2));
    CHECK(s.size() == 3);
    CHECK(s[0] == 1);
    CHECK(s[1] == Rational(3, 2));
    CHECK(s[2] == Rational(15, 8));
    CHECK(s.point(2) == Rational(5, 2));
}

TEST_CASE("half-order RL difference of the all-ones function") {
    const GridFn<Rational> ones(Rational(0), {1, 1, 1});
    const auto d = rl_difference(ones, FracOrder(Rational(1, 2)));
    CHECK(d.base() == Rational(1, 2));
    CHECK(d.size() == 2);
    CHECK(d[0] == Rational(1, 2));
    CHECK(d[1] == Rational(3, 8));
}

TEST_CASE("half-order Caputo difference of a constant vanishes") {
    const GridFn<Rational> c(Rational(0), {7, 7, 7, 7});
    const auto d = caputo_difference(c, FracOrder(Rational(1, 2)));
    for (long i = 0; i < d.size(); ++i) CHECK(d[i] == 0);
}

TEST_CASE("forward difference matches the binomial formula") {
    const GridFn<Rational> f(Rational(1, 2), {3, -1, 4, 1, -5, 9, 2, 6});
    for (long m = 1; m <= 4; ++m) {
        const auto d = forward_difference(f, m);
        CHECK(d.base() == f.base());
        CHECK(d.size() == f.size() - m);
        for (long i = 0; i < d.size(); ++i) CHECK(d[i] == diff_oracle(f, m, i));
    }
}

TEST_CASE("difference order and length validation") {
    const GridFn<Rational> f(Rational(0), {1, 2, 3});
    CHECK_THROWS_AS(forward_difference(f, 0), DomainError);
    CHECK_THROWS_WITH_AS(forward_difference(f, 3), doctest::Contains("needs at least 4"),
                         TooShort);
    CHECK_THROWS_AS(caputo_difference(f, FracOrder(Rational(7, 2))), TooShort);
    CHECK_THROWS_AS(rl_difference(f, FracOrder(Rational(7, 2))), TooShort);
}

TEST_CASE("fractional sum rejects nonpositive orders") {
    const GridFn<Rational> f(Rational(0), {1, 2});
    CHECK_THROWS_AS(fractional_sum(f, Rational(0)), DomainError);
    CHECK_THROWS_AS(fractional_sum(f, Rational(-1, 2)), DomainError);
}

TEST_CASE("caller-supplied kernels must cover the grid") {
    const GridFn<Rational> f(Rational(0), {1, 2, 3});
    const std::vector<Rational> shorter{1, Rational(1, 2)};
    CHECK_THROWS_AS(fractional_sum(f, Rational(1, 2), std::span<const Rational>(shorter)),
                    DomainError);
    // The identity kernel c = (1, 0, 0) turns the sum into a shift of f.
    const std::vector<Rational> ident{1, 0, 0};
    const auto s = fractional_sum(f, Rational(1, 2), std::span<const Rational>(ident));
    CHECK(s.values() == f.values());
    CHECK(s.base() == Rational(1, 2));
}

TEST_CASE("fractional sum is linear") {
    const GridFn<Rational> f(Rational(1), {2, -3, 5, 7});
    const GridFn<Rational> g(Rational(1), {1, 4, -2, 0});
    const Rational alpha(3, 2), beta(-1, 3), nu(3, 4);
    const auto lhs = fractional_sum(scale(alpha, f) + scale(beta, g), nu);
    const auto rhs_f = fractional_sum(f, nu);
    const auto rhs_g = fractional_sum(g, nu);
    for (long i = 0; i < lhs.size(); ++i)
        CHECK(lhs[i] == alpha * rhs_f[i] + beta * rhs_g[i]);
}

TEST_CASE("integer-order fractional sum telescopes to iterated sums") {
    const GridFn<Rational> f(Rational(0), {1, 2, 3, 4});
    const auto s = fractional_sum(f, Rational(1));
    // order-1 kernel is all ones: running partial sums.
    CHECK(s[0] == 1);
    CHECK(s[1] == 3);
    CHECK(s[2] == 6);
    CHECK(s[3] == 10);
    // first difference undoes it, shifted by one lattice step.
    const auto d = forward_difference(s, 1);
    for (long i = 0; i < d.size(); ++i) CHECK(d[i] == f[i + 1]);
}

TEST_CASE("float backend reproduces bit-identical results") {
    std::vector<double> v;
    for (int i = 0; i < 32; ++i) v.push_back(std::sin(i * 0.7) * 10);
    const GridFn<double> f(Rational(0), v);
    const auto a = fractional_sum(f, Rational(1, 2));
    const auto b = fractional_sum(f, Rational(1, 2));
    for (long i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    const auto c1 = caputo_difference(f, FracOrder(Rational(3, 2)));
    const auto c2 = caputo_difference(f, FracOrder(Rational(3, 2)));
    for (long i = 0; i < c1.size(); ++i) CHECK(c1[i] == c2[i]);
}

TEST_CASE("exact and float sums agree to rounding") {
    const GridFn<Rational> fr(Rational(0), {3, 1, 4, 1, 5, 9, 2, 6});
    std::vector<double> vd;
    for (long i = 0; i < fr.size(); ++i) vd.push_back(to_double(fr[i]));
    const GridFn<double> fd(Rational(0), vd);
    const auto sr = fractional_sum(fr, Rational(2, 3));
    const auto sd = fractional_sum(fd, Rational(2, 3));
    for (long i = 0; i < sr.size(); ++i)
        CHECK(to_double(sr[i]) == doctest::Approx(sd[i]).epsilon(1e-12));
}
