#include <doctest.h>

#include <cmath>

#include "fdcalc/identities.hpp"

using namespace fdcalc;

namespace {

GridFn<Rational> mixed() {
    return GridFn<Rational>(Rational(0), {3, -1, 4, 1, -5, 9, 2, 6, -3, 7});
}

GridFn<double> lowered(const GridFn<Rational>& f) {
    std::vector<double> v;
    for (long i = 0; i < f.size(); ++i) v.push_back(to_double(f[i]));
    return GridFn<double>(f.base(), std::move(v));
}

}  // namespace

TEST_CASE("initial differences collect the left-edge jet") {
    const GridFn<Rational> f(Rational(2), {1, 3, 9, 27});
    const auto d = initial_diffs(f, 3);
    CHECK(d.a == 2);
    CHECK(d.diffs[0] == 1);
    CHECK(d.diffs[1] == 2);   // 3 - 1
    CHECK(d.diffs[2] == 4);   // 9 - 2*3 + 1
    CHECK_THROWS_AS(initial_diffs(f, 5), TooShort);
    CHECK_THROWS_AS(initial_diffs(f, 0), DomainError);
}

TEST_CASE("base formula holds exactly on a mixed sample") {
    const auto f = mixed();
    for (const Rational& mu : {Rational(1, 2), Rational(4, 3), Rational(5, 2)}) {
        const auto series = taylor_caputo_residual(f, FracOrder(mu));
        CHECK(!series.empty());
        CHECK(series.all_zero());
    }
}

TEST_CASE("shifted formula holds exactly for p = 1 and 2") {
    const auto f = mixed();
    const FracOrder ord(Rational(5, 2));
    for (long p : {1L, 2L}) {
        const auto series = taylor_extended_residual(f, ord, p);
        CHECK(!series.empty());
        CHECK(series.all_zero());
    }
}

TEST_CASE("shift index must stay below the order") {
    const auto f = mixed();
    CHECK_THROWS_AS(taylor_extended_residual(f, FracOrder(Rational(1, 2)), 1), OrderError);
    CHECK_THROWS_AS(taylor_extended_residual(f, FracOrder(Rational(3, 2)), -1), DomainError);
}

TEST_CASE("integer-order formula holds on rational bases") {
    const GridFn<Rational> f(Rational(3, 4), {2, -7, 1, 8, 2, -8, 1, 8});
    for (long m : {1L, 2L, 3L}) {
        const auto series = taylor_classic_residual(f, m);
        CHECK(!series.empty());
        CHECK(series.all_zero());
    }
}

TEST_CASE("pointwise evaluators validate their point") {
    const auto f = mixed();
    const FracOrder ord(Rational(3, 2));
    CHECK_THROWS_AS(taylor_caputo_rhs(f, ord, Rational(1)), DomainError);   // below a+m
    CHECK_THROWS_AS(taylor_caputo_rhs(f, ord, Rational(1, 2)), DomainError);  // off lattice
    CHECK_THROWS_AS(taylor_caputo_rhs(f, ord, Rational(100)), TooShort);
    CHECK(f[5] == taylor_caputo_rhs(f, ord, Rational(5)));
}

TEST_CASE("sum orders compose additively") {
    const auto f = mixed();
    for (const auto& [mu, nu] : {std::pair{Rational(1, 2), Rational(3, 4)},
                                 {Rational(1), Rational(1, 2)},
                                 {Rational(5, 4), Rational(2)}}) {
        const auto series = composition_residual(f, mu, nu);
        CHECK(!series.empty());
        CHECK(series.all_zero());
    }
}

TEST_CASE("difference passes through the sum with boundary corrections") {
    const auto f = mixed();
    for (long p : {1L, 2L, 3L}) {
        const auto series = exchange_residual(f, Rational(1, 2), p);
        CHECK(!series.empty());
        CHECK(series.all_zero());
    }
    CHECK_THROWS_AS(exchange_residual(f, Rational(-1, 2), 1), DomainError);
    CHECK_THROWS_AS(exchange_residual(f, Rational(1, 2), 0), DomainError);
}

TEST_CASE("boundary correction needs every term below p") {
    // f(t) = t + 1 on {0..7}, nu = 1/2, p = 1: dropping or extending the
    // correction range k = 0..p-1 by one term breaks the identity.
    std::vector<Rational> v;
    for (long i = 0; i <= 7; ++i) v.emplace_back(i + 1);
    const GridFn<Rational> f(Rational(0), std::move(v));
    const Rational nu(1, 2);
    const long p = 1;
    const auto series = exchange_residual(f, nu, p);
    CHECK(series.all_zero());
    // With the k = p term wrongly included the residual is binom_gamma(t, nu)
    // times the p-th initial difference (= 1 here), nonzero at every t.
    const auto d = initial_diffs(f, p + 1);
    for (const auto& pt : series.points) {
        const Rational extra = binom_gamma<Rational>(pt.t - f.base(), nu) * d.diffs[1];
        CHECK(extra != 0);
        CHECK(pt.lhs - (pt.rhs - extra) != 0);
    }
}

TEST_CASE("caputo and RL forms differ by the initial jet") {
    const auto f = mixed();
    for (const Rational& mu : {Rational(1, 2), Rational(7, 4), Rational(5, 2)}) {
        const auto series = caputo_rl_residual(f, FracOrder(mu));
        CHECK(!series.empty());
        CHECK(series.all_zero());
    }
}

TEST_CASE("integer difference commutes into a shorter sum") {
    const auto f = mixed();
    const auto series = commute_diff_sum_residual(f, Rational(3, 2), 1);
    CHECK(!series.empty());
    CHECK(series.all_zero());
    CHECK_THROWS_AS(commute_diff_sum_residual(f, Rational(1, 2), 1), OrderError);
    CHECK_THROWS_AS(commute_diff_sum_residual(f, Rational(3, 2), 0), DomainError);
}

TEST_CASE("operator identities are shift invariant") {
    const GridFn<Rational> f(Rational(-1, 2), {3, 1, 4, 1, 5, 9, 2, 6});
    CHECK(composition_residual(f, Rational(1, 2), Rational(1, 2)).all_zero());
    CHECK(exchange_residual(f, Rational(5, 4), 2).all_zero());
    CHECK(caputo_rl_residual(f, FracOrder(Rational(3, 2))).all_zero());
}

TEST_CASE("taylor reconstruction is pinned to nonnegative integer bases") {
    const GridFn<Rational> f(Rational(-1, 2), {3, 1, 4, 1, 5, 9, 2, 6});
    CHECK_THROWS_AS(taylor_caputo_residual(f, FracOrder(Rational(3, 4))), DomainError);
    const GridFn<Rational> g(Rational(3), {3, 1, 4, 1, 5, 9, 2, 6});
    CHECK(taylor_caputo_residual(g, FracOrder(Rational(3, 4))).all_zero());
}

TEST_CASE("float residuals stay at rounding scale") {
    const auto f = lowered(mixed());
    const FracOrder ord(Rational(3, 2));
    for (const auto& pt : taylor_caputo_residual(f, ord).points)
        CHECK(std::fabs(pt.lhs - pt.rhs) <=
              1e-9 * std::max({1.0, std::fabs(pt.lhs), std::fabs(pt.rhs)}));
    for (const auto& pt : caputo_rl_residual(f, ord).points)
        CHECK(std::fabs(pt.lhs - pt.rhs) <=
              1e-9 * std::max({1.0, std::fabs(pt.lhs), std::fabs(pt.rhs)}));
}

TEST_CASE("kernel mass closed form at the first admissible point") {
    // a = 0, mu = 1/2, t = 1: the single kernel term equals
    // Gamma(1/2) = sqrt(pi), and so does the closed form.
    const FracOrder ord(Rational(1, 2));
    const GammaValue v = closed_kernel_sum_gamma(Rational(0), ord, Rational(1));
    const GammaValue sqrt_pi = GammaValue::gamma_ratio(Rational(1, 2), Rational(1));
    CHECK(v == sqrt_pi);
    CHECK(closed_kernel_sum<double>(Rational(0), ord, Rational(1)) ==
          doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-14));
    CHECK_THROWS_AS(closed_kernel_sum<Rational>(Rational(0), ord, Rational(1)),
                    ExactnessError);
}

TEST_CASE("kernel mass closed form matches term-by-term summation") {
    for (const Rational& mu : {Rational(1, 2), Rational(4, 3), Rational(5, 2)}) {
        const FracOrder ord(mu);
        const Rational a(1, 4);
        for (long ta = ord.m; ta <= ord.m + 6; ++ta) {
            const Rational t = a + ta;
            GammaValue direct;
            for (long i = 0; i <= ta - ord.m; ++i)
                direct += falling_factorial_gamma(ta - ord.nu - 1 - i, ord.mu - 1);
            CHECK(closed_kernel_sum_gamma(a, ord, t) == direct);
        }
    }
}

TEST_CASE("kernel mass domain checks") {
    const FracOrder ord(Rational(3, 2));
    CHECK_THROWS_AS(closed_kernel_sum_gamma(Rational(0), ord, Rational(1)), DomainError);
    CHECK_THROWS_AS(closed_kernel_sum_gamma(Rational(0), ord, Rational(5, 2)), DomainError);
}

TEST_CASE("falling-power sum closed form, frozen half-integer value") {
    // sum over {3/2, 5/2} of x^(1/2) = 27 sqrt(pi) / 16.
    const GammaValue v = sum_falling_gamma(Rational(3, 2), Rational(5, 2), Rational(1, 2));
    const GammaValue expected =
        GammaValue::gamma_ratio(Rational(1, 2), Rational(1)) * Rational(27, 16);
    CHECK(v == expected);
    CHECK(sum_falling<double>(Rational(3, 2), Rational(5, 2), Rational(1, 2)) ==
          doctest::Approx(27 * std::sqrt(std::acos(-1.0)) / 16).epsilon(1e-14));
}

TEST_CASE("falling-power sum closed form matches term-by-term summation") {
    for (const Rational& nu : {Rational(1, 2), Rational(-1, 4), Rational(5, 4)}) {
        const Rational a = nu + Rational(3, 4);
        for (long w = 0; w <= 8; ++w) {
            const Rational b = a + w;
            GammaValue direct;
            for (long i = 0; i <= w; ++i) direct += falling_factorial_gamma(a + i, nu);
            CHECK(sum_falling_gamma(a, b, nu) == direct);
        }
    }
}

TEST_CASE("falling-power sum with integer exponent is rational") {
    // sum over {2..5} of x^(1) = 14 via (x^(2)/2 telescoping).
    CHECK(sum_falling<Rational>(Rational(2), Rational(5), Rational(1)) == 14);
    CHECK(sum_falling_gamma(Rational(2), Rational(5), Rational(1)).as_rational() == 14);
}

TEST_CASE("falling-power sum domain checks") {
    CHECK_THROWS_AS(sum_falling_gamma(Rational(1, 4), Rational(9, 4), Rational(1, 2)),
                    DomainError);  // needs a > nu
    CHECK_THROWS_AS(sum_falling_gamma(Rational(1), Rational(2), Rational(-3, 2)),
                    DomainError);  // needs nu > -1
    CHECK_THROWS_AS(sum_falling_gamma(Rational(1), Rational(5, 2), Rational(1, 2)),
                    DomainError);  // b - a must be a whole number of steps
    CHECK_THROWS_AS(sum_falling_gamma(Rational(2), Rational(1), Rational(1, 2)),
                    DomainError);  // empty range
}
