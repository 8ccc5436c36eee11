#include <doctest.h>

#include <sstream>

#include "fdcalc/grid.hpp"
#include "fdcalc/grid_io.hpp"

using namespace fdcalc;

namespace {
GridFn<Rational> sample() {
    return GridFn<Rational>(Rational(1, 2), {1, 2, 3, 4});
}
}  // namespace

TEST_CASE("interval endpoints") {
    const DiscreteInterval iv(2, 5);
    CHECK(iv.length() == 4);
    CHECK_THROWS_AS(DiscreteInterval(4, 2), EmptyDomain);
}

TEST_CASE("grid functions know their lattice") {
    const auto f = sample();
    CHECK(f.size() == 4);
    CHECK(f.point(0) == Rational(1, 2));
    CHECK(f.back_point() == Rational(7, 2));
    CHECK(f.eval(Rational(5, 2)) == 3);
    CHECK(f.index_of(Rational(7, 2)) == 3);
}

TEST_CASE("empty grids are rejected") {
    CHECK_THROWS_AS(GridFn<Rational>(Rational(0), {}), EmptyDomain);
}

TEST_CASE("off-lattice and out-of-window lookups are distinct errors") {
    const auto f = sample();
    CHECK_THROWS_AS(f.index_of(Rational(1)), OffGrid);
    CHECK_THROWS_AS(f.index_of(Rational(9, 2)), OutOfRange);
    CHECK_THROWS_AS(f.index_of(Rational(-1, 2)), OutOfRange);
}

TEST_CASE("restrict clips to a subwindow") {
    const auto f = sample();
    const auto g = f.restrict(Rational(3, 2), Rational(5, 2));
    CHECK(g.base() == Rational(3, 2));
    CHECK(g.size() == 2);
    CHECK(g[0] == 2);
    CHECK(g[1] == 3);
    CHECK_THROWS_AS(f.restrict(Rational(4), Rational(2)), OffGrid);
    CHECK_THROWS_AS(f.restrict(Rational(5, 2), Rational(3, 2)), EmptyDomain);
    CHECK_THROWS_AS(f.restrict(Rational(1, 2), Rational(9, 2)), OutOfRange);
}

TEST_CASE("pointwise arithmetic needs matching domains") {
    const auto f = sample();
    const auto g = sample();
    const auto h = f + g;
    CHECK(h[2] == 6);
    const auto d = f - g;
    CHECK(d[0] == 0);
    const GridFn<Rational> other(Rational(0), {1, 2, 3, 4});
    CHECK_THROWS_AS(f + other, DomainError);
    const auto s = scale(Rational(3), f);
    CHECK(s[3] == 12);
}

TEST_CASE("csv round-trip in exact arithmetic") {
    const auto f = sample();
    std::ostringstream out;
    write_grid_csv(out, f);
    CHECK(out.str() == "t,value\n1/2,1\n3/2,2\n5/2,3\n7/2,4\n");
    std::istringstream in(out.str());
    const auto g = read_grid_csv<Rational>(in);
    CHECK(g.base() == f.base());
    CHECK(g.values() == f.values());
}

TEST_CASE("csv round-trip in float") {
    const GridFn<double> f(Rational(0), {0.5, -1.25, 3.0});
    std::ostringstream out;
    write_grid_csv(out, f);
    std::istringstream in(out.str());
    const auto g = read_grid_csv<double>(in);
    CHECK(g.base() == 0);
    CHECK(g.values() == f.values());
}

TEST_CASE("csv reader tolerates CRLF and blank lines") {
    std::istringstream in("t,value\r\n0,1\r\n\r\n1,2\r\n");
    const auto f = read_grid_csv<Rational>(in);
    CHECK(f.size() == 2);
    CHECK(f[1] == 2);
}

TEST_CASE("csv reader accepts decimal abscissae") {
    std::istringstream in("t,value\n0.5,1\n1.5,2\n");
    const auto f = read_grid_csv<Rational>(in);
    CHECK(f.base() == Rational(1, 2));
}

TEST_CASE("csv reader rejects a bad header") {
    std::istringstream in("time,value\n0,1\n");
    CHECK_THROWS_AS(read_grid_csv<Rational>(in), DomainError);
}

TEST_CASE("csv reader rejects a non-unit step") {
    std::istringstream in("t,value\n0,1\n2,2\n");
    CHECK_THROWS_WITH_AS(read_grid_csv<Rational>(in),
                         doctest::Contains("breaks the unit step (expected 1)"),
                         DomainError);
}

TEST_CASE("csv reader rejects an empty body") {
    std::istringstream in("t,value\n");
    CHECK_THROWS_AS(read_grid_csv<Rational>(in), EmptyDomain);
}

TEST_CASE("decimal values only parse in the float backend") {
    std::istringstream in1("t,value\n0,1.5\n");
    CHECK_THROWS_WITH_AS(read_grid_csv<Rational>(in1),
                         doctest::Contains("float backend"), DomainError);
    std::istringstream in2("t,value\n0,1.5\n");
    const auto f = read_grid_csv<double>(in2);
    CHECK(f[0] == 1.5);
}

TEST_CASE("rational values parse in both backends") {
    std::istringstream in("t,value\n0,3/4\n");
    CHECK(read_grid_csv<double>(in)[0] == 0.75);
}
