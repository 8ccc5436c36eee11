// Acceptance gate: eight checks, one verdict line each, nonzero exit if any
// fails. Each check drives the public API the way the test suites do but
// re-derives its expectations independently where that matters (closed forms
// are compared against term-by-term summation done right here).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "fdcalc/harness.hpp"
#include "fdcalc/identities.hpp"
#include "fdcalc/operators.hpp"

using namespace fdcalc;

namespace {

int failures = 0;

void verdict(int n, const std::string& what, bool ok, const std::string& note) {
    std::printf("criterion %d: %-52s %s%s%s\n", n, what.c_str(), ok ? "PASS" : "FAIL",
                note.empty() ? "" : "  ", note.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SuiteConfig long_taylor(Backend b) {
    SuiteConfig cfg;
    cfg.backend = b;
    cfg.taylor_length = 64;
    return cfg;
}

// 1: the base formula and its integer-order form hold on every sweep, exactly
// in rational arithmetic and to 1e-9 relative in float, in bounded time.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto exact = run_suite(Suite::taylor, long_taylor(Backend::exact));
    const auto fl = run_suite(Suite::taylor, long_taylor(Backend::f64));
    const double secs = seconds_since(t0);
    const bool ok = exact.pass && exact.max_abs_residual == 0 && fl.pass &&
                    fl.max_abs_residual <= 1e-9 && secs < 10.0;
    char note[128];
    std::snprintf(note, sizeof note, "(exact residual %g, float rel %.3g, %.2fs)",
                  exact.max_abs_residual, fl.max_abs_residual, secs);
    verdict(1, "reconstruction formulas, exact and float sweeps", ok, note);
}

// 2: the shifted formula holds for p = 0, 1, 2, and p = 0 reproduces the
// base formula bit for bit in both backends.
void criterion2() {
    bool ok = true;
    for (const Rational& mu : {Rational(5, 4), Rational(3, 2), Rational(7, 4), Rational(5, 2)}) {
        const FracOrder ord(mu);
        for (long p = 0; p <= 2; ++p) {
            if (Rational(p) >= mu) break;
            FunctionFamily fam;
            fam.kind = FamilyKind::random_integer;
            fam.length = 20;
            fam.seed = 7000 + 10 * p + ord.m;
            ok = ok && taylor_extended_residual(generate<Rational>(fam), ord, p).all_zero();
        }
    }
    // bit-identity of the p = 0 delegation
    FunctionFamily fam;
    fam.kind = FamilyKind::random_integer;
    fam.length = 24;
    fam.seed = 4242;
    const FracOrder ord(Rational(3, 2));
    const auto fr = generate<Rational>(fam);
    const auto fd = generate<double>(fam);
    for (long ta = ord.m; ta < fr.size(); ++ta) {
        const Rational t = fr.base() + ta;
        ok = ok && taylor_extended_rhs(fr, ord, 0, t) == taylor_caputo_rhs(fr, ord, t);
        const double a = taylor_extended_rhs(fd, ord, 0, t);
        const double b = taylor_caputo_rhs(fd, ord, t);
        ok = ok && a == b;  // bitwise, not approximate
    }
    verdict(2, "shifted formulas p = 0, 1, 2 and p = 0 delegation", ok, "");
}

// 3: composition of sums and pulling an integer difference inside, 100
// seeded instances each, identically zero residuals.
void criterion3() {
    SuiteConfig cfg;
    cfg.cases = 100;
    const auto rep = run_suite(Suite::identities, cfg);
    long comp = 0, comm = 0;
    bool ok = true;
    for (const auto& c : rep.cases) {
        if (c.key.find("/composition/") != std::string::npos) {
            ++comp;
            ok = ok && c.pass && c.max_abs_residual == 0;
        }
        if (c.key.find("/commute/") != std::string::npos) {
            ++comm;
            ok = ok && c.pass && c.max_abs_residual == 0;
        }
    }
    ok = ok && comp == 100 && comm == 100;
    verdict(3, "sum composition and difference commutation, 100 each", ok, "");
}

// 4: the Caputo/RL bridge and the exchange correction, 100 instances each,
// plus the boundary-correction range demonstration: the correction stops at
// k = p-1, and including k = p provably breaks the identity.
void criterion4() {
    SuiteConfig cfg;
    cfg.cases = 100;
    const auto rep = run_suite(Suite::identities, cfg);
    long bridge = 0, exch = 0;
    bool ok = true;
    for (const auto& c : rep.cases) {
        if (c.key.find("/caputo_rl/") != std::string::npos) {
            ++bridge;
            ok = ok && c.pass && c.max_abs_residual == 0;
        }
        if (c.key.find("/exchange/") != std::string::npos) {
            ++exch;
            ok = ok && c.pass && c.max_abs_residual == 0;
        }
    }
    ok = ok && bridge == 100 && exch == 100;

    // f(t) = t+1 on {0..7}, nu = 1/2, p = 1: correct correction k = 0 only.
    std::vector<Rational> v;
    for (long i = 0; i <= 7; ++i) v.emplace_back(i + 1);
    const GridFn<Rational> f(Rational(0), std::move(v));
    const auto series = exchange_residual(f, Rational(1, 2), 1);
    ok = ok && series.all_zero();
    bool extended_breaks = true;
    const auto d = initial_diffs(f, 2);
    for (const auto& pt : series.points) {
        // adding the k = p term subtracts binom_gamma(t-a, nu) * diff_1 more
        const Rational wrong_rhs =
            pt.rhs - binom_gamma<Rational>(pt.t - f.base(), Rational(1, 2)) * d.diffs[1];
        extended_breaks = extended_breaks && pt.lhs != wrong_rhs;
    }
    ok = ok && extended_breaks;
    verdict(4, "Caputo/RL bridge, exchange, correction range", ok, "");
}

// 5: both closed-form summation formulas against independent term-by-term
// summation, 100 random exact instances each, plus float worked values.
void criterion5() {
    bool ok = true;
    SeededRng rng(20260822);
    const std::vector<Rational> mus{Rational(1, 4), Rational(1, 2), Rational(3, 4),
                                    Rational(4, 3), Rational(3, 2), Rational(5, 2)};
    const std::vector<Rational> bases{Rational(0), Rational(1), Rational(1, 2), Rational(5, 4)};
    for (int i = 0; i < 100 && ok; ++i) {
        const FracOrder ord(rng.pick(mus));
        const Rational a = rng.pick(bases);
        const long ta = ord.m + rng.draw(0, 12);
        const Rational t = a + ta;
        GammaValue direct;
        for (long j = 0; j <= ta - ord.m; ++j)
            direct += falling_factorial_gamma(ta - ord.nu - 1 - j, ord.mu - 1);
        ok = closed_kernel_sum_gamma(a, ord, t) == direct;
    }
    const std::vector<Rational> nus{Rational(1, 2),  Rational(1, 3), Rational(3, 4),
                                    Rational(5, 4),  Rational(-1, 4), Rational(-1, 2)};
    for (int i = 0; i < 100 && ok; ++i) {
        const Rational nu = rng.pick(nus);
        const Rational a = nu + Rational(rng.draw(1, 8), 4);
        const Rational b = a + rng.draw(0, 10);
        GammaValue direct;
        for (long j = 0; j <= integer_value(b - a); ++j)
            direct += falling_factorial_gamma(a + j, nu);
        ok = sum_falling_gamma(a, b, nu) == direct;
    }
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    const double v1 = closed_kernel_sum<double>(Rational(0), FracOrder(Rational(1, 2)), Rational(1));
    ok = ok && std::fabs(v1 - sqrt_pi) <= 1e-12 * sqrt_pi;
    const double v2 = sum_falling<double>(Rational(3, 2), Rational(5, 2), Rational(1, 2));
    ok = ok && std::fabs(v2 - 27 * sqrt_pi / 16) <= 1e-12 * (27 * sqrt_pi / 16);
    verdict(5, "closed-form sums vs term-by-term, worked float values", ok, "");
}

// 6: all six bound families, 500 seeded instances each, every certificate
// passing; plus the worked deviation bound. Rational-certified members prove
// slack >= 0 exactly through their pass flag; the root-form bounds certify in
// floating point even on the exact backend, so the suite-wide minimum slack
// only has to clear the library's certification floor.
void criterion6() {
    SuiteConfig cfg;
    cfg.inequality_cases = 500;
    const auto exact = run_suite(Suite::inequalities, cfg);
    cfg.backend = Backend::f64;
    const auto fl = run_suite(Suite::inequalities, cfg);
    bool ok = exact.pass && fl.pass && exact.cases.size() == 3000 && fl.cases.size() == 3000;
    ok = ok && exact.min_slack && *exact.min_slack >= -kSlackFloor;
    ok = ok && fl.min_slack && *fl.min_slack >= -kSlackFloor;

    std::vector<Rational> ramp{0, 1, 2, 3};
    const auto cert =
        ostrowski(GridFn<Rational>(Rational(0), std::move(ramp)), FracOrder(Rational(1, 2)), 0,
                  Rational(3));
    ok = ok && cert.pass && std::get<Rational>(cert.lhs) == Rational(5, 2) &&
         std::get<Rational>(cert.rhs) == Rational(405, 128) &&
         std::get<Rational>(cert.slack) == Rational(85, 128);
    char note[96];
    std::snprintf(note, sizeof note, "(3000 + 3000 certificates, min slack %.3g)",
                  exact.min_slack ? *exact.min_slack : -1.0);
    verdict(6, "bound certificates, 500 instances per inequality", ok, note);
}

// 7: operator, lowered exact operator, and brute-force oracle agree to 1e-10
// relative on 100 seeded instances.
void criterion7() {
    const auto rep = run_suite(Suite::backend_agreement, SuiteConfig{});
    long oracle_cases = 0;
    bool ok = rep.pass;
    for (const auto& c : rep.cases)
        if (c.key.find("agreement/oracle/") != std::string::npos) ++oracle_cases;
    ok = ok && oracle_cases == 100;
    char note[64];
    std::snprintf(note, sizeof note, "(worst %.3g)", rep.max_abs_residual);
    verdict(7, "three-way backend and oracle agreement", ok, note);
}

// 8: the harness is not vacuous: a 1/1000 corruption of one kernel
// coefficient must flip the taylor suite to fail.
void criterion8() {
    SuiteConfig cfg;
    cfg.perturb_kernel = Rational(1, 1000);
    const auto rep = run_suite(Suite::taylor, cfg);
    long failed = 0;
    for (const auto& c : rep.cases)
        if (!c.pass) ++failed;
    char note[64];
    std::snprintf(note, sizeof note, "(%ld of %zu cases detect it)", failed, rep.cases.size());
    verdict(8, "corrupted kernel is detected (negative control)", !rep.pass && failed > 0, note);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0) {
        std::printf("acceptance: all 8 criteria satisfied\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
