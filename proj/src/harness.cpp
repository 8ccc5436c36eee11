#include "fdcalc/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace fdcalc {

long SeededRng::draw(long lo, long hi) {
    if (lo > hi) throw ConfigError("empty draw range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(raw() % span);
}

const Rational& SeededRng::pick(const std::vector<Rational>& pool) {
    if (pool.empty()) throw ConfigError("empty pool");
    return pool[static_cast<std::size_t>(draw(0, static_cast<long>(pool.size()) - 1))];
}

std::vector<Rational> default_orders() {
    return {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(3, 4),
            Rational(5, 4), Rational(3, 2), Rational(7, 4), Rational(5, 2)};
}

std::vector<Rational> family_values(const FunctionFamily& fam) {
    if (fam.length < 1)
        throw ConfigError("family length must be at least 1, got " + std::to_string(fam.length));
    SeededRng rng(fam.seed);
    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>(fam.length));
    switch (fam.kind) {
        case FamilyKind::polynomial: {
            if (fam.degree < 0)
                throw ConfigError("polynomial degree must be nonnegative, got " +
                                  std::to_string(fam.degree));
            std::vector<Rational> c = fam.coeffs;
            if (c.empty()) {
                for (long i = 0; i < fam.degree; ++i) c.emplace_back(rng.draw(-fam.range, fam.range));
                const long lead = rng.draw(1, std::max<long>(1, fam.range));
                c.emplace_back(rng.draw(0, 1) ? lead : -lead);
            }
            for (long j = 0; j < fam.length; ++j) {
                const Rational x = fam.base + j;
                Rational acc = 0;
                for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
                v.push_back(acc);
            }
            break;
        }
        case FamilyKind::geometric: {
            if (fam.ratio == 0) throw ConfigError("geometric ratio must be nonzero");
            Rational acc = 1;
            for (long j = 0; j < fam.length; ++j) {
                v.push_back(acc);
                acc *= fam.ratio;
            }
            break;
        }
        case FamilyKind::random_integer: {
            for (long j = 0; j < fam.length; ++j) v.emplace_back(rng.draw(-fam.range, fam.range));
            break;
        }
        case FamilyKind::admissible_tail: {
            if (fam.vanish < 0 || fam.vanish >= fam.length)
                throw ConfigError("vanishing count must lie in [0, length), got " +
                                  std::to_string(fam.vanish));
            std::vector<Rational> cur;
            for (long j = 0; j < fam.length - fam.vanish; ++j)
                cur.emplace_back(rng.draw(-fam.range, fam.range));
            // Each pass integrates from zero, so the first `vanish` initial
            // differences of the result vanish by construction.
            for (long pass = 0; pass < fam.vanish; ++pass) {
                std::vector<Rational> next(cur.size() + 1);
                next[0] = 0;
                for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = next[i] + cur[i];
                cur = std::move(next);
            }
            v = std::move(cur);
            break;
        }
    }
    return v;
}

std::string family_str(const FunctionFamily& fam) {
    std::string s;
    switch (fam.kind) {
        case FamilyKind::polynomial:
            if (!fam.coeffs.empty()) {
                s = "poly[";
                for (std::size_t i = 0; i < fam.coeffs.size(); ++i) {
                    if (i) s += ',';
                    s += rational_str(fam.coeffs[i]);
                }
                s += ']';
            } else {
                s = "poly(deg=" + std::to_string(fam.degree) + ")";
            }
            break;
        case FamilyKind::geometric:
            s = "geom(ratio=" + rational_str(fam.ratio) + ")";
            break;
        case FamilyKind::random_integer:
            s = "randint(range=" + std::to_string(fam.range) + ")";
            break;
        case FamilyKind::admissible_tail:
            s = "admissible(vanish=" + std::to_string(fam.vanish) + ")";
            break;
    }
    s += " base=" + rational_str(fam.base) + " len=" + std::to_string(fam.length) + " seed=" +
         std::to_string(fam.seed);
    return s;
}

Suite parse_suite(const std::string& name) {
    if (name == "taylor") return Suite::taylor;
    if (name == "identities") return Suite::identities;
    if (name == "inequalities") return Suite::inequalities;
    if (name == "backend_agreement") return Suite::backend_agreement;
    if (name == "all") return Suite::all;
    throw ConfigError("unknown suite '" + name +
                      "' (expected taylor, identities, inequalities, backend_agreement, all)");
}

const char* suite_name(Suite s) {
    switch (s) {
        case Suite::taylor: return "taylor";
        case Suite::identities: return "identities";
        case Suite::inequalities: return "inequalities";
        case Suite::backend_agreement: return "backend_agreement";
        case Suite::all: return "all";
    }
    return "?";
}

namespace {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t case_seed(std::uint64_t suite_seed, std::string_view key) {
    return fnv1a64(key) ^ (suite_seed * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull);
}

std::string clip(std::string s) {
    if (s.size() > 48) {
        s.resize(45);
        s += "...";
    }
    return s;
}

double rel_diff(double x, double y) {
    return std::fabs(x - y) / std::max({1.0, std::fabs(x), std::fabs(y)});
}

template <class S>
CaseResult residual_case(const ResidualSeries<S>& series, const std::string& what) {
    CaseResult res;
    res.kind = "residual";
    if constexpr (is_exact_backend_v<S>) {
        res.pass = series.all_zero();
        res.max_abs_residual = to_double(series.max_abs_residual());
    } else {
        // Record residuals scale-normalized so the stored number is the one
        // the tolerance governs (raw |lhs-rhs| is meaningless on 2^60-sized
        // values).
        bool ok = true;
        double worst = 0;
        for (const auto& p : series.points) {
            const double scale = std::max({1.0, std::fabs(p.lhs), std::fabs(p.rhs)});
            const double r = std::fabs(p.lhs - p.rhs) / scale;
            ok = ok && r <= kFloatResidualTol;
            worst = std::max(worst, r);
        }
        res.pass = ok;
        res.max_abs_residual = worst;
    }
    res.detail = what;
    const long wi = series.worst_index();
    if (!res.pass && wi >= 0) {
        const auto& p = series.points[static_cast<std::size_t>(wi)];
        res.detail += "; worst at t = " + rational_str(p.t) + " (lhs = " +
                      clip(scalar_str(p.lhs)) + ", rhs = " + clip(scalar_str(p.rhs)) + ")";
    }
    return res;
}

CaseResult certificate_case(const BoundCertificate& c, const std::string& what) {
    CaseResult res;
    res.kind = "certificate";
    res.pass = c.pass;
    res.slack = scalar_to_double(c.slack);
    res.detail = what + "; lhs = " + clip(scalar_str(c.lhs)) + ", rhs = " +
                 clip(scalar_str(c.rhs));
    return res;
}

CaseResult agreement_case(double worst, const std::string& what) {
    CaseResult res;
    res.kind = "agreement";
    res.pass = worst <= kAgreementTol;
    res.max_abs_residual = worst;
    res.detail = what;
    return res;
}

// ---- closed-form oracles: term-by-term summation, nothing shared with the
// closed forms under test ----

GammaValue oracle_kernel_sum_gamma(const Rational& a, const FracOrder& ord, const Rational& t) {
    GammaValue acc;
    const long terms = integer_value(t - a) - ord.m + 1;  // s = a+nu, ..., t-mu
    for (long i = 0; i < terms; ++i)
        acc += falling_factorial_gamma(t - a - ord.nu - 1 - i, ord.mu - 1);
    return acc;
}

double oracle_kernel_sum_double(const Rational& a, const FracOrder& ord, const Rational& t) {
    double acc = 0;
    const long terms = integer_value(t - a) - ord.m + 1;
    for (long i = 0; i < terms; ++i)
        acc += falling_factorial(to_double(t - a - ord.nu - 1 - i), to_double(ord.mu) - 1.0);
    return acc;
}

GammaValue oracle_sum_falling_gamma(const Rational& a, const Rational& b, const Rational& nu) {
    GammaValue acc;
    const long terms = integer_value(b - a) + 1;
    for (long i = 0; i < terms; ++i) acc += falling_factorial_gamma(a + i, nu);
    return acc;
}

double oracle_sum_falling_double(const Rational& a, const Rational& b, const Rational& nu) {
    double acc = 0;
    const long terms = integer_value(b - a) + 1;
    for (long i = 0; i < terms; ++i)
        acc += falling_factorial(to_double(a + i), to_double(nu));
    return acc;
}

// ---- job runner ----

struct Job {
    std::string key;
    std::function<CaseResult()> fn;
};

std::vector<CaseResult> run_jobs(const std::vector<Job>& jobs, int threads) {
    std::vector<CaseResult> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                out[i] = jobs[i].fn();
            } catch (const std::exception& e) {
                out[i] = CaseResult{};
                out[i].kind = "error";
                out[i].pass = false;
                out[i].detail = e.what();
            }
            out[i].key = jobs[i].key;
        }
    };
    const int n = std::min<int>(threads, static_cast<int>(jobs.size()));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

// ---- family construction ----

constexpr const char* kTaylorFamilyNames[5] = {"const", "poly2", "geom2", "randint",
                                               "admissible"};

FunctionFamily taylor_family(int which, long m, long length, const Rational& base,
                             std::uint64_t seed) {
    FunctionFamily fam;
    fam.base = base;
    fam.length = length;
    fam.seed = seed;
    switch (which) {
        case 0:
            fam.kind = FamilyKind::polynomial;
            fam.coeffs = {Rational(7)};
            break;
        case 1:
            fam.kind = FamilyKind::polynomial;
            fam.degree = 2;
            break;
        case 2:
            fam.kind = FamilyKind::geometric;
            fam.ratio = 2;
            break;
        case 3:
            fam.kind = FamilyKind::random_integer;
            break;
        default:
            fam.kind = FamilyKind::admissible_tail;
            fam.vanish = m;
            break;
    }
    return fam;
}

FunctionFamily random_family(SeededRng& rng, long min_length) {
    static const std::vector<Rational> bases{Rational(0),     Rational(1), Rational(1, 2),
                                             Rational(3, 4),  Rational(2), Rational(-1, 2)};
    static const std::vector<Rational> ratios{Rational(2), Rational(3, 2), Rational(-2),
                                              Rational(1, 2)};
    FunctionFamily fam;
    fam.length = rng.draw(min_length, min_length + 8);
    fam.base = bases[static_cast<std::size_t>(rng.draw(0, 5))];
    switch (rng.draw(0, 3)) {
        case 0:
            fam.kind = FamilyKind::polynomial;
            fam.degree = rng.draw(0, 3);
            break;
        case 1:
            fam.kind = FamilyKind::geometric;
            fam.ratio = ratios[static_cast<std::size_t>(rng.draw(0, 3))];
            break;
        case 2:
            fam.kind = FamilyKind::random_integer;
            break;
        default:
            fam.kind = FamilyKind::admissible_tail;
            fam.vanish = rng.draw(0, std::min<long>(3, fam.length - 1));
            break;
    }
    fam.seed = rng.raw();
    return fam;
}

// f with the initial-difference band k = p..m-1 vanishing: an integrated tail
// (all of 0..m-1 vanishing) plus, for p >= 1, a drawn polynomial of degree
// p-1 to make the lower differences nonzero.
template <class S>
GridFn<S> banded_admissible(long m, long p, long length, const Rational& base,
                            std::uint64_t seed) {
    FunctionFamily tail;
    tail.kind = FamilyKind::admissible_tail;
    tail.vanish = m;
    tail.length = length;
    tail.base = base;
    tail.seed = seed;
    GridFn<S> f = generate<S>(tail);
    if (p >= 1) {
        FunctionFamily low;
        low.kind = FamilyKind::polynomial;
        low.degree = p - 1;
        low.length = length;
        low.base = base;
        low.seed = seed ^ 0xABCDEF0123456789ull;
        f = f + generate<S>(low);
    }
    return f;
}

// ---- kernels with the optional negative-control corruption ----

template <class S>
std::vector<S> remainder_kernel(const Rational& order, long count, const Rational& perturb) {
    std::vector<S> k = kernel_coeffs<S>(order, count);
    if (perturb != 0 && k.size() > 1) k[1] = k[1] + scalar_from<S>(perturb);
    return k;
}

// ---- taylor suite ----

template <class S>
void add_taylor_jobs(std::vector<Job>& jobs, const SuiteConfig& cfg) {
    const long len = std::max<long>(cfg.taylor_length, 8);
    for (const Rational& mu : cfg.orders) {
        const FracOrder ord(mu);
        const std::string mu_tag = "mu=" + rational_str(mu);
        for (int fi = 0; fi < 5; ++fi) {
            const std::string base_key =
                "taylor/base/" + mu_tag + "/" + kTaylorFamilyNames[fi];
            const FunctionFamily fam =
                taylor_family(fi, ord.m, len, 0, case_seed(cfg.seed, base_key));
            jobs.push_back({base_key, [fam, ord, perturb = cfg.perturb_kernel] {
                                const GridFn<S> f = generate<S>(fam);
                                const std::vector<S> k = remainder_kernel<S>(
                                    ord.mu, f.size() - ord.m, perturb);
                                return residual_case(
                                    taylor_extended_residual(f, ord, 0, std::span<const S>(k)),
                                    family_str(fam));
                            }});
            for (long p = 1; p <= 2; ++p) {
                if (Rational(p) >= ord.mu) break;
                const std::string key = "taylor/shifted/p=" + std::to_string(p) + "/" + mu_tag +
                                        "/" + kTaylorFamilyNames[fi];
                const FunctionFamily sfam =
                    taylor_family(fi, ord.m, len, 0, case_seed(cfg.seed, key));
                jobs.push_back({key, [sfam, ord, p, perturb = cfg.perturb_kernel] {
                                    const GridFn<S> f = generate<S>(sfam);
                                    const std::vector<S> k = remainder_kernel<S>(
                                        ord.mu - p, f.size() - ord.m, perturb);
                                    return residual_case(
                                        taylor_extended_residual(f, ord, p,
                                                                 std::span<const S>(k)),
                                        family_str(sfam));
                                }});
            }
        }
        // The p = 0 shifted formula must reproduce the base formula
        // identically: same rationals exactly, same doubles bit for bit.
        {
            const std::string key = "taylor/p0-delegation/" + mu_tag;
            const FunctionFamily fam =
                taylor_family(3, ord.m, len, 0, case_seed(cfg.seed, key));
            jobs.push_back({key, [fam, ord] {
                                const GridFn<S> f = generate<S>(fam);
                                CaseResult res;
                                res.kind = "residual";
                                res.pass = true;
                                for (long ta = ord.m; ta < f.size(); ++ta) {
                                    const Rational t = f.base() + ta;
                                    const S a = taylor_caputo_rhs(f, ord, t);
                                    const S b = taylor_extended_rhs(f, ord, 0, t);
                                    if (!(a == b)) res.pass = false;
                                }
                                res.detail = "shift 0 delegates to the base formula; " +
                                             family_str(fam);
                                return res;
                            }});
        }
        // Vanishing initial data: the head drops out and the remainder alone
        // reproduces the (shifted) function.
        for (long p = 0; p <= 2; ++p) {
            if (Rational(p) >= ord.mu) break;
            const std::string key =
                "taylor/vanishing/p=" + std::to_string(p) + "/" + mu_tag;
            const std::uint64_t seed = case_seed(cfg.seed, key);
            jobs.push_back({key, [ord, p, len, seed] {
                                const GridFn<S> f =
                                    banded_admissible<S>(ord.m, p, len, 0, seed);
                                const InitialDiffs<S> d = initial_diffs(f, ord.m);
                                const S zero = scalar_from<S>(Rational(0));
                                bool head_zero = true;
                                for (long k = p; k < ord.m; ++k)
                                    head_zero =
                                        head_zero && d.diffs[static_cast<std::size_t>(k)] == zero;
                                CaseResult res = residual_case(
                                    taylor_extended_residual(f, ord, p),
                                    "vanishing band k=" + std::to_string(p) + ".." +
                                        std::to_string(ord.m - 1));
                                if (!head_zero) {
                                    res.pass = false;
                                    res.detail += "; head failed to vanish";
                                }
                                return res;
                            }});
        }
    }
    // Integer-order formula, exercised on rational bases too.
    static const Rational classic_bases[5] = {Rational(0), Rational(1, 2), Rational(2),
                                              Rational(3, 4), Rational(1)};
    for (long m = 1; m <= 3; ++m) {
        for (int fi = 0; fi < 5; ++fi) {
            const std::string key = "taylor/classic/m=" + std::to_string(m) + "/" +
                                    kTaylorFamilyNames[fi];
            const FunctionFamily fam = taylor_family(fi, std::max<long>(1, m), len,
                                                     classic_bases[fi], case_seed(cfg.seed, key));
            jobs.push_back({key, [fam, m] {
                                const GridFn<S> f = generate<S>(fam);
                                return residual_case(taylor_classic_residual(f, m),
                                                     family_str(fam));
                            }});
        }
    }
}

// ---- identities suite ----

template <class S>
void add_identity_jobs(std::vector<Job>& jobs, const SuiteConfig& cfg) {
    std::vector<Rational> sum_orders = cfg.orders;
    sum_orders.emplace_back(1);
    sum_orders.emplace_back(2);
    const std::vector<Rational> commute_orders{Rational(5, 4), Rational(3, 2), Rational(7, 4),
                                               Rational(5, 2), Rational(2), Rational(3)};
    const std::vector<Rational> kernel_bases{Rational(0), Rational(1), Rational(1, 2),
                                             Rational(5, 4)};
    const std::vector<Rational> falling_exponents{Rational(1, 2),  Rational(1, 3),
                                                  Rational(3, 4),  Rational(5, 4),
                                                  Rational(-1, 4), Rational(-1, 2)};
    char tag[24];
    for (long i = 0; i < cfg.cases; ++i) {
        std::snprintf(tag, sizeof tag, "%03ld", i);
        {
            const std::string key = std::string("identities/composition/") + tag;
            jobs.push_back({key, [key, sum_orders, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const FunctionFamily fam = random_family(rng, 4);
                                const Rational mu = rng.pick(sum_orders);
                                const Rational nu = rng.pick(sum_orders);
                                return residual_case(
                                    composition_residual(generate<S>(fam), mu, nu),
                                    family_str(fam) + ", mu=" + rational_str(mu) +
                                        ", nu=" + rational_str(nu));
                            }});
        }
        {
            const std::string key = std::string("identities/exchange/") + tag;
            jobs.push_back({key, [key, sum_orders, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const long p = rng.draw(1, 3);
                                const FunctionFamily fam = random_family(rng, p + 2);
                                const Rational nu = rng.pick(sum_orders);
                                return residual_case(
                                    exchange_residual(generate<S>(fam), nu, p),
                                    family_str(fam) + ", nu=" + rational_str(nu) +
                                        ", p=" + std::to_string(p));
                            }});
        }
        {
            const std::string key = std::string("identities/caputo_rl/") + tag;
            jobs.push_back({key, [key, orders = cfg.orders, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const FracOrder ord(rng.pick(orders));
                                const FunctionFamily fam = random_family(rng, ord.m + 2);
                                return residual_case(
                                    caputo_rl_residual(generate<S>(fam), ord),
                                    family_str(fam) + ", mu=" + rational_str(ord.mu));
                            }});
        }
        {
            const std::string key = std::string("identities/commute/") + tag;
            jobs.push_back({key, [key, commute_orders, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const Rational nu = rng.pick(commute_orders);
                                const long p = rng.draw(1, ceil_long(nu) - 1);
                                const FunctionFamily fam = random_family(rng, p + 2);
                                return residual_case(
                                    commute_diff_sum_residual(generate<S>(fam), nu, p),
                                    family_str(fam) + ", nu=" + rational_str(nu) +
                                        ", p=" + std::to_string(p));
                            }});
        }
        {
            const std::string key = std::string("identities/telescope/") + tag;
            jobs.push_back({key, [key, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const Rational k(rng.draw(-3, 11), 4);
                                const Rational x = k + Rational(rng.draw(1, 16), 4);
                                CaseResult res;
                                res.kind = "residual";
                                res.detail =
                                    "x=" + rational_str(x) + ", k=" + rational_str(k);
                                if constexpr (is_exact_backend_v<S>) {
                                    const Rational r = gamma_telescope_residual<Rational>(x, k);
                                    res.pass = r == 0;
                                    res.max_abs_residual = std::fabs(to_double(r));
                                } else {
                                    const double xd = to_double(x), kd = to_double(k);
                                    const double r = gamma_telescope_residual<double>(xd, kd);
                                    const double scale = std::max(
                                        1.0, std::fabs(falling_factorial(xd, kd)));
                                    res.pass = std::fabs(r) <= kClosedFormTol * scale;
                                    res.max_abs_residual = std::fabs(r) / scale;
                                }
                                return res;
                            }});
        }
        {
            const std::string key = std::string("identities/kernel_sum/") + tag;
            jobs.push_back({key, [key, orders = cfg.orders, kernel_bases, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const Rational a = rng.pick(kernel_bases);
                                const FracOrder ord(rng.pick(orders));
                                const Rational t = a + ord.m + rng.draw(0, 12);
                                CaseResult res;
                                res.kind = "residual";
                                res.detail = "a=" + rational_str(a) +
                                             ", mu=" + rational_str(ord.mu) +
                                             ", t=" + rational_str(t);
                                if constexpr (is_exact_backend_v<S>) {
                                    const GammaValue closed =
                                        closed_kernel_sum_gamma(a, ord, t);
                                    const GammaValue direct =
                                        oracle_kernel_sum_gamma(a, ord, t);
                                    res.pass = closed == direct;
                                    res.max_abs_residual =
                                        res.pass ? 0
                                                 : rel_diff(closed.to_double(),
                                                            direct.to_double());
                                } else {
                                    const double closed = closed_kernel_sum<double>(a, ord, t);
                                    const double direct = oracle_kernel_sum_double(a, ord, t);
                                    const double scale =
                                        std::max({1.0, std::fabs(closed), std::fabs(direct)});
                                    res.pass =
                                        std::fabs(closed - direct) <= kClosedFormTol * scale;
                                    res.max_abs_residual = std::fabs(closed - direct) / scale;
                                }
                                return res;
                            }});
        }
        {
            const std::string key = std::string("identities/falling_sum/") + tag;
            jobs.push_back({key, [key, falling_exponents, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const Rational nu = rng.pick(falling_exponents);
                                const Rational a = nu + Rational(rng.draw(1, 8), 4);
                                const Rational b = a + rng.draw(0, 10);
                                CaseResult res;
                                res.kind = "residual";
                                res.detail = "a=" + rational_str(a) + ", b=" + rational_str(b) +
                                             ", nu=" + rational_str(nu);
                                if constexpr (is_exact_backend_v<S>) {
                                    const GammaValue closed = sum_falling_gamma(a, b, nu);
                                    const GammaValue direct =
                                        oracle_sum_falling_gamma(a, b, nu);
                                    res.pass = closed == direct;
                                    res.max_abs_residual =
                                        res.pass ? 0
                                                 : rel_diff(closed.to_double(),
                                                            direct.to_double());
                                } else {
                                    const double closed = sum_falling<double>(a, b, nu);
                                    const double direct = oracle_sum_falling_double(a, b, nu);
                                    const double scale =
                                        std::max({1.0, std::fabs(closed), std::fabs(direct)});
                                    res.pass =
                                        std::fabs(closed - direct) <= kClosedFormTol * scale;
                                    res.max_abs_residual = std::fabs(closed - direct) / scale;
                                }
                                return res;
                            }});
        }
    }
}

// ---- inequalities suite ----

template <class S>
void add_inequality_jobs(std::vector<Job>& jobs, const SuiteConfig& cfg) {
    const std::vector<Rational> big_orders{Rational(5, 4), Rational(3, 2), Rational(7, 4),
                                           Rational(5, 2)};
    const std::vector<std::pair<Rational, Rational>> holder_pool{
        {Rational(2), Rational(2)},     {Rational(2), Rational(2)},
        {Rational(2), Rational(2)},     {Rational(3), Rational(3, 2)},
        {Rational(3, 2), Rational(3)},  {Rational(4), Rational(4, 3)}};
    const std::vector<Rational> r_pool{Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    const std::vector<Rational> avg_pool{Rational(1, 2), Rational(3, 4), Rational(5, 4),
                                         Rational(3, 2), Rational(7, 4), Rational(5, 2)};
    char tag[24];
    for (long i = 0; i < cfg.inequality_cases; ++i) {
        std::snprintf(tag, sizeof tag, "%04ld", i);
        {
            const std::string key = std::string("inequalities/remainder_bound/") + tag;
            jobs.push_back({key, [key, orders = cfg.orders, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const FracOrder ord(rng.pick(orders));
                                const Rational a(rng.draw(0, 2));
                                const long ta = ord.m + rng.draw(0, 8);
                                FunctionFamily fam = random_family(rng, ta + 1);
                                fam.base = a;
                                const GridFn<S> f = generate<S>(fam);
                                return certificate_case(
                                    remainder_bound(f, ord, a + ta), family_str(fam));
                            }});
        }
        {
            const std::string key = std::string("inequalities/remainder_bound_p/") + tag;
            jobs.push_back({key, [key, big_orders, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const FracOrder ord(rng.pick(big_orders));
                                const long p = (ord.mu > 2 && rng.draw(0, 1)) ? 2 : 1;
                                const Rational a(rng.draw(0, 2));
                                const long ta = ord.m - p + rng.draw(0, 8);
                                FunctionFamily fam = random_family(rng, ta + p + 1);
                                fam.base = a;
                                const GridFn<S> f = generate<S>(fam);
                                return certificate_case(
                                    remainder_bound_p(f, ord, p, a + ta),
                                    family_str(fam) + ", p=" + std::to_string(p));
                            }});
        }
        {
            const std::string key = std::string("inequalities/ostrowski/") + tag;
            jobs.push_back({key, [key, orders = cfg.orders, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const FracOrder ord(rng.pick(orders));
                                const long p_max =
                                    std::min<long>(2, ceil_long(ord.mu) -
                                                          (is_integer(ord.mu) ? 0 : 1));
                                const long p = rng.draw(0, p_max);
                                const Rational a(rng.draw(0, 2));
                                const long ba = ord.m - p + 1 + rng.draw(0, 8);
                                const long len = ba + p + 1 + rng.draw(0, 2);
                                GridFn<S> f = banded_admissible<S>(ord.m, p + 1, len, a,
                                                                   rng.raw());
                                return certificate_case(
                                    ostrowski(f, ord, p, a + ba),
                                    "p=" + std::to_string(p) +
                                        ", mu=" + rational_str(ord.mu) +
                                        ", width=" + std::to_string(ba - (ord.m - p)));
                            }});
        }
        {
            const std::string key = std::string("inequalities/poincare/") + tag;
            jobs.push_back({key, [key, orders = cfg.orders, holder_pool, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const FracOrder ord(rng.pick(orders));
                                const long p_max =
                                    std::min<long>(2, ceil_long(ord.mu) -
                                                          (is_integer(ord.mu) ? 0 : 1));
                                const long p = rng.draw(0, p_max);
                                const auto& [g, d] = holder_pool[static_cast<std::size_t>(
                                    rng.draw(0, static_cast<long>(holder_pool.size()) - 1))];
                                const Rational a(rng.draw(0, 2));
                                const long ba = ord.m - p + rng.draw(0, 8);
                                const long len = ba + p + 1 + rng.draw(0, 2);
                                GridFn<S> f =
                                    banded_admissible<S>(ord.m, p, len, a, rng.raw());
                                return certificate_case(
                                    poincare(f, ord, p, HolderPair(g, d), a + ba),
                                    "p=" + std::to_string(p) + ", mu=" +
                                        rational_str(ord.mu) + ", gamma=" + rational_str(g));
                            }});
        }
        {
            const std::string key = std::string("inequalities/sobolev/") + tag;
            jobs.push_back({key, [key, orders = cfg.orders, holder_pool, r_pool,
                                  seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const FracOrder ord(rng.pick(orders));
                                const long p_max =
                                    std::min<long>(2, ceil_long(ord.mu) -
                                                          (is_integer(ord.mu) ? 0 : 1));
                                const long p = rng.draw(0, p_max);
                                const auto& [g, d] = holder_pool[static_cast<std::size_t>(
                                    rng.draw(0, static_cast<long>(holder_pool.size()) - 1))];
                                const Rational r = rng.pick(r_pool);
                                const Rational a(rng.draw(0, 2));
                                const long ba = ord.m - p + rng.draw(0, 8);
                                const long len = ba + p + 1 + rng.draw(0, 2);
                                GridFn<S> f =
                                    banded_admissible<S>(ord.m, p, len, a, rng.raw());
                                return certificate_case(
                                    sobolev(f, ord, p, HolderPair(g, d), r, a + ba),
                                    "p=" + std::to_string(p) + ", mu=" +
                                        rational_str(ord.mu) + ", r=" + rational_str(r));
                            }});
        }
        {
            const std::string key = std::string("inequalities/avg_sobolev/") + tag;
            jobs.push_back({key, [key, avg_pool, seed = cfg.seed] {
                                SeededRng rng(case_seed(seed, key));
                                const long k = 1 + rng.draw(0, 2);
                                AvgSobolevSpec<S> spec;
                                long lo = 0;
                                for (long j = 0; j < k; ++j) {
                                    const long hi = static_cast<long>(avg_pool.size()) - (k - j);
                                    const long v = rng.draw(lo, hi);
                                    spec.orders.emplace_back(
                                        avg_pool[static_cast<std::size_t>(v)]);
                                    lo = v + 1;
                                }
                                spec.r = rng.draw(0, 3) == 3 ? Rational(3) : Rational(2);
                                const long m_top = spec.orders.back().m;
                                const Rational a(rng.draw(0, 2));
                                const long ba = m_top + rng.draw(0, 6);
                                GridFn<S> f =
                                    banded_admissible<S>(m_top, 0, ba + 1, a, rng.raw());
                                std::string detail = "k=" + std::to_string(k) +
                                                     ", r=" + rational_str(spec.r) + ", orders=";
                                for (long l = 0; l < k; ++l) {
                                    if (l) detail += '|';
                                    detail += rational_str(
                                        spec.orders[static_cast<std::size_t>(l)].mu);
                                }
                                for (long l = 0; l < k; ++l) {
                                    const FracOrder& ord =
                                        spec.orders[static_cast<std::size_t>(l)];
                                    const long s_hi = ba - ord.m;
                                    std::vector<S> w;
                                    for (long s = 0; s <= s_hi; ++s) {
                                        Rational wv(1 + rng.draw(0, 4));
                                        if (rng.draw(0, 3) == 0) wv = Rational(1) / wv;
                                        w.push_back(scalar_from<S>(wv));
                                    }
                                    spec.weights.emplace_back(a + ord.nu, std::move(w));
                                }
                                return certificate_case(avg_sobolev(f, spec, a + ba), detail);
                            }});
        }
    }
}

// ---- backend agreement suite ----

void add_agreement_jobs(std::vector<Job>& jobs, const SuiteConfig& cfg) {
    for (const Rational& mu : cfg.orders) {
        const std::string key = "agreement/kernel/mu=" + rational_str(mu);
        jobs.push_back({key, [mu] {
                            const std::vector<Rational> ex = kernel_coeffs<Rational>(mu, 64);
                            const std::vector<double> fl = kernel_coeffs<double>(mu, 64);
                            double worst = 0;
                            for (std::size_t n = 0; n < ex.size(); ++n)
                                worst = std::max(worst, rel_diff(to_double(ex[n]), fl[n]));
                            return agreement_case(worst,
                                                  "kernel coefficients, 64 terms, mu=" +
                                                      rational_str(mu));
                        }});
    }
    {
        const std::string key = "agreement/binom";
        jobs.push_back({key, [key, seed = cfg.seed] {
                            SeededRng rng(case_seed(seed, key));
                            const std::vector<Rational> alphas{
                                Rational(1, 2), Rational(-1, 2), Rational(3, 4),
                                Rational(5, 4), Rational(-3, 2), Rational(3)};
                            double worst = 0;
                            for (int i = 0; i < 100; ++i) {
                                const Rational alpha = alphas[static_cast<std::size_t>(
                                    rng.draw(0, static_cast<long>(alphas.size()) - 1))];
                                const Rational x = alpha + rng.draw(0, 24);
                                worst = std::max(
                                    worst,
                                    rel_diff(to_double(binom_gamma<Rational>(x, alpha)),
                                             binom_gamma<double>(x, alpha)));
                            }
                            return agreement_case(worst, "generalized binomial, 100 draws");
                        }});
    }
    std::vector<Rational> sum_orders = cfg.orders;
    sum_orders.emplace_back(1);
    sum_orders.emplace_back(2);
    char tag[24];
    for (long i = 0; i < 100; ++i) {
        std::snprintf(tag, sizeof tag, "%03ld", i);
        const std::string key = std::string("agreement/oracle/") + tag;
        jobs.push_back({key, [key, sum_orders, seed = cfg.seed] {
                            SeededRng rng(case_seed(seed, key));
                            const FunctionFamily fam = random_family(rng, 4);
                            const Rational nu = rng.pick(sum_orders);
                            const long N = rng.draw(0, fam.length - 1);
                            const Rational t = fam.base + nu + N;
                            const GridFn<Rational> fr = generate<Rational>(fam);
                            const GridFn<double> fd = generate<double>(fam);
                            const double via_exact =
                                to_double(fractional_sum(fr, nu).eval(t));
                            const double via_float = fractional_sum(fd, nu).eval(t);
                            const double via_oracle = oracle_fracsum(fd, nu, t);
                            const double worst = std::max({rel_diff(via_exact, via_oracle),
                                                           rel_diff(via_float, via_oracle),
                                                           rel_diff(via_exact, via_float)});
                            return agreement_case(worst, family_str(fam) + ", nu=" +
                                                             rational_str(nu) +
                                                             ", t=" + rational_str(t));
                        }});
    }
}

template <class S>
void build_jobs(Suite s, const SuiteConfig& cfg, std::vector<Job>& jobs) {
    switch (s) {
        case Suite::taylor: add_taylor_jobs<S>(jobs, cfg); break;
        case Suite::identities: add_identity_jobs<S>(jobs, cfg); break;
        case Suite::inequalities: add_inequality_jobs<S>(jobs, cfg); break;
        case Suite::backend_agreement: add_agreement_jobs(jobs, cfg); break;
        case Suite::all:
            add_taylor_jobs<S>(jobs, cfg);
            add_identity_jobs<S>(jobs, cfg);
            add_inequality_jobs<S>(jobs, cfg);
            add_agreement_jobs(jobs, cfg);
            break;
    }
}

}  // namespace

VerificationReport run_suite(Suite s, const SuiteConfig& cfg) {
    std::vector<Job> jobs;
    if (cfg.backend == Backend::exact)
        build_jobs<Rational>(s, cfg, jobs);
    else
        build_jobs<double>(s, cfg, jobs);
    VerificationReport rep;
    rep.suite = suite_name(s);
    rep.config = cfg;
    rep.cases = run_jobs(jobs, cfg.jobs);
    rep.pass = true;
    for (const CaseResult& c : rep.cases) {
        rep.pass = rep.pass && c.pass;
        if (c.kind == "residual" || c.kind == "agreement")
            rep.max_abs_residual = std::max(rep.max_abs_residual, c.max_abs_residual);
        if (c.slack) rep.min_slack = rep.min_slack ? std::min(*rep.min_slack, *c.slack) : *c.slack;
    }
    return rep;
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    nlohmann::ordered_json cj;
    cj["backend"] = backend_name(config.backend);
    cj["seed"] = std::to_string(config.seed);
    cj["rng"] = "mt19937_64-raw-mod";
    nlohmann::ordered_json orders = nlohmann::ordered_json::array();
    for (const Rational& mu : config.orders) orders.push_back(rational_str(mu));
    cj["orders"] = std::move(orders);
    cj["taylor_length"] = config.taylor_length;
    cj["cases"] = config.cases;
    cj["inequality_cases"] = config.inequality_cases;
    cj["perturb_kernel"] = rational_str(config.perturb_kernel);
    cj["jobs"] = config.jobs;
    j["config"] = std::move(cj);
    nlohmann::ordered_json summary;
    summary["total"] = cases.size();
    long failed = 0;
    for (const CaseResult& c : cases)
        if (!c.pass) ++failed;
    summary["failed"] = failed;
    summary["max_abs_residual"] = max_abs_residual;
    if (min_slack)
        summary["min_slack"] = *min_slack;
    else
        summary["min_slack"] = nullptr;
    summary["verdict"] = pass ? "pass" : "fail";
    j["summary"] = std::move(summary);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CaseResult& c : cases) {
        nlohmann::ordered_json e;
        e["key"] = c.key;
        e["kind"] = c.kind;
        e["pass"] = c.pass;
        if (c.kind == "residual" || c.kind == "agreement")
            e["max_abs_residual"] = c.max_abs_residual;
        if (c.slack) e["slack"] = *c.slack;
        e["detail"] = c.detail;
        arr.push_back(std::move(e));
    }
    j["cases"] = std::move(arr);
    return j.dump(2);
}

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') out += "\"\"";
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

std::string VerificationReport::to_csv() const {
    std::ostringstream out;
    out << "key,kind,pass,max_abs_residual,slack,detail\n";
    for (const CaseResult& c : cases) {
        out << c.key << ',' << c.kind << ',' << (c.pass ? "true" : "false") << ',';
        if (c.kind == "residual" || c.kind == "agreement") out << double_str(c.max_abs_residual);
        out << ',';
        if (c.slack) out << double_str(*c.slack);
        out << ',' << csv_quote(c.detail) << '\n';
    }
    return out.str();
}

}  // namespace fdcalc
