#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fdcalc/inequalities.hpp"

namespace fdcalc {

// Deterministic test-input generators plus the suite runner. Everything here
// is seed-addressed: the same (seed, key) always produces the same case on
// every platform, which is what makes a failing report reproducible.

enum class FamilyKind { polynomial, geometric, random_integer, admissible_tail };

struct FunctionFamily {
    FamilyKind kind = FamilyKind::polynomial;
    long degree = 0;               // polynomial: degree of drawn coefficients
    std::vector<Rational> coeffs;  // polynomial: explicit coefficients (win over draws)
    Rational ratio = 2;            // geometric
    long range = 9;                // magnitude bound for drawn integers
    long vanish = 1;               // admissible_tail: differences 0..vanish-1 vanish at base
    Rational base = 0;
    long length = 8;
    std::uint64_t seed = 0;
};

std::string family_str(const FunctionFamily& fam);

// Raw mt19937_64 output reduced by modulo: the engine's sequence is pinned by
// the standard, and skipping the distribution classes keeps the draws
// identical across standard libraries.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t raw() { return eng_(); }
    long draw(long lo, long hi);
    const Rational& pick(const std::vector<Rational>& pool);

private:
    std::mt19937_64 eng_;
};

// Sample values are always drawn in exact arithmetic and lowered afterwards,
// so both backends see the same inputs.
std::vector<Rational> family_values(const FunctionFamily& fam);

template <class S>
GridFn<S> generate(const FunctionFamily& fam) {
    const std::vector<Rational> v = family_values(fam);
    std::vector<S> out;
    out.reserve(v.size());
    for (const Rational& r : v) out.push_back(scalar_from<S>(r));
    return GridFn<S>(fam.base, std::move(out));
}

// Brute-force fractional sum at one output point: per-term falling factorials
// over log-gamma divided by Gamma(nu), sharing no code with the incremental
// kernel it cross-checks.
template <class S>
double oracle_fracsum(const GridFn<S>& f, const Rational& nu, const Rational& t) {
    if (nu <= 0)
        throw DomainError("fractional sum order must be positive, got " + rational_str(nu));
    const Rational off = t - (f.base() + nu);
    if (!is_integer(off))
        throw DomainError("point " + rational_str(t) + " is not on the output lattice base " +
                          rational_str(f.base() + nu));
    const long N = integer_value(off);
    if (N < 0 || N >= f.size())
        throw DomainError("point " + rational_str(t) + " is outside the output range");
    const double gamma_nu = std::exp(std::lgamma(to_double(nu)));
    double acc = 0;
    for (long j = 0; j <= N; ++j)
        acc += falling_factorial(to_double(t - f.point(j) - 1), to_double(nu) - 1.0) *
               scalar_to_double<S>(f[j]) / gamma_nu;
    return acc;
}

enum class Suite { taylor, identities, inequalities, backend_agreement, all };

Suite parse_suite(const std::string& name);
const char* suite_name(Suite s);

std::vector<Rational> default_orders();

struct SuiteConfig {
    Backend backend = Backend::exact;
    std::uint64_t seed = 42;
    std::vector<Rational> orders = default_orders();
    long taylor_length = 24;      // grid length for the Taylor sweeps
    long cases = 100;             // seeded instances per identity
    long inequality_cases = 500;  // seeded instances per inequality
    Rational perturb_kernel = 0;  // nonzero: corrupt remainder-kernel coefficient 1
    int jobs = 1;
};

// Residual cases in the float backend pass at |lhs - rhs| <=
// 1e-9 * max(1, |lhs|, |rhs|); the exact backend passes only at literal zero.
inline constexpr double kFloatResidualTol = 1e-9;
// Closed-form and telescope comparisons in float are pure roundoff.
inline constexpr double kClosedFormTol = 1e-12;
// Exact and float backends, and operator versus oracle, must agree to this
// relative tolerance.
inline constexpr double kAgreementTol = 1e-10;

struct CaseResult {
    std::string key;
    std::string kind;  // "residual" | "certificate" | "agreement" | "error"
    bool pass = false;
    // Residual and agreement cases. Exact backend: |lhs - rhs| as a double
    // (identically 0 on pass). Float backend and agreement checks: the
    // scale-normalized residual |lhs - rhs| / max(1, |lhs|, |rhs|), i.e. the
    // quantity the tolerances above bound directly.
    double max_abs_residual = 0;
    std::optional<double> slack;  // certificate cases
    std::string detail;
};

struct VerificationReport {
    std::string suite;
    SuiteConfig config;
    std::vector<CaseResult> cases;
    bool pass = false;
    double max_abs_residual = 0;
    std::optional<double> min_slack;

    std::string to_json() const;
    std::string to_csv() const;
};

VerificationReport run_suite(Suite s, const SuiteConfig& cfg);

}  // namespace fdcalc
