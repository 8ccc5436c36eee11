// Command-line front end: compute runs one operator over a CSV grid or a
// generated family, verify runs the suite harness, report reshapes a saved
// verification report.  Exit codes: 0 success (verify: all cases passed),
// 1 verify found failures, 2 usage or domain errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "fdcalc/grid_io.hpp"
#include "fdcalc/harness.hpp"
#include "fdcalc/operators.hpp"

namespace {

using namespace fdcalc;

Backend parse_backend(const std::string& name) {
    if (name == "exact") return Backend::exact;
    if (name == "f64") return Backend::f64;
    throw ConfigError("unknown backend '" + name + "' (expected exact or f64)");
}

struct ComputeArgs {
    std::string op;
    std::string input;
    std::string family;
    std::string backend = "exact";
    std::string out;
    std::string format = "csv";
    std::string nu;
    std::string mu;
    long m = 1;
    std::string a = "0";
    bool a_given = false;
    long len = 16;
    long degree = 2;
    std::string ratio = "2";
    long range = 9;
    long vanish = 1;
    std::uint64_t seed = 0;
};

FunctionFamily family_from_args(const ComputeArgs& args) {
    FunctionFamily fam;
    if (args.family == "poly") {
        fam.kind = FamilyKind::polynomial;
        fam.degree = args.degree;
    } else if (args.family == "geom") {
        fam.kind = FamilyKind::geometric;
        fam.ratio = parse_number(args.ratio);
    } else if (args.family == "randint") {
        fam.kind = FamilyKind::random_integer;
    } else if (args.family == "admissible") {
        fam.kind = FamilyKind::admissible_tail;
        fam.vanish = args.vanish;
    } else {
        throw ConfigError("unknown family '" + args.family +
                          "' (expected poly, geom, randint, admissible)");
    }
    fam.range = args.range;
    fam.base = parse_number(args.a);
    fam.length = args.len;
    fam.seed = args.seed;
    return fam;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open '" + out_path + "' for writing");
    out << text;
}

template <class S>
int run_compute(const ComputeArgs& args) {
    GridFn<S> f = [&] {
        if (!args.input.empty()) {
            std::ifstream in(args.input);
            if (!in) throw ConfigError("cannot open '" + args.input + "'");
            GridFn<S> g = read_grid_csv<S>(in);
            if (args.a_given && g.base() != parse_number(args.a))
                throw DomainError("--a gives base " + args.a + " but the input grid starts at " +
                                  rational_str(g.base()));
            return g;
        }
        return generate<S>(family_from_args(args));
    }();

    GridFn<S> result = f;
    std::string order_text;
    if (args.op == "fracsum") {
        if (args.nu.empty()) throw ConfigError("--op fracsum requires --nu");
        const Rational nu = parse_number(args.nu);
        order_text = rational_str(nu);
        result = fractional_sum(f, nu);
    } else if (args.op == "caputo" || args.op == "rl") {
        if (args.mu.empty()) throw ConfigError("--op " + args.op + " requires --mu");
        const FracOrder ord(parse_number(args.mu));
        order_text = rational_str(ord.mu);
        result = args.op == "caputo" ? caputo_difference(f, ord) : rl_difference(f, ord);
    } else if (args.op == "diff") {
        order_text = std::to_string(args.m);
        result = forward_difference(f, args.m);
    } else {
        throw ConfigError("unknown op '" + args.op + "' (expected fracsum, caputo, rl, diff)");
    }

    if (args.format == "csv") {
        std::ostringstream out;
        write_grid_csv(out, result);
        emit(out.str(), args.out);
    } else if (args.format == "json") {
        nlohmann::ordered_json j;
        j["op"] = args.op;
        j["order"] = order_text;
        j["backend"] = args.backend;
        j["base"] = rational_str(result.base());
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (long i = 0; i < result.size(); ++i) {
            nlohmann::ordered_json e;
            e["t"] = rational_str(result.point(i));
            if constexpr (is_exact_backend_v<S>)
                e["value"] = rational_str(result[i]);
            else
                e["value"] = result[i];
            pts.push_back(std::move(e));
        }
        j["points"] = std::move(pts);
        emit(j.dump(2) + "\n", args.out);
    } else {
        throw ConfigError("unknown format '" + args.format + "' (expected csv or json)");
    }
    return 0;
}

int run_report(const std::string& in_path, const std::string& format,
               const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw ConfigError("cannot open '" + in_path + "'");
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed report: " + std::string(e.what()));
    }
    if (!j.is_object() || !j.contains("cases") || !j["cases"].is_array() ||
        !j.contains("summary"))
        throw ConfigError("malformed report: missing cases or summary");
    if (format == "json") {
        emit(j.dump(2) + "\n", out_path);
        return 0;
    }
    if (format != "csv")
        throw ConfigError("unknown format '" + format + "' (expected csv or json)");
    std::ostringstream out;
    out << "key,kind,pass,max_abs_residual,slack,detail\n";
    for (const auto& c : j["cases"]) {
        if (!c.is_object() || !c.contains("key") || !c.contains("kind") || !c.contains("pass"))
            throw ConfigError("malformed report: bad case entry");
        out << c["key"].get<std::string>() << ',' << c["kind"].get<std::string>() << ','
            << (c["pass"].get<bool>() ? "true" : "false") << ',';
        if (c.contains("max_abs_residual")) out << double_str(c["max_abs_residual"].get<double>());
        out << ',';
        if (c.contains("slack")) out << double_str(c["slack"].get<double>());
        out << ',';
        std::string detail = c.value("detail", std::string());
        std::string quoted = "\"";
        for (const char ch : detail) {
            if (ch == '"') quoted += "\"\"";
            quoted += ch;
        }
        quoted += '"';
        out << quoted << '\n';
    }
    emit(out.str(), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete fractional calculus toolkit"};
    app.require_subcommand(1);

    ComputeArgs cargs;
    CLI::App* compute = app.add_subcommand("compute", "apply one operator to a grid function");
    compute->add_option("--op", cargs.op, "fracsum | caputo | rl | diff")->required();
    auto* input_opt = compute->add_option("--input", cargs.input, "input CSV (header t,value)");
    auto* family_opt =
        compute->add_option("--family", cargs.family, "poly | geom | randint | admissible");
    input_opt->excludes(family_opt);
    family_opt->excludes(input_opt);
    compute->add_option("--nu", cargs.nu, "fractional sum order (fracsum)");
    compute->add_option("--mu", cargs.mu, "fractional difference order (caputo, rl)");
    compute->add_option("--m", cargs.m, "integer difference order (diff)");
    auto* a_opt = compute->add_option("--a", cargs.a, "grid base (family) or base check (input)");
    compute->add_option("--len", cargs.len, "family length");
    compute->add_option("--degree", cargs.degree, "poly family degree");
    compute->add_option("--ratio", cargs.ratio, "geom family ratio");
    compute->add_option("--range", cargs.range, "drawn-integer magnitude bound");
    compute->add_option("--vanish", cargs.vanish, "admissible family vanishing count");
    compute->add_option("--seed", cargs.seed, "family seed");
    compute->add_option("--backend", cargs.backend, "exact | f64");
    compute->add_option("--out", cargs.out, "output path (default stdout)");
    compute->add_option("--format", cargs.format, "csv | json");

    struct {
        std::string suite = "all";
        std::string backend = "exact";
        std::uint64_t seed = 42;
        long instances = -1;
        long taylor_len = 24;
        std::string perturb = "0";
        int jobs = 1;
        std::string report;
        std::string format = "json";
    } vargs;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", vargs.suite,
                       "taylor | identities | inequalities | backend_agreement | all");
    verify->add_option("--backend", vargs.backend, "exact | f64");
    verify->add_option("--seed", vargs.seed, "suite seed");
    verify->add_option("--instances", vargs.instances,
                       "seeded instances per identity and per inequality");
    verify->add_option("--taylor-len", vargs.taylor_len, "grid length for the Taylor sweeps");
    verify->add_option("--perturb", vargs.perturb,
                       "corrupt remainder-kernel coefficient 1 by this amount (negative control)");
    verify->add_option("--jobs", vargs.jobs, "worker threads");
    verify->add_option("--report", vargs.report, "write the full report here");
    verify->add_option("--format", vargs.format, "report format: json | csv");

    struct {
        std::string in;
        std::string format = "csv";
        std::string out;
    } rargs;
    CLI::App* report = app.add_subcommand("report", "reshape a saved verification report");
    report->add_option("--in", rargs.in, "report JSON written by verify")->required();
    report->add_option("--format", rargs.format, "csv | json");
    report->add_option("--out", rargs.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (compute->parsed()) {
            cargs.a_given = a_opt->count() > 0;
            if (cargs.input.empty() && cargs.family.empty())
                throw ConfigError("compute needs either --input or --family");
            return parse_backend(cargs.backend) == Backend::exact ? run_compute<Rational>(cargs)
                                                                  : run_compute<double>(cargs);
        }
        if (verify->parsed()) {
            SuiteConfig cfg;
            cfg.backend = parse_backend(vargs.backend);
            cfg.seed = vargs.seed;
            if (vargs.instances >= 0) {
                cfg.cases = vargs.instances;
                cfg.inequality_cases = vargs.instances;
            }
            cfg.taylor_length = vargs.taylor_len;
            cfg.perturb_kernel = parse_number(vargs.perturb);
            cfg.jobs = vargs.jobs;
            const VerificationReport rep = run_suite(parse_suite(vargs.suite), cfg);
            if (!vargs.report.empty()) {
                if (vargs.format == "json")
                    emit(rep.to_json() + "\n", vargs.report);
                else if (vargs.format == "csv")
                    emit(rep.to_csv(), vargs.report);
                else
                    throw ConfigError("unknown format '" + vargs.format +
                                      "' (expected json or csv)");
            }
            long failed = 0;
            for (const CaseResult& c : rep.cases)
                if (!c.pass) ++failed;
            std::cout << "suite=" << rep.suite << " backend=" << backend_name(cfg.backend)
                      << " cases=" << rep.cases.size() << " failed=" << failed
                      << " verdict=" << (rep.pass ? "pass" : "fail") << "\n";
            return rep.pass ? 0 : 1;
        }
        return run_report(rargs.in, rargs.format, rargs.out);
    } catch (const fdcalc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
