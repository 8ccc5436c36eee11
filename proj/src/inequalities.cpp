#include "fdcalc/inequalities.hpp"

#include <json.hpp>

namespace fdcalc {

HolderPair::HolderPair(const Rational& g, const Rational& d) : gamma(g), delta(d) {
    if (g <= 1 || d <= 1)
        throw HolderError("conjugate exponents must exceed 1, got (" + rational_str(g) + ", " +
                          rational_str(d) + ")");
    if (Rational(1) / g + Rational(1) / d != 1)
        throw HolderError("exponents are not conjugate: 1/" + rational_str(g) + " + 1/" +
                          rational_str(d) + " != 1");
}

namespace {

// Exact values serialize as rational text, float values as JSON numbers; a
// reader can tell which it got from the "exact" flag.
nlohmann::ordered_json scalar_json(const Scalar& s) {
    if (const auto* r = std::get_if<Rational>(&s)) return rational_str(*r);
    return std::get<double>(s);
}

nlohmann::ordered_json object_from(const KeyValues& kv) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto& [k, v] : kv) o[k] = v;
    return o;
}

}  // namespace

std::string certificate_json(const BoundCertificate& c) {
    nlohmann::ordered_json j;
    j["inequality"] = c.inequality;
    j["params"] = object_from(c.params);
    j["lhs"] = scalar_json(c.lhs);
    j["rhs"] = scalar_json(c.rhs);
    j["slack"] = scalar_json(c.slack);
    j["exact"] = c.exact;
    j["witness"] = object_from(c.witness);
    j["pass"] = c.pass;
    return j.dump(2);
}

}  // namespace fdcalc
