#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "fdcalc/grid.hpp"

namespace fdcalc {

// CSV layout: header "t,value", one sample per row, consecutive rows one
// lattice step apart. Abscissae are exact rational text in both backends so
// that a file round-trips without drift; values are rational text in the
// exact backend and %.17g in the float backend. parse errors carry the
// 1-based line number.

namespace detail {

template <class S>
S parse_csv_value(const std::string& field, long line);

template <>
inline Rational parse_csv_value<Rational>(const std::string& field, long line) {
    try {
        return parse_rational(field);
    } catch (const DomainError&) {
        throw DomainError("line " + std::to_string(line) + ": value '" + field +
                          "' is not rational (decimal values are accepted only in the float "
                          "backend)");
    }
}

template <>
inline double parse_csv_value<double>(const std::string& field, long line) {
    try {
        if (field.find('/') != std::string::npos) return to_double(parse_rational(field));
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw DomainError("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw DomainError("line " + std::to_string(line) + ": value '" + field +
                          "' is not a number");
    }
}

inline bool next_csv_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

}  // namespace detail

template <class S>
GridFn<S> read_grid_csv(std::istream& in) {
    std::string line;
    long lineno = 0;
    if (!detail::next_csv_line(in, line, lineno) || line != "t,value")
        throw DomainError("expected header 't,value' on the first line");
    Rational base = 0;
    std::vector<S> values;
    while (detail::next_csv_line(in, line, lineno)) {
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw DomainError("line " + std::to_string(lineno) + ": expected 't,value' row");
        const std::string tf = line.substr(0, comma);
        const std::string vf = line.substr(comma + 1);
        Rational t;
        try {
            t = parse_number(tf);
        } catch (const DomainError&) {
            throw DomainError("line " + std::to_string(lineno) + ": bad abscissa '" + tf + "'");
        }
        if (values.empty())
            base = t;
        else if (t != base + static_cast<long>(values.size()))
            throw DomainError("line " + std::to_string(lineno) + ": abscissa " + rational_str(t) +
                              " breaks the unit step (expected " +
                              rational_str(base + static_cast<long>(values.size())) + ")");
        values.push_back(detail::parse_csv_value<S>(vf, lineno));
    }
    if (values.empty()) throw EmptyDomain("CSV contains no samples");
    return GridFn<S>(base, std::move(values));
}

template <class S>
void write_grid_csv(std::ostream& out, const GridFn<S>& f) {
    out << "t,value\n";
    for (long i = 0; i < f.size(); ++i)
        out << rational_str(f.point(i)) << ',' << scalar_str(f[i]) << '\n';
}

}  // namespace fdcalc
