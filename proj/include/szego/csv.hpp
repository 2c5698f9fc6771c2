#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "szego/common.hpp"

namespace szego::csv {

/// Shortest text that round-trips a double (17 significant digits).
inline std::string format(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format(long x) { return std::to_string(x); }
inline std::string format(int x) { return std::to_string(x); }
inline std::string format(std::size_t x) { return std::to_string(x); }
inline std::string format(const std::string& x) { return x; }
inline std::string format(const char* x) { return x; }

class Writer {
public:
    explicit Writer(std::ostream& os) : os_(os) {}

    template <typename... Ts>
    void row(const Ts&... fields) {
        bool first = true;
        ((os_ << (first ? "" : ",") << format(fields), first = false), ...);
        os_ << '\n';
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) os_ << (i ? "," : "") << fields[i];
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

inline std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep)) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        while (!field.empty() && field.front() == ' ') field.erase(field.begin());
        out.push_back(field);
    }
    return out;
}

inline double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "not a number: '" + text + "'");
    }
    if (used != text.size()) fail(ErrorKind::ParseError, "not a number: '" + text + "'");
    return v;
}

}  // namespace szego::csv
