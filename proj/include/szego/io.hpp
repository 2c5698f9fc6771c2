#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "szego/common.hpp"
#include "szego/csv.hpp"
#include "szego/hankel.hpp"
#include "szego/hardy.hpp"
#include "szego/spectral_data.hpp"

namespace szego::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ParseError, what + ": " + e.what());
    }
}

namespace detail {

inline double number(const json& j, const std::string& what) {
    if (!j.is_number()) fail(ErrorKind::ParseError, what + " must be a number");
    return j.get<double>();
}

inline void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& what) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) fail(ErrorKind::ParseError, what + ": unknown key '" + it.key() + "'");
    }
}

}  // namespace detail

//
// HardyFunction: {"coeffs": [[re, im], ...], "declared_radius": r}
//
inline json to_json(const HardyFunction& u) {
    json c = json::array();
    for (const auto& v : u.coeffs()) c.push_back({v.real(), v.imag()});
    return {{"coeffs", c}, {"declared_radius", u.declared_radius()}};
}

inline HardyFunction hardy_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs")) fail(ErrorKind::ParseError, "HardyFunction: expected an object with 'coeffs'");
    detail::only_keys(j, {"coeffs", "declared_radius"}, "HardyFunction");
    const auto& c = j.at("coeffs");
    if (!c.is_array()) fail(ErrorKind::ParseError, "HardyFunction: 'coeffs' must be an array");
    std::vector<cplx> coeffs;
    for (const auto& e : c) {
        if (!e.is_array() || e.size() != 2) fail(ErrorKind::ParseError, "HardyFunction: each coefficient is [re, im]");
        coeffs.emplace_back(detail::number(e[0], "re"), detail::number(e[1], "im"));
    }
    const double r = j.contains("declared_radius") ? detail::number(j.at("declared_radius"), "declared_radius") : 1.0;
    return HardyFunction(std::move(coeffs), r);
}

/// CSV with header n,re,im; rows may come in any order, missing n are zero.
inline std::string hardy_to_csv(const HardyFunction& u) {
    std::ostringstream os;
    csv::Writer w(os);
    w.row("n", "re", "im");
    for (std::size_t n = 0; n < u.size(); ++n) w.row(n, u[static_cast<long>(n)].real(), u[static_cast<long>(n)].imag());
    return os.str();
}

inline HardyFunction hardy_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) fail(ErrorKind::ParseError, "coefficient CSV is empty");
    const auto header = csv::split(line);
    if (header != std::vector<std::string>{"n", "re", "im"})
        fail(ErrorKind::ParseError, "coefficient CSV header must be n,re,im");
    std::vector<cplx> coeffs;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
        const auto f = csv::split(line);
        if (f.size() != 3) fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 3 fields");
        const double nd = csv::parse_double(f[0]);
        if (nd < 0 || nd != std::floor(nd) || nd > 1e8)
            fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad mode index");
        const auto n = static_cast<std::size_t>(nd);
        if (coeffs.size() <= n) coeffs.resize(n + 1, cplx{0.0});
        coeffs[n] = {csv::parse_double(f[1]), csv::parse_double(f[2])};
    }
    if (coeffs.empty()) fail(ErrorKind::ParseError, "coefficient CSV has no rows");
    return HardyFunction(std::move(coeffs));
}

/// Picks the format from the first non-blank character.
inline HardyFunction load_hardy(const std::string& path) {
    const std::string text = read_file(path);
    const auto pos = text.find_first_not_of(" \r\n\t");
    if (pos != std::string::npos && text[pos] == '{') return hardy_from_json(parse_json(text, path));
    return hardy_from_csv(text);
}

//
// SpectralData: {"pairs": [{"s": ..., "psi": ...}, ...]}
//
inline json to_json(const SpectralData& d) {
    json pairs = json::array();
    for (const auto& p : d.pairs()) pairs.push_back({{"s", p.s}, {"psi", p.psi}});
    return {{"pairs", pairs}};
}

inline SpectralData spectral_from_json(const json& j) {
    if (!j.is_object() || !j.contains("pairs")) fail(ErrorKind::ParseError, "spectral data: expected an object with 'pairs'");
    detail::only_keys(j, {"pairs"}, "spectral data");
    const auto& arr = j.at("pairs");
    if (!arr.is_array()) fail(ErrorKind::ParseError, "spectral data: 'pairs' must be an array");
    std::vector<SpectralPair> pairs;
    for (const auto& e : arr) {
        if (!e.is_object() || !e.contains("s") || !e.contains("psi"))
            fail(ErrorKind::ParseError, "spectral data: each pair needs 's' and 'psi'");
        detail::only_keys(e, {"s", "psi"}, "spectral pair");
        pairs.push_back({detail::number(e.at("s"), "s"), detail::number(e.at("psi"), "psi")});
    }
    return SpectralData(std::move(pairs));
}

inline SpectralData load_spectral(const std::string& path) {
    return spectral_from_json(parse_json(read_file(path), path));
}

/// CSV with header index,kind,value; index is 1-based within each kind.
inline std::string spectrum_to_csv(const HankelSpectrum& spec) {
    std::ostringstream os;
    csv::Writer w(os);
    w.row("index", "kind", "value");
    for (std::size_t j = 0; j < spec.rho.size(); ++j) w.row(j + 1, "rho", spec.rho[j]);
    for (std::size_t k = 0; k < spec.sigma.size(); ++k) w.row(k + 1, "sigma", spec.sigma[k]);
    return os.str();
}

}  // namespace szego::io
