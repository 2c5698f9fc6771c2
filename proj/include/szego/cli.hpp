#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "szego/common.hpp"
#include "szego/csv.hpp"
#include "szego/f_gamma.hpp"
#include "szego/flow.hpp"
#include "szego/geometric.hpp"
#include "szego/hankel.hpp"
#include "szego/inverse.hpp"
#include "szego/io.hpp"
#include "szego/winding.hpp"

namespace szego::cli {

enum class Command { reconstruct, spectrum, flow, flow_compare, certify, geometric, c1, sweep };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::reconstruct: return "reconstruct";
        case Command::spectrum: return "spectrum";
        case Command::flow: return "flow";
        case Command::flow_compare: return "flow-compare";
        case Command::certify: return "certify";
        case Command::geometric: return "geometric";
        case Command::c1: return "c1";
        case Command::sweep: return "sweep";
    }
    return "?";
}

inline Command parse_command(const std::string& name) {
    for (auto c : {Command::reconstruct, Command::spectrum, Command::flow, Command::flow_compare, Command::certify,
                   Command::geometric, Command::c1, Command::sweep})
        if (name == to_string(c)) return c;
    fail(ErrorKind::ParseError, "unknown command '" + name + "'");
}

struct RunConfig {
    Command command = Command::c1;
    std::string data;     // spectral data (JSON)
    std::string coeffs;   // Hardy coefficients (CSV or JSON)
    std::string out;      // output file; empty means stdout
    std::string out_dir = ".";
    std::optional<std::size_t> M;
    std::size_t N = 10;
    std::optional<std::size_t> N_max;
    double T = 1.0;
    double dt = 1e-3;
    std::size_t samples = 10;
    std::optional<double> h, theta, r;
    cplx z{0.0};
    std::string sweep_kind;
    std::vector<double> grid;
    std::map<std::string, double> tol_overrides;
};

inline void set_tolerance(Tolerances& tol, const std::string& key, double value) {
    static const std::map<std::string, double Tolerances::*> fields{
        {"positive", &Tolerances::positive},   {"rank", &Tolerances::rank},
        {"eigen_gap", &Tolerances::eigen_gap}, {"denominator", &Tolerances::denominator},
        {"condition", &Tolerances::condition}, {"pole", &Tolerances::pole},
        {"zero", &Tolerances::zero},           {"tail", &Tolerances::tail},
        {"sample_consistency", &Tolerances::sample_consistency},
        {"series", &Tolerances::series}};
    const auto it = fields.find(key);
    if (it == fields.end()) fail(ErrorKind::ParseError, "unknown tolerance '" + key + "'");
    if (!(std::isfinite(value) && value > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance " + key + " must be positive");
    tol.*(it->second) = value;
}

inline Tolerances tolerances(const RunConfig& cfg) {
    Tolerances tol;
    for (const auto& [k, v] : cfg.tol_overrides) set_tolerance(tol, k, v);
    return tol;
}

/// "key=value" as accepted by --tol.
inline std::pair<std::string, double> parse_tolerance(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(ErrorKind::ParseError, "tolerance override must be key=value, got '" + text + "'");
    return {text.substr(0, eq), csv::parse_double(text.substr(eq + 1))};
}

/// "re,im" or a single real number.
inline cplx parse_complex(const std::string& text) {
    const auto f = csv::split(text);
    if (f.size() == 1) return {csv::parse_double(f[0]), 0.0};
    if (f.size() == 2) return {csv::parse_double(f[0]), csv::parse_double(f[1])};
    fail(ErrorKind::ParseError, "complex value must be RE,IM, got '" + text + "'");
}

/// "a:b:step" (inclusive, with a small slack at b) or a comma list; empty text is an empty grid.
inline std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find_first_not_of(" ") == std::string::npos) return out;
    if (text.find(':') != std::string::npos) {
        const auto f = csv::split(text, ':');
        if (f.size() != 3) fail(ErrorKind::ParseError, "range grid must be start:stop:step");
        const double a = csv::parse_double(f[0]), b = csv::parse_double(f[1]), h = csv::parse_double(f[2]);
        if (!(h > 0.0) || !(b >= a)) fail(ErrorKind::InvalidArgument, "range grid needs step > 0 and stop >= start");
        const auto n = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9));
        for (std::size_t i = 0; i <= n; ++i) out.push_back(a + h * static_cast<double>(i));
        return out;
    }
    for (const auto& f : csv::split(text)) out.push_back(csv::parse_double(f));
    return out;
}

/// RunConfig from a JSON object; unknown keys are rejected.
inline RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail(ErrorKind::ParseError, "config must be a JSON object");
    io::detail::only_keys(j, {"command", "data", "coeffs", "out", "out_dir", "M", "N", "N_max", "T", "dt", "samples", "h",
                              "theta", "r", "z", "kind", "grid", "tol"},
                          "config");
    if (!j.contains("command") || !j.at("command").is_string()) fail(ErrorKind::ParseError, "config: 'command' is required");
    RunConfig c;
    c.command = parse_command(j.at("command").get<std::string>());
    auto str = [&](const char* k, std::string& dst) {
        if (!j.contains(k)) return;
        if (!j.at(k).is_string()) fail(ErrorKind::ParseError, std::string("config: '") + k + "' must be a string");
        dst = j.at(k).get<std::string>();
    };
    auto count = [&](const char* k) -> std::optional<std::size_t> {
        if (!j.contains(k)) return std::nullopt;
        const double v = io::detail::number(j.at(k), k);
        if (!(v >= 0.0) || v != std::floor(v) || v > 1e9)
            fail(ErrorKind::InvalidArgument, std::string(k) + " must be a nonnegative integer");
        return static_cast<std::size_t>(v);
    };
    auto real = [&](const char* k) -> std::optional<double> {
        if (!j.contains(k)) return std::nullopt;
        return io::detail::number(j.at(k), k);
    };
    str("data", c.data);
    str("coeffs", c.coeffs);
    str("out", c.out);
    str("out_dir", c.out_dir);
    str("kind", c.sweep_kind);
    c.M = count("M");
    if (auto v = count("N")) c.N = *v;
    c.N_max = count("N_max");
    if (auto v = real("T")) c.T = *v;
    if (auto v = real("dt")) c.dt = *v;
    if (auto v = count("samples")) c.samples = *v;
    c.h = real("h");
    c.theta = real("theta");
    c.r = real("r");
    if (j.contains("z")) {
        const auto& z = j.at("z");
        if (z.is_number()) c.z = {z.get<double>(), 0.0};
        else if (z.is_array() && z.size() == 2) c.z = {io::detail::number(z[0], "z"), io::detail::number(z[1], "z")};
        else fail(ErrorKind::ParseError, "config: 'z' must be a number or [re, im]");
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.is_string()) c.grid = parse_grid(g.get<std::string>());
        else if (g.is_array())
            for (const auto& v : g) c.grid.push_back(io::detail::number(v, "grid"));
        else fail(ErrorKind::ParseError, "config: 'grid' must be an array or a range string");
    }
    if (j.contains("tol")) {
        if (!j.at("tol").is_object()) fail(ErrorKind::ParseError, "config: 'tol' must be an object");
        Tolerances probe;
        for (auto it = j.at("tol").begin(); it != j.at("tol").end(); ++it) {
            const double v = io::detail::number(it.value(), it.key());
            set_tolerance(probe, it.key(), v);
            c.tol_overrides[it.key()] = v;
        }
    }
    return c;
}

//
// validation, run before anything is computed
//
inline void validate(const RunConfig& c) {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) fail(ErrorKind::InvalidArgument, what);
    };
    auto need_file = [&](const std::string& path, const char* flag) {
        need(!path.empty(), std::string(flag) + " is required");
    };
    switch (c.command) {
        case Command::reconstruct:
            need_file(c.data, "--data");
            need(c.M && *c.M >= 1, "--modes must be >= 1");
            break;
        case Command::spectrum:
            need_file(c.coeffs, "--coeffs");
            need(!c.M || *c.M >= 1, "--M must be >= 1");
            break;
        case Command::flow:
        case Command::flow_compare:
            need(!c.data.empty() || (c.command == Command::flow && !c.coeffs.empty()), "--data is required");
            need(c.M && *c.M >= 1, "--modes must be >= 1");
            need(std::isfinite(c.T) && c.T >= 0.0, "--T must be finite and >= 0");
            need(std::isfinite(c.dt) && c.dt > 0.0, "--dt must be positive");
            need(c.samples >= 1, "--samples must be >= 1");
            break;
        case Command::certify:
        case Command::c1:
            need_file(c.data, "--data");
            break;
        case Command::geometric:
            need(c.h && std::isfinite(*c.h) && *c.h > 0.0, "--h must be positive");
            need(c.theta && std::isfinite(*c.theta), "--theta is required");
            need(std::isfinite(c.z.real()) && std::isfinite(c.z.imag()), "--z must be finite");
            need(c.N_max && *c.N_max >= 1, "--N-max must be >= 1");
            if (c.r) {
                const double g = std::exp(-2.0 * *c.h);
                need(*c.r > g && *c.r < 1.0, "--r must lie in (gamma, 1) with gamma = " + csv::format(g));
            }
            break;
        case Command::sweep:
            need(c.sweep_kind == "zero_gap" || c.sweep_kind == "operator_bounds" || c.sweep_kind == "winding",
                 "--kind must be zero_gap, operator_bounds or winding");
            need(c.N >= 1, "--N must be >= 1");
            break;
    }
}

//
// sweeps
//
struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

namespace detail {

inline std::string clean(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

inline std::vector<std::string> sweep_header(const std::string& kind) {
    if (kind == "zero_gap") return {"gamma", "min_unit", "max_inner_scaled", "gap", "poisson_bound", "error"};
    if (kind == "operator_bounds")
        return {"delta", "N", "l1_norm_product", "bound_value", "l1_norm_c0inv_sum", "c_delta_bound", "error"};
    return {"gamma", "index_inside", "index_outside", "error"};
}

inline std::vector<std::string> sweep_row(const std::string& kind, double x, std::size_t N, const Tolerances& tol) {
    using csv::format;
    const auto width = sweep_header(kind).size();
    try {
        if (kind == "zero_gap") {
            const auto rep = zero_gap(x);
            return {format(x), format(rep.min_unit), format(rep.max_inner_scaled), format(rep.gap),
                    format(rep.poisson_bound), ""};
        }
        if (kind == "operator_bounds") {
            require(x > 0.0 && x < 1.0, "delta must lie in (0, 1)");
            std::vector<double> s{1.0}, psi(2 * N, 0.0);
            for (std::size_t r = 1; r < 2 * N; ++r) s.push_back(s.back() * x);
            const auto rep = operator_bounds(SpectralData(s, psi), tol);
            return {format(x), format(N), format(rep.l1_norm_product), format(rep.bound_value),
                    format(rep.l1_norm_c0inv_sum), format(rep.c_delta_bound), ""};
        }
        auto f = [&](cplx zeta) { return f_gamma(x, zeta, tol); };
        return {format(x), format(winding_index(f, 1.0 - 1e-3, 256, tol)), format(winding_index(f, 1.0 + 1e-3, 256, tol)),
                ""};
    } catch (const Error& e) {
        std::vector<std::string> row(width);
        row[0] = format(x);
        row.back() = clean(e.what());
        return row;
    }
}

}  // namespace detail

/// SZEGO_LAB_THREADS: unset means hardware concurrency, 0 means sequential.
inline unsigned sweep_threads() {
    const char* env = std::getenv("SZEGO_LAB_THREADS");
    if (!env || !*env) return std::max(1u, std::thread::hardware_concurrency());
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) fail(ErrorKind::InvalidArgument, std::string("SZEGO_LAB_THREADS must be >= 0, got '") + env + "'");
    return v == 0 ? 1u : static_cast<unsigned>(v);
}

/// One row per grid value, sorted by that value; failures land in the error column.
inline SweepTable sweep(const std::string& kind, std::vector<double> grid, std::size_t N, const Tolerances& tol,
                        unsigned threads) {
    std::sort(grid.begin(), grid.end());
    SweepTable t{detail::sweep_header(kind), std::vector<std::vector<std::string>>(grid.size())};
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < grid.size();) t.rows[i] = detail::sweep_row(kind, grid[i], N, tol);
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return t;
}

inline std::string to_csv(const SweepTable& t) {
    std::ostringstream os;
    csv::Writer w(os);
    w.row(t.header);
    for (const auto& r : t.rows) w.row(r);
    return os.str();
}

//
// dispatch
//
namespace detail {

inline void kv(std::ostream& out, const std::string& key, double v) { out << key << '=' << csv::format(v) << '\n'; }

inline std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + csv::format(v[i]);
    return s;
}

inline void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) out << text;
    else io::write_file(c.out, text);
}

inline HardyFunction flow_initial(const RunConfig& c, const Tolerances& tol) {
    if (!c.data.empty()) return reconstruct_function(io::load_spectral(c.data), *c.M, tol);
    return io::load_hardy(c.coeffs).resized(*c.M);
}

inline void run_geometric(const RunConfig& c, const Tolerances& tol, std::ostream& out) {
    const GeometricParams p(*c.h, *c.theta);
    const double g = p.gamma();
    const double r = c.r ? *c.r : choose_toeplitz_radius(p, c.z, 0.95, 8, tol);
    namespace fs = std::filesystem;
    fs::create_directories(c.out_dir);

    // radii gamma^e, e = -1.45 .. 2.45, which stay off the zero/pole circles
    std::vector<double> radii;
    for (int k = 0; k < 40; ++k) radii.push_back(std::pow(g, -1.45 + 0.1 * k));
    std::ostringstream prof;
    {
        csv::Writer w(prof);
        w.row("R", "index");
        for (const auto& e : index_profile(g, radii, tol))
            w.row(e.R, e.flag ? std::string(szego::to_string(*e.flag)) : csv::format(e.index));
    }
    io::write_file((fs::path(c.out_dir) / "index_profile.csv").string(), prof.str());

    std::vector<std::size_t> Ns;
    for (std::size_t N = 10; N < *c.N_max; N += 10) Ns.push_back(N);
    Ns.push_back(*c.N_max);
    std::ostringstream stab;
    {
        csv::Writer w(stab);
        w.row("N", "inv_norm");
        for (const auto& pt : stability_scan(p, c.z, r, Ns)) w.row(pt.N, pt.inv_norm);
    }
    io::write_file((fs::path(c.out_dir) / "stability.csv").string(), stab.str());

    const auto gap = zero_gap(g);
    kv(out, "gamma", gap.gamma);
    kv(out, "min_unit", gap.min_unit);
    kv(out, "max_inner_scaled", gap.max_inner_scaled);
    kv(out, "gap", gap.gap);
    kv(out, "poisson_bound", gap.poisson_bound);
    kv(out, "r", r);

    const std::size_t N = std::min<std::size_t>(*c.N_max, 20);
    const cplx a = u_via_toeplitz(p, c.z, r, N);
    const cplx b = reconstruct_point(geometric_spectral_data(p, N), c.z, tol);
    out << "N=" << N << '\n';
    kv(out, "u_toeplitz_re", a.real());
    kv(out, "u_toeplitz_im", a.imag());
    kv(out, "u_cauchy_re", b.real());
    kv(out, "u_cauchy_im", b.imag());
    kv(out, "route_diff", std::abs(a - b));
}

}  // namespace detail

/// Exit status: 0 success, 2 validation error, 3 numerical failure.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        validate(c);
        const Tolerances tol = tolerances(c);
        switch (c.command) {
            case Command::reconstruct: {
                const auto u = reconstruct_function(io::load_spectral(c.data), *c.M, tol);
                const bool json = c.out.size() >= 5 && c.out.substr(c.out.size() - 5) == ".json";
                detail::emit(c, json ? io::to_json(u).dump(2) + "\n" : io::hardy_to_csv(u), out);
                break;
            }
            case Command::spectrum: {
                const auto u = io::load_hardy(c.coeffs);
                const auto spec = pair_singular_values(u, c.M ? *c.M : u.size(), tol);
                if (!c.out.empty()) io::write_file(c.out, io::spectrum_to_csv(spec));
                out << "rho=" << detail::join(spec.rho) << '\n' << "sigma=" << detail::join(spec.sigma) << '\n';
                break;
            }
            case Command::flow: {
                const auto traj = integrate(detail::flow_initial(c, tol), c.T, c.dt, *c.M, c.samples);
                const auto rep = conservation_report(traj, tol);
                std::ostringstream os;
                csv::Writer w(os);
                w.row("t", "mass", "h_half_norm", "sv_drift_max");
                for (const auto& row : rep.rows) w.row(row.t, row.mass, row.h_half_norm, row.sv_drift_max);
                detail::emit(c, os.str(), out);
                break;
            }
            case Command::flow_compare:
                detail::kv(out, "discrepancy", compare_flows(io::load_spectral(c.data), c.T, c.dt, *c.M, tol));
                break;
            case Command::certify: {
                const auto rep = operator_bounds(io::load_spectral(c.data), tol);
                detail::kv(out, "delta", rep.delta);
                detail::kv(out, "l1_norm_c0inv_sum", rep.l1_norm_c0inv_sum);
                detail::kv(out, "l1_norm_product", rep.l1_norm_product);
                detail::kv(out, "bound_value", rep.bound_value);
                detail::kv(out, "c_delta_bound", rep.c_delta_bound);
                detail::kv(out, "b_delta", rep.b_delta);
                detail::kv(out, "spectral_radius", rep.spectral_radius);
                if (rep.certified_radius) detail::kv(out, "certified_radius", *rep.certified_radius);
                else out << "certified_radius=none\n";
                break;
            }
            case Command::geometric:
                detail::run_geometric(c, tol, out);
                break;
            case Command::c1: {
                const auto d = io::load_spectral(c.data);
                const auto lb = c1_lower_bound(d, tol);
                detail::kv(out, "closed_form", c1_closed_form(d, tol).value);
                detail::kv(out, "lower_bound", lb.lower_bound);
                detail::kv(out, "eq4_bound", lb.eq4_bound);
                break;
            }
            case Command::sweep:
                detail::emit(c, to_csv(sweep(c.sweep_kind, c.grid, c.N, tol, sweep_threads())), out);
                break;
        }
        return 0;
    } catch (const Error& e) {
        err << "error [" << to_string(c.command) << "]: " << e.what() << '\n';
        return is_validation_error(e.kind()) ? 2 : 3;
    } catch (const nlohmann::json::exception& e) {
        err << "error [" << to_string(c.command) << "]: ParseError: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error [" << to_string(c.command) << "]: InvalidArgument: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace szego::cli
