#include "cli_app.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Result {
    int code = 0;
    std::string out, err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "szego_lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = szego::cli::main_with(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(SZEGO_DATA_DIR) + "/" + name; }

std::map<std::string, std::string> key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

std::vector<std::vector<std::string>> rows(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(szego::csv::split(line));
    return out;
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("szego_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

TEST(Cli, C1SinglePair) {
    const auto r = cli({"c1", "--data", data("pair1.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto kv = key_values(r.out);
    EXPECT_DOUBLE_EQ(std::stod(kv.at("closed_form")), 1.5);
    EXPECT_DOUBLE_EQ(std::stod(kv.at("lower_bound")), 1.5);
    EXPECT_DOUBLE_EQ(std::stod(kv.at("eq4_bound")), 1.0);
}

TEST(Cli, SpectrumRankOne) {
    const auto r = cli({"spectrum", "--coeffs", data("geom.csv"), "--M", "64"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto kv = key_values(r.out);
    EXPECT_NEAR(std::stod(kv.at("rho")), 1.0, 1e-12);
    EXPECT_NEAR(std::stod(kv.at("sigma")), 0.5, 1e-12);
}

TEST(Cli, MalformedSpectralFileIsValidationError) {
    const auto r = cli({"certify", "--data", data("bad_decrease.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("strict decrease violated at r="), std::string::npos) << r.err;
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"c1"}).code, 2);
    EXPECT_EQ(cli({"nonsense"}).code, 2);
    EXPECT_EQ(cli({"c1", "--data", "/nonexistent/file.json"}).code, 2);
    EXPECT_EQ(cli({"--tol", "bogus=1", "c1", "--data", data("pair1.json")}).code, 2);
    EXPECT_EQ(cli({"--tol", "rank", "c1", "--data", data("pair1.json")}).code, 2);
    // numerical failure: nonzero angles for the closed form
    const auto r = cli({"c1", "--data", data("two_pairs.json")});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("AnglesNotZero"), std::string::npos) << r.err;
    // geometric radius outside (gamma, 1)
    EXPECT_EQ(cli({"geometric", "--h", "0.5", "--theta", "0", "--r", "0.2", "--N-max", "20"}).code, 2);
}

TEST(Cli, ToleranceOverrideIsApplied) {
    const auto loose = cli({"--tol", "tail=1e-3", "reconstruct", "--data", data("pair1.json"), "--modes", "8"});
    const auto strict = cli({"reconstruct", "--data", data("pair1.json"), "--modes", "8"});
    EXPECT_EQ(loose.code, 0) << loose.err;
    EXPECT_EQ(strict.code, 3);
    EXPECT_NE(strict.err.find("InsufficientTruncation"), std::string::npos);
}

TEST(Cli, ReconstructThenSpectrumRoundTrip) {
    const auto dir = scratch("roundtrip");
    const auto csv = (dir / "coeffs.csv").string();
    ASSERT_EQ(cli({"reconstruct", "--data", data("two_pairs.json"), "--modes", "256", "--out", csv}).code, 0);
    const auto r = cli({"spectrum", "--coeffs", csv, "--M", "256", "--out", (dir / "spec.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto kv = key_values(r.out);
    const auto rho = szego::csv::split(kv.at("rho"));
    const auto sigma = szego::csv::split(kv.at("sigma"));
    ASSERT_EQ(rho.size(), 2u);
    ASSERT_EQ(sigma.size(), 2u);
    EXPECT_NEAR(std::stod(rho[0]), 0.9, 1e-9);
    EXPECT_NEAR(std::stod(sigma[0]), 0.5, 1e-9);
    EXPECT_NEAR(std::stod(rho[1]), 0.3, 1e-9);
    EXPECT_NEAR(std::stod(sigma[1]), 0.12, 1e-9);
    const auto table = rows(szego::io::read_file((dir / "spec.csv").string()));
    ASSERT_EQ(table.size(), 5u);
    EXPECT_EQ(table[0], (std::vector<std::string>{"index", "kind", "value"}));

    const auto js = (dir / "coeffs.json").string();
    ASSERT_EQ(cli({"reconstruct", "--data", data("two_pairs.json"), "--modes", "256", "--out", js}).code, 0);
    const auto a = szego::io::load_hardy(csv), b = szego::io::load_hardy(js);
    for (long n = 0; n < 256; ++n) EXPECT_EQ(a[n], b[n]);
}

TEST(Cli, FlowCsvColumnsAndConservation) {
    const auto r = cli({"flow", "--data", data("two_pairs.json"), "--T", "0.5", "--dt", "1e-3", "--modes", "128", "--samples", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 7u);
    EXPECT_EQ(t[0], (std::vector<std::string>{"t", "mass", "h_half_norm", "sv_drift_max"}));
    const double m0 = std::stod(t[1][1]);
    EXPECT_NEAR(m0, 0.81 - 0.25 + 0.09 - 0.0144, 1e-12);  // sum rho^2 - sum sigma^2
    for (std::size_t i = 1; i < t.size(); ++i) {
        EXPECT_NEAR(std::stod(t[i][1]) / m0, 1.0, 1e-9);
        EXPECT_LE(std::stod(t[i][3]), 1e-8);
    }
    EXPECT_DOUBLE_EQ(std::stod(t.back()[0]), 0.5);
}

TEST(Cli, FlowCompare) {
    const auto r = cli({"flow-compare", "--data", data("two_pairs.json"), "--T", "1", "--dt", "1e-3", "--modes", "128"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(std::stod(key_values(r.out).at("discrepancy")), 1e-6);
    EXPECT_EQ(cli({"flow", "--data", data("two_pairs.json"), "--T", "1", "--dt", "10", "--modes", "64"}).code, 2);
}

TEST(Cli, CertifyReport) {
    const auto r = cli({"certify", "--data", data("pair1.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto kv = key_values(r.out);
    for (const char* k : {"delta", "l1_norm_c0inv_sum", "l1_norm_product", "bound_value", "c_delta_bound", "b_delta",
                          "spectral_radius", "certified_radius"})
        EXPECT_TRUE(kv.count(k)) << k;
    EXPECT_DOUBLE_EQ(std::stod(kv.at("delta")), 0.5);
    EXPECT_LE(std::stod(kv.at("l1_norm_product")), std::stod(kv.at("bound_value")));
}

TEST(Cli, GeometricOutputs) {
    const auto dir = scratch("geometric");
    const auto r = cli({"geometric", "--h", "0.6931471805599453", "--theta", "0.5", "--z", "0,1", "--r", "0.95",
                        "--N-max", "60", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto kv = key_values(r.out);
    EXPECT_NEAR(std::stod(kv.at("gamma")), 0.25, 1e-15);
    EXPECT_GE(std::stod(kv.at("gap")), std::stod(kv.at("poisson_bound")));
    EXPECT_LE(std::stod(kv.at("route_diff")), 1e-9);

    const auto prof = rows(szego::io::read_file((dir / "index_profile.csv").string()));
    EXPECT_EQ(prof[0], (std::vector<std::string>{"R", "index"}));
    ASSERT_EQ(prof.size(), 41u);
    for (std::size_t i = 1; i < prof.size(); ++i) {
        const double R = std::stod(prof[i][0]);
        const long idx = std::stol(prof[i][1]);
        if (R > 0.25 && R < 1.0) EXPECT_EQ(idx, 0) << R;
        if (R > 1.0 && R < 4.0) EXPECT_EQ(idx, -1) << R;
    }
    const auto stab = rows(szego::io::read_file((dir / "stability.csv").string()));
    EXPECT_EQ(stab[0], (std::vector<std::string>{"N", "inv_norm"}));
    ASSERT_EQ(stab.size(), 7u);
    EXPECT_EQ(stab.back()[0], "60");
}

TEST(Cli, GeometricPicksRadiusWhenOmitted) {
    const auto dir = scratch("geometric_auto");
    const auto r = cli({"geometric", "--h", "1", "--theta", "0", "--N-max", "20", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_DOUBLE_EQ(std::stod(key_values(r.out).at("r")), 0.95);
}

TEST(Cli, SweepZeroGap) {
    const auto r = cli({"sweep", "--kind", "zero_gap", "--grid", "0.1:0.9:0.2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 6u);
    EXPECT_EQ(t[0], (std::vector<std::string>{"gamma", "min_unit", "max_inner_scaled", "gap", "poisson_bound", "error"}));
    for (std::size_t i = 1; i < t.size(); ++i) {
        ASSERT_EQ(t[i].size(), 5u) << "error column should be empty";
        EXPECT_GE(std::stod(t[i][3]), std::stod(t[i][4]) - 1e-12);
    }
}

TEST(Cli, SweepEmptyGridIsHeaderOnly) {
    const auto r = cli({"sweep", "--kind", "operator_bounds", "--grid", ""});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "delta,N,l1_norm_product,bound_value,l1_norm_c0inv_sum,c_delta_bound,error\n");
}

TEST(Cli, SweepOperatorBoundsAndRowErrors) {
    const auto r = cli({"sweep", "--kind", "operator_bounds", "--grid", "0.5,0.05,1.5,0.1,0.2,0.3,0.4", "--N", "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 8u);
    double prev = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double d = std::stod(t[i][0]);
        EXPECT_GT(d, prev);
        prev = d;
        if (d < 1.0) EXPECT_LE(std::stod(t[i][2]), std::stod(t[i][3]));
    }
    EXPECT_NE(t.back().back().find("InvalidArgument"), std::string::npos);
}

TEST(Cli, SweepIsDeterministicAcrossThreadCounts) {
    const std::vector<std::string> args{"sweep", "--kind", "winding", "--grid", "0.9,0.1,0.5,0.3,0.7"};
    ::setenv("SZEGO_LAB_THREADS", "0", 1);
    const auto seq = cli(args);
    ::setenv("SZEGO_LAB_THREADS", "4", 1);
    const auto par = cli(args);
    ::unsetenv("SZEGO_LAB_THREADS");
    ASSERT_EQ(seq.code, 0) << seq.err;
    EXPECT_EQ(seq.out, par.out);
    const auto t = rows(seq.out);
    ASSERT_EQ(t.size(), 6u);
    for (std::size_t i = 1; i < t.size(); ++i) {
        EXPECT_EQ(t[i][1], "0");
        EXPECT_EQ(t[i][2], "-1");
    }
}

TEST(Cli, JsonConfig) {
    const auto dir = scratch("config");
    const auto cfg = (dir / "c1.json").string();
    szego::io::write_file(cfg, R"({"command": "c1", "data": ")" + data("pair1.json") + R"(", "tol": {"rank": 1e-12}})");
    const auto r = cli({"run", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_DOUBLE_EQ(std::stod(key_values(r.out).at("closed_form")), 1.5);

    szego::io::write_file(cfg, R"({"command": "c1", "data": "x", "colour": 3})");
    const auto bad = cli({"run", "--config", cfg});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("colour"), std::string::npos);

    szego::io::write_file(cfg, R"({"command": "sweep", "kind": "zero_gap", "grid": [0.5]})");
    EXPECT_EQ(cli({"run", "--config", cfg}).code, 0);
    szego::io::write_file(cfg, R"({"command": "c1", "data": "x", "tol": {"nope": 1}})");
    EXPECT_EQ(cli({"run", "--config", cfg}).code, 2);
}

TEST(Cli, OutputIsDeterministic) {
    const auto a = cli({"certify", "--data", data("two_pairs.json")});
    const auto b = cli({"certify", "--data", data("two_pairs.json")});
    EXPECT_EQ(a.out, b.out);
}

}  // namespace
