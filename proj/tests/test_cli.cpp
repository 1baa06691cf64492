#include "goursat/cli.hpp"

#include "goursat/boundary_data.hpp"
#include "goursat/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

using namespace goursat;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::map<std::string, std::string> kv;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "goursat4d");
    std::ostringstream out, err;
    CliRun r{run_cli(args, out, err), {}, out.str(), err.str()};
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) r.kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return r;
}

std::string bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("goursat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& text) const {
        std::ofstream(dir_ / name) << text;
        return (dir_ / name).string();
    }

    // Classical traces of u = x3 x4 on the 5^4 unit grid, optionally with S zeroed.
    std::string classical_spec(bool zero_S) const {
        const Grid4 g = unit_grid(5);
        ClassicalData c =
            ClassicalData::from_field(Field::sample(g, AxisSet::all(), [](const Point4& x) { return x[2] * x[3]; }));
        if (zero_S) c.set(Classical::S, Field(g, classical_axes(Classical::S)));
        std::string boundary = R"("mode": "classical")";
        for (Classical which : {Classical::F, Classical::g, Classical::psi, Classical::Phi, Classical::T, Classical::S}) {
            const std::string name(classical_name(which));
            write_field(dir_ / (name + ".gf4"), c[which]);
            boundary += ", \"" + name + "\": {\"file\": \"" + name + ".gf4\"}";
        }
        return file("classical.json", R"({"grid": {"lengths": [1, 1, 1, 1], "counts": [5, 5, 5, 5]},
                                         "boundary": {)" + boundary + "}}");
    }

    fs::path dir_;
};

}  // namespace

TEST(Cli, MmsSeparablePolynomial) {
    const CliRun r = run({"mms", "poly-sep", "--grids", "5"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    ASSERT_TRUE(r.kv.count("max_error"));
    EXPECT_LE(std::stod(r.kv.at("max_error")), 1e-12);
    EXPECT_EQ(r.kv.at("converged"), "true");
    EXPECT_EQ(r.kv.at("grid.5.iterations"), "1");
}

TEST(Cli, MmsConvergenceTable) {
    const CliRun r = run({"mms", "trig", "--grids", "5,9", "--mode", "sweep"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.kv.at("grid.5.order"), "n/a");
    EXPECT_NEAR(std::stod(r.kv.at("grid.9.order")), 2.0, 0.5);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"mms", "nonexistent-case"}).code, kExitUsage);
    EXPECT_EQ(run({"mms", "trig", "--rule", "simpson"}).code, kExitUsage);
    EXPECT_EQ(run({"solve"}).code, kExitUsage);
}

TEST(Cli, InvalidInputs) {
    EXPECT_EQ(run({"mms", "trig", "--grids", "2"}).code, kExitInvalid);
    EXPECT_EQ(run({"mms", "trig", "--grids", "5", "--p", "0.5"}).code, kExitInvalid);
    EXPECT_EQ(run({"solve", "/nonexistent/problem.json"}).code, kExitInvalid);
}

TEST(Cli, NonConvergenceExitCode) {
    const CliRun r = run({"mms", "trig", "--grids", "5", "--max-iter", "1"});
    EXPECT_EQ(r.code, kExitNotConverged);
    EXPECT_EQ(r.kv.at("converged"), "false");
}

TEST_F(CliTest, CheckCompatPassesForTraces) {
    const CliRun r = run({"check-compat", classical_spec(false)});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.kv.at("pass"), "true");
    EXPECT_EQ(r.kv.count("violated"), 0u);
}

TEST_F(CliTest, CheckCompatNamesViolatedIdentity) {
    const CliRun r = run({"check-compat", classical_spec(true)});
    EXPECT_EQ(r.code, kExitInvalid);
    EXPECT_EQ(r.kv.at("pass"), "false");
    EXPECT_NE(r.out.find("violated=g_x4(x1,x3,0)=S(x1,0,x3)\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, SolveZeroData) {
    const std::string spec = file("zero.json", R"({
        "grid": {"lengths": [1, 1, 1, 1], "counts": [4, 4, 4, 4]},
        "coefficients": {"0,0,0,0": 1, "1,0,2,1": -0.5}
    })");
    const std::string out = (dir_ / "out").string();
    const CliRun r = run({"solve", spec, "--out-dir", out});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.kv.at("iterations"), "1");
    EXPECT_EQ(r.kv.at("converged"), "true");
    EXPECT_EQ(read_field(r.kv.at("u_file"), unit_grid(4)).max_abs(), 0.0);
    EXPECT_EQ(read_field(r.kv.at("b_file"), unit_grid(4)).max_abs(), 0.0);
}

TEST_F(CliTest, SolveIsDeterministicAndHonoursFormat) {
    const std::string spec = file("p.json", R"({
        "grid": {"lengths": [1, 1, 1, 1], "counts": [5, 5, 5, 5]},
        "coefficients": {"0,0,1,1": 0.7, "1,1,0,0": -0.3},
        "boundary": {"components": {"0,0,0,0": 1, "0,0,1,1": 0.5}},
        "rhs": 2
    })");
    const CliRun a = run({"solve", spec, "--out-dir", (dir_ / "a").string()});
    const CliRun b = run({"solve", spec, "--out-dir", (dir_ / "b").string()});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(bytes(a.kv.at("u_file")), bytes(b.kv.at("u_file")));
    EXPECT_EQ(bytes(a.kv.at("b_file")), bytes(b.kv.at("b_file")));
    EXPECT_EQ(a.kv.at("residual"), b.kv.at("residual"));

    const CliRun sweep = run({"solve", spec, "--mode", "sweep", "--format", "csv", "--out-dir", (dir_ / "c").string()});
    ASSERT_EQ(sweep.code, kExitOk) << sweep.err;
    EXPECT_EQ(fs::path(sweep.kv.at("u_file")).extension(), ".csv");
    const Field u_csv = read_csv(sweep.kv.at("u_file"), unit_grid(5), AxisSet::all());
    EXPECT_LE(max_abs_difference(u_csv, read_field(a.kv.at("u_file"), unit_grid(5))), 1e-10);
}

TEST_F(CliTest, ConvertBothDirections) {
    const CliRun to_nc = run({"convert-bc", classical_spec(false), "--out-dir", (dir_ / "nc").string()});
    EXPECT_EQ(to_nc.code, kExitOk) << to_nc.err;
    EXPECT_EQ(to_nc.kv.at("components"), "35");
    EXPECT_LE(std::stod(to_nc.kv.at("max_spread")), 1e-12);
    const Field corner = read_field(dir_ / "nc" / "phi_0011.gf4", unit_grid(5));
    for (double v : corner.values()) EXPECT_NEAR(v, 1.0, 1e-12);

    const std::string spec = file("nc.json", R"({
        "grid": {"lengths": [1, 1, 1, 1], "counts": [5, 5, 5, 5]},
        "boundary": {"components": {"0,0,1,1": 1}}
    })");
    const CliRun to_c = run({"convert-bc", spec, "--out-dir", (dir_ / "c").string()});
    EXPECT_EQ(to_c.code, kExitOk) << to_c.err;
    EXPECT_EQ(to_c.kv.at("compat_pass"), "true");
    EXPECT_TRUE(fs::exists(dir_ / "c" / "Phi.gf4"));
}

TEST_F(CliTest, ApplyOperator) {
    const Grid4 g = unit_grid(5);
    write_field(dir_ / "u.gf4",
                Field::sample(g, AxisSet::all(), [](const Point4& x) { return x[0] * x[1] * x[2] * x[2] * x[3] * x[3] / 4; }));
    const std::string spec = file("a.json", R"({"grid": {"lengths": [1, 1, 1, 1], "counts": [5, 5, 5, 5]}})");
    const CliRun r = run({"apply-op", (dir_ / "u.gf4").string(), spec, "--out-dir", dir_.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NEAR(std::stod(r.kv.at("v_max")), 1.0, 1e-9);
}

TEST(Cli, ScanHomeoDeterministic) {
    const std::vector<std::string> args{"scan-homeo", "--grid", "5", "--samples", "6", "--seed", "3", "--sampler", "poly"};
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_GT(std::stod(a.kv.at("min_ratio")), 0.0);
    EXPECT_TRUE(a.kv.count("ratio.5"));
}

TEST(Cli, ExecutableExitCodes) {
    const std::string exe = GOURSAT_CLI_PATH;
    auto status = [](const std::string& cmd) {
        const int s = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status(exe + " mms poly-sep --grids 5"), kExitOk);
    EXPECT_EQ(status(exe + " bogus"), kExitUsage);
    EXPECT_EQ(status(exe + " solve /nonexistent.json"), kExitInvalid);
}
