#include "goursat/mms.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

using namespace goursat;

namespace {

struct GoldenRow {
    Point4 x;
    double value;
};

std::vector<GoldenRow> read_golden(const std::string& name) {
    std::ifstream in(std::string(GOURSAT_TEST_DATA_DIR) + "/golden/" + name + ".txt");
    std::vector<GoldenRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        GoldenRow r{};
        ls >> r.x[0] >> r.x[1] >> r.x[2] >> r.x[3] >> r.value;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST(Cases, NamesAndLookup) {
    const auto& names = manufactured_case_names();
    EXPECT_EQ(names.size(), 5u);
    for (const std::string& n : names) EXPECT_EQ(manufactured_case(n).name(), n);
    EXPECT_THROW(manufactured_case("cubic"), std::invalid_argument);
}

TEST(Cases, ZeroCase) {
    const ManufacturedCase mc = manufactured_case("zero");
    const Grid4 g = unit_grid(4);
    const EVector phi = mc.data(g);
    for (const MultiIndex& i : all_indices()) EXPECT_EQ(phi[i].max_abs(), 0.0);
    const ProblemSolve s = solve_problem(mc.coefficients(g), phi);
    const ErrorMetrics e = error_metrics(s.solution, mc, {2.0});
    EXPECT_EQ(e.u_lp, 0.0);
    EXPECT_EQ(e.b_lp, 0.0);
    EXPECT_EQ(e.u_max, 0.0);
}

TEST(Cases, SeparablePolynomialData) {
    const ManufacturedCase mc = manufactured_case("poly-sep");
    const Grid4 g = unit_grid(5);
    const EVector phi = mc.data(g);
    for (const MultiIndex& i : all_indices()) {
        const double expect = i.is_dominant() ? 1.0 : 0.0;
        for (double v : phi[i].values()) EXPECT_EQ(v, expect) << i.name();
    }
}

TEST(Cases, SelfConsistent) {
    const Grid4 g = make_grid({1, 1, 1, 1}, {5, 6, 5, 7});
    for (const std::string& n : manufactured_case_names()) {
        const ManufacturedCase mc = manufactured_case(n);
        const Field v = apply_V1122(mc.analytic_bundle(g), mc.coefficients(g));
        EXPECT_LE(max_abs_difference(v, mc.data(g)[MultiIndex::dominant()]), 1e-10) << n;
    }
}

TEST(Cases, MatchSymbolicTables) {
    const Grid4 g = unit_grid(5);
    for (const std::string name : {"poly-const-coef", "trig", "jump-coef"}) {
        const ManufacturedCase mc = manufactured_case(name);
        const Field dom = mc.data(g)[MultiIndex::dominant()];
        const auto rows = read_golden(name);
        ASSERT_EQ(rows.size(), g.node_count()) << name;
        for (const GoldenRow& r : rows) {
            Index4 idx;
            for (int k = 0; k < kDims; ++k) idx[k] = static_cast<int>(std::lround(r.x[k] * 4));
            EXPECT_NEAR(dom.at(idx), r.value, 1e-13 * std::max(1.0, std::abs(r.value))) << name;
        }
    }
}

TEST(ErrorMetrics, SeparablePolynomialIsExactOnEveryGrid) {
    const ManufacturedCase mc = manufactured_case("poly-sep");
    for (int n : {3, 4, 5, 9}) {
        const Grid4 g = unit_grid(n);
        const ProblemSolve s = solve_problem(mc.coefficients(g), mc.data(g));
        const ErrorMetrics e = error_metrics(s.solution, mc, {kInfinity});
        EXPECT_LE(e.u_max, 1e-12) << n;
        EXPECT_LE(e.b_lp, 1e-12) << n;
    }
}

TEST(ErrorMetrics, ConstantCoefficientPolynomial) {
    const ManufacturedCase mc = manufactured_case("poly-const-coef");
    const Grid4 g = unit_grid(5);
    const ProblemSolve s = solve_problem(mc.coefficients(g), mc.data(g));
    EXPECT_TRUE(s.report.converged);
    EXPECT_LE(error_metrics(s.solution, mc, {kInfinity}).u_max, 1e-8);
}

TEST(ErrorMetrics, TrigRatioUnderRefinement) {
    const ManufacturedCase mc = manufactured_case("trig");
    auto err = [&](int n) {
        const Grid4 g = unit_grid(n);
        return error_metrics(solve_problem(mc.coefficients(g), mc.data(g)).solution, mc, {kInfinity}).u_max;
    };
    const double ratio = err(9) / err(17);
    EXPECT_GE(ratio, 3.4);
    EXPECT_LE(ratio, 4.6);
}

TEST(Convergence, SeparablePolynomialHasNoOrder) {
    const auto rows = convergence_study(manufactured_case("poly-sep"), {5, 9});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_FALSE(rows[0].order.has_value());
    EXPECT_FALSE(rows[1].order.has_value());
    EXPECT_LE(rows[1].error.u_max, kRoundoffError);
}

TEST(Convergence, JumpCoefficientOrder) {
    const auto rows = convergence_study(manufactured_case("jump-coef"), {9, 17});
    ASSERT_TRUE(rows[1].order.has_value());
    EXPECT_GE(*rows[1].order, 1.5);
    EXPECT_TRUE(rows[1].report.converged);
}

TEST(Convergence, NeedsTwoGrids) {
    EXPECT_THROW(convergence_study(manufactured_case("trig"), {9}), std::invalid_argument);
}

TEST(DualPath, PolynomialPathsCoincide) {
    const DualPathResult r = dual_path_check(manufactured_case("poly-const-coef"), unit_grid(5));
    EXPECT_LE(r.path_difference, 1e-10);
    EXPECT_LE(r.conversion_spread, 1e-10);
}

TEST(DualPath, TrigPathsAgreeWithinDiscretizationError) {
    for (int n : {5, 9}) {
        const DualPathResult r = dual_path_check(manufactured_case("trig"), unit_grid(n));
        EXPECT_LE(r.path_difference, 2 * r.nonclassical_error) << n;
        EXPECT_GT(r.nonclassical_error, 0.0);
    }
}
