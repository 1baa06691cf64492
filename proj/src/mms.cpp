#include "goursat/mms.hpp"

#include <cmath>
#include <stdexcept>

namespace goursat {

ManufacturedCase::ManufacturedCase(std::string name, AxisFactor factor,
                                   std::vector<CoefficientFormula> coefficients)
    : name_(std::move(name)), factor_(std::move(factor)), coefficients_(std::move(coefficients)) {
    for (const CoefficientFormula& c : coefficients_)
        if (c.index.is_dominant()) throw std::invalid_argument("the dominant index carries no coefficient");
}

double ManufacturedCase::derivative(const Index4& orders, const Point4& x) const {
    double v = 1.0;
    for (int k = 0; k < kDims; ++k) v *= factor_(k, orders[k], x[k]);
    return v;
}

double ManufacturedCase::coefficient(const MultiIndex& i, const Point4& x) const {
    double v = 0.0;
    for (const CoefficientFormula& c : coefficients_)
        if (c.index == i) v += c.value(x);
    return v;
}

double ManufacturedCase::apply_operator(const Point4& x) const {
    double v = derivative(MultiIndex::dominant().orders(), x);
    for (const CoefficientFormula& c : coefficients_) v += c.value(x) * derivative(c.index.orders(), x);
    return v;
}

Field ManufacturedCase::exact_u(const Grid4& grid) const {
    return Field::sample(grid, AxisSet::all(), [&](const Point4& x) { return derivative(Index4{}, x); });
}

Field ManufacturedCase::exact_b(const Grid4& grid) const {
    const Index4 dom = MultiIndex::dominant().orders();
    return Field::sample(grid, AxisSet::all(), [&](const Point4& x) { return derivative(dom, x); });
}

CoefficientSet ManufacturedCase::coefficients(const Grid4& grid) const {
    CoefficientSet a(grid);
    for (const CoefficientFormula& c : coefficients_) {
        Field f = Field::sample(grid, c.axes, c.value);
        if (const Field* prev = a.get(c.index)) f = f + *prev;
        a.set(c.index, std::move(f));
    }
    return a;
}

DerivativeBundle ManufacturedCase::analytic_bundle(const Grid4& grid) const {
    std::vector<Field> parts;
    parts.reserve(kIndexCount);
    for (const MultiIndex& i : all_indices())
        parts.push_back(Field::sample(grid, AxisSet::all(),
                                      [&](const Point4& x) { return derivative(i.orders(), x); }));
    return DerivativeBundle(grid, std::move(parts));
}

EVector ManufacturedCase::data(const Grid4& grid) const {
    EVector phi(grid);
    for (const MultiIndex& i : all_indices()) {
        if (i.is_dominant()) {
            phi.set(i, Field::sample(grid, AxisSet::all(), [&](const Point4& x) { return apply_operator(x); }));
        } else {
            // Absent axes are sampled at 0, which is exactly the trace face.
            phi.set(i, Field::sample(grid, i.full_axes(),
                                     [&](const Point4& x) { return derivative(i.orders(), x); }));
        }
    }
    return phi;
}

ClassicalData ManufacturedCase::classical_data(const Grid4& grid) const {
    ClassicalData c(grid);
    for (Classical which : {Classical::F, Classical::g, Classical::psi, Classical::Phi, Classical::T,
                            Classical::S}) {
        Index4 orders{};
        orders[classical_anchor_axis(which)] = classical_normal_order(which);
        c.set(which, Field::sample(grid, classical_axes(which),
                                   [&](const Point4& x) { return derivative(orders, x); }));
    }
    return c;
}

const std::vector<std::string>& manufactured_case_names() {
    static const std::vector<std::string> names{"zero", "poly-sep", "poly-const-coef", "trig", "jump-coef"};
    return names;
}

namespace {

// d^order/dx^order of x^p / p! for p in {1, 2}.
double monomial(int p, int order, double x) {
    if (order > p) return 0.0;
    if (p == 1) return order == 0 ? x : 1.0;
    return order == 0 ? 0.5 * x * x : order == 1 ? x : 1.0;
}

// d^order/dx^order of (1 + x)^p / c.
double shifted_power(int p, double c, int order, double x) {
    double coef = 1.0;
    for (int r = 0; r < order; ++r) coef *= p - r;
    return coef * std::pow(1.0 + x, p - order) / c;
}

double sine_derivative(int order, double x) {
    switch (order % 4) {
        case 0: return std::sin(x);
        case 1: return std::cos(x);
        case 2: return -std::sin(x);
        default: return -std::cos(x);
    }
}

std::vector<CoefficientFormula> constant_coefficients(double (*value)(const MultiIndex&)) {
    std::vector<CoefficientFormula> out;
    for (const MultiIndex& i : all_indices()) {
        if (i.is_dominant()) continue;
        const double v = value(i);
        out.push_back({i, AxisSet{}, [v](const Point4&) { return v; }});
    }
    return out;
}

}  // namespace

ManufacturedCase manufactured_case(const std::string& name) {
    const Index4 m = kOrderProfile;
    auto poly = [m](int k, int order, double x) { return monomial(m[k], order, x); };
    if (name == "zero") return ManufacturedCase(name, [](int, int, double) { return 0.0; }, {});
    if (name == "poly-sep") return ManufacturedCase(name, poly, {});
    if (name == "poly-const-coef")
        return ManufacturedCase(name, poly, constant_coefficients([](const MultiIndex&) { return 1.0; }));
    if (name == "trig") {
        return ManufacturedCase(
            name, [](int, int order, double x) { return sine_derivative(order, x); },
            constant_coefficients([](const MultiIndex& i) {
                const double sign = (i.total() % 2 == 0) ? 1.0 : -1.0;
                return sign * (1.0 + i[0] + 2.0 * i[1] + 3.0 * i[2] + 4.0 * i[3]) / 16.0;
            }));
    }
    if (name == "jump-coef") {
        // Degree 2 in x1, x2 and 3 in x3, x4, so neither quadrature nor stencils are exact.
        auto factor = [](int k, int order, double x) {
            return k < 2 ? shifted_power(2, 2.0, order, x) : shifted_power(3, 2.0, order, x);
        };
        std::vector<CoefficientFormula> coef;
        coef.push_back({MultiIndex(0, 0, 1, 1), AxisSet{0},
                        [](const Point4& x) { return x[0] < 0.5 ? 1.0 : -2.0; }});
        coef.push_back({MultiIndex(0, 0, 0, 0), AxisSet{}, [](const Point4&) { return 0.5; }});
        return ManufacturedCase(name, factor, std::move(coef));
    }
    throw std::invalid_argument("unknown manufactured case: " + name);
}

ErrorMetrics error_metrics(const Solution& solution, const ManufacturedCase& mc, NormConfig cfg) {
    const Grid4& grid = solution.u.grid();
    const Field du = solution.u - mc.exact_u(grid);
    const Field db = solution.b - mc.exact_b(grid);
    return {lp_norm(du, cfg), lp_norm(db, cfg), du.max_abs()};
}

std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& mc, const std::vector<int>& counts,
                                              const SolverSettings& settings, NormConfig metric) {
    if (counts.size() < 2) throw std::invalid_argument("a convergence study needs at least two grids");
    std::vector<ConvergenceRow> rows;
    for (int n : counts) {
        const Grid4 grid = unit_grid(n);
        ProblemSolve solved = solve_problem(mc.coefficients(grid), mc.data(grid), settings);
        ConvergenceRow row;
        row.count = n;
        row.error = error_metrics(solved.solution, mc, metric);
        row.report = std::move(solved.report);
        if (!rows.empty()) {
            const double prev = rows.back().error.u_max;
            const double cur = row.error.u_max;
            if (prev > kRoundoffError && cur > kRoundoffError) row.order = std::log2(prev / cur);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

DualPathResult dual_path_check(const ManufacturedCase& mc, const Grid4& grid, const SolverSettings& settings) {
    const CoefficientSet a = mc.coefficients(grid);
    const EVector exact_phi = mc.data(grid);
    const Field truth = mc.exact_u(grid);

    ConversionResult converted = classical_to_nonclassical(mc.classical_data(grid));
    converted.phi.set(MultiIndex::dominant(), exact_phi[MultiIndex::dominant()]);

    const ProblemSolve direct = solve_problem(a, exact_phi, settings);
    const ProblemSolve routed = solve_problem(a, converted.phi, settings);
    DualPathResult r;
    r.nonclassical_error = max_abs_difference(direct.solution.u, truth);
    r.classical_error = max_abs_difference(routed.solution.u, truth);
    r.path_difference = max_abs_difference(direct.solution.u, routed.solution.u);
    r.conversion_spread = converted.max_spread();
    return r;
}

}  // namespace goursat
