#pragma once

#include "goursat/boundary_data.hpp"
#include "goursat/grid.hpp"
#include "goursat/multi_index.hpp"
#include "goursat/norms.hpp"
#include "goursat/pde_operator.hpp"
#include "goursat/representation.hpp"
#include "goursat/volterra.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace goursat {

/// One coefficient of a manufactured case in closed form.
struct CoefficientFormula {
    MultiIndex index;
    AxisSet axes;  ///< axes the coefficient varies over
    std::function<double(const Point4&)> value;
};

/// A closed-form solution u = prod_k f_k(x_k) with known coefficients. All
/// problem data are derived from it analytically.
class ManufacturedCase {
public:
    /// factor(k, order, x) = d^order f_k / dx^order at x, order <= m_k.
    using AxisFactor = std::function<double(int axis, int order, double x)>;

    ManufacturedCase(std::string name, AxisFactor factor, std::vector<CoefficientFormula> coefficients);

    const std::string& name() const { return name_; }

    /// D^i u at a point.
    double derivative(const Index4& orders, const Point4& x) const;
    /// (V u)(x) = D^dominant u + sum_i a_i D^i u at a point.
    double apply_operator(const Point4& x) const;
    double coefficient(const MultiIndex& i, const Point4& x) const;

    Field exact_u(const Grid4& grid) const;
    /// Exact dominant derivative D1 D2 D3^2 D4^2 u.
    Field exact_b(const Grid4& grid) const;
    CoefficientSet coefficients(const Grid4& grid) const;
    /// Every D^i u sampled on the full grid.
    DerivativeBundle analytic_bundle(const Grid4& grid) const;
    /// Boundary traces of u plus phi_{1,1,2,2} = V u.
    EVector data(const Grid4& grid) const;
    /// Classical face data of u.
    ClassicalData classical_data(const Grid4& grid) const;

private:
    std::string name_;
    AxisFactor factor_;
    std::vector<CoefficientFormula> coefficients_;
};

/// Names of the built-in cases.
const std::vector<std::string>& manufactured_case_names();

/// "zero", "poly-sep", "poly-const-coef", "trig", "jump-coef".
/// Throws std::invalid_argument for an unknown name.
ManufacturedCase manufactured_case(const std::string& name);

struct ErrorMetrics {
    double u_lp = 0.0;
    double b_lp = 0.0;
    double u_max = 0.0;
};

ErrorMetrics error_metrics(const Solution& solution, const ManufacturedCase& mc, NormConfig cfg);

struct ConvergenceRow {
    int count = 0;  ///< nodes per axis
    ErrorMetrics error;
    std::optional<double> order;  ///< from the max error against the previous row
    SolveReport report;
};

/// Errors below this are treated as round-off when estimating orders.
inline constexpr double kRoundoffError = 1e-11;

/// Solves `mc` on unit grids with the given node counts. Observed order is
/// log2(e_prev / e_cur), reported only when both errors exceed round-off.
/// Throws std::invalid_argument with fewer than 2 grids.
std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& mc, const std::vector<int>& counts,
                                              const SolverSettings& settings = {},
                                              NormConfig metric = {kInfinity});

struct DualPathResult {
    double nonclassical_error = 0.0;  ///< max |u - exact| solving from exact nonclassical data
    double classical_error = 0.0;     ///< max |u - exact| solving from converted classical data
    double path_difference = 0.0;     ///< max |u_nonclassical - u_classical|
    double conversion_spread = 0.0;   ///< largest disagreement between alternative expressions
};

/// Solves once from the exact nonclassical data and once from the classical
/// face data converted with classical_to_nonclassical.
DualPathResult dual_path_check(const ManufacturedCase& mc, const Grid4& grid,
                               const SolverSettings& settings = {});

}  // namespace goursat
