#pragma once

#include "goursat/grid.hpp"
#include "goursat/multi_index.hpp"
#include "goursat/norms.hpp"
#include "goursat/pde_operator.hpp"
#include "goursat/representation.hpp"

#include <string_view>
#include <vector>

namespace goursat {

enum class IterationMode {
    picard,  ///< b <- Zhat - (N - I) b
    sweep,   ///< causal forward substitution in lexicographic node order
};

IterationMode parse_mode(std::string_view name);
std::string_view mode_name(IterationMode m);
QuadratureRule parse_rule(std::string_view name);
std::string_view rule_name(QuadratureRule r);

struct SolverSettings {
    NormConfig norm{kInfinity};
    double tol = 1e-12;
    int max_iter = 200;
    QuadratureRule rule = QuadratureRule::trapezoid;
    IterationMode mode = IterationMode::picard;
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> update_norms;
    double residual = 0.0;  ///< ||N b - Zhat|| for the returned b
    bool converged = false;
};

/// K_i b: b integrated over the axes where i_k < m_k with kernel
/// (x_k - t_k)^(m_k - 1 - i_k), held at x_k on the remaining axes.
Field kernel_term(const Field& b, const MultiIndex& i,
                  QuadratureRule rule = QuadratureRule::trapezoid);

/// (N - I) b = sum_i a_i K_i b. The 35 kernels share their partial
/// integrals through a depth-first walk over the axes.
Field apply_N_minus_identity(const Field& b, const CoefficientSet& a,
                             QuadratureRule rule = QuadratureRule::trapezoid);

/// N b = b + sum_i a_i K_i b. Throws std::invalid_argument on a grid mismatch.
Field apply_N(const Field& b, const CoefficientSet& a,
              QuadratureRule rule = QuadratureRule::trapezoid);

/// Zhat = phi_{1,1,2,2} - sum_i a_i D^i g0.
Field build_rhs_Zhat(const EVector& phi, const CoefficientSet& a,
                     QuadratureRule rule = QuadratureRule::trapezoid);

struct IntegralSolve {
    Field b;
    SolveReport report;
};

/// Successive approximations from b0 = Zhat until
/// ||b_{n+1} - b_n|| <= tol (1 + ||Zhat||). Non-convergence is reported, not thrown.
IntegralSolve solve_picard(const CoefficientSet& a, const Field& zhat, const SolverSettings& s = {});

/// Direct causal solve: each node is computed from already-known nodes
/// below it, so a single pass solves the discrete system up to round-off.
IntegralSolve solve_sweep(const CoefficientSet& a, const Field& zhat, const SolverSettings& s = {});

/// Dispatches on s.mode.
IntegralSolve solve_integral_equation(const CoefficientSet& a, const Field& zhat,
                                      const SolverSettings& s = {});

struct ProblemSolve {
    Solution solution;
    SolveReport report;
};

/// Zhat from phi, b from the integral equation, then u = Q(boundary part of phi, b).
ProblemSolve solve_problem(const CoefficientSet& a, const EVector& phi, const SolverSettings& s = {});

/// ||N b - Zhat|| in the given norm.
double residual(const Field& b, const CoefficientSet& a, const Field& zhat, NormConfig norm = {kInfinity},
                QuadratureRule rule = QuadratureRule::trapezoid);

}  // namespace goursat
