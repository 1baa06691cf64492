#include "goursat/volterra.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace goursat {

IterationMode parse_mode(std::string_view name) {
    if (name == "picard") return IterationMode::picard;
    if (name == "sweep") return IterationMode::sweep;
    throw std::invalid_argument("unknown iteration mode: " + std::string(name));
}

std::string_view mode_name(IterationMode m) { return m == IterationMode::picard ? "picard" : "sweep"; }

QuadratureRule parse_rule(std::string_view name) {
    if (name == "trap" || name == "trapezoid") return QuadratureRule::trapezoid;
    if (name == "rect" || name == "left-rectangle") return QuadratureRule::left_rectangle;
    throw std::invalid_argument("unknown quadrature rule: " + std::string(name));
}

std::string_view rule_name(QuadratureRule r) { return r == QuadratureRule::trapezoid ? "trap" : "rect"; }

Field kernel_term(const Field& b, const MultiIndex& i, QuadratureRule rule) {
    return *representation_term(b, MultiIndex::dominant(), i.orders(), rule);
}

namespace {

void require_grid(const Grid4& g, const Field& f, const char* what) {
    if (!(f.grid() == g)) throw std::invalid_argument(std::string(what) + " lives on a different grid");
}

// Depth-first over axes 4, 3, 2, 1: at each level either hold the axis
// (full order) or integrate with the kernel power the chosen order implies.
void walk_kernels(const Field& f, int axis, Index4& order, const CoefficientSet& a,
                  QuadratureRule rule, Field& out) {
    if (axis < 0) {
        const MultiIndex i(order[0], order[1], order[2], order[3]);
        if (i.is_dominant()) return;
        if (const Field* c = a.get(i)) accumulate_product(out, *c, f);
        return;
    }
    const int m = kOrderProfile[axis];
    for (int c = 0; c <= m; ++c) {
        order[axis] = c;
        // Skip branches with no coefficient below them.
        bool needed = false;
        for (const MultiIndex& i : all_indices()) {
            bool match = !i.is_dominant() && a.get(i) != nullptr;
            for (int k = axis; k < kDims && match; ++k) match = i[k] == order[k];
            if (match) {
                needed = true;
                break;
            }
        }
        if (!needed) continue;
        if (c == m)
            walk_kernels(f, axis - 1, order, a, rule, out);
        else
            walk_kernels(cumulative_integral(f, axis, m - 1 - c, rule), axis - 1, order, a, rule, out);
    }
    order[axis] = 0;
}

}  // namespace

Field apply_N_minus_identity(const Field& b, const CoefficientSet& a, QuadratureRule rule) {
    require_grid(a.grid(), b, "b");
    Field out(b.grid(), AxisSet::all());
    if (a.empty()) return out;
    Index4 order{};
    walk_kernels(broadcast(b, AxisSet::all()), kDims - 1, order, a, rule, out);
    return out;
}

Field apply_N(const Field& b, const CoefficientSet& a, QuadratureRule rule) {
    Field out = apply_N_minus_identity(b, a, rule);
    accumulate(out, b);
    return out;
}

Field build_rhs_Zhat(const EVector& phi, const CoefficientSet& a, QuadratureRule rule) {
    if (!(phi.grid() == a.grid())) throw std::invalid_argument("data and coefficients on different grids");
    Field z = broadcast(phi[MultiIndex::dominant()], AxisSet::all());
    for (const MultiIndex& i : all_indices()) {
        const Field* c = a.get(i);
        if (!c) continue;
        accumulate_product(z, *c, g0_derivative(phi, i, rule), -1.0);
    }
    return z;
}

double residual(const Field& b, const CoefficientSet& a, const Field& zhat, NormConfig norm,
                QuadratureRule rule) {
    return lp_norm(apply_N(b, a, rule) - zhat, norm);
}

IntegralSolve solve_picard(const CoefficientSet& a, const Field& zhat, const SolverSettings& s) {
    if (!(s.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (s.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    require_grid(a.grid(), zhat, "right-hand side");
    const Field z = broadcast(zhat, AxisSet::all());
    const double threshold = s.tol * (1.0 + lp_norm(z, s.norm));

    IntegralSolve out{z, {}};
    for (int it = 1; it <= s.max_iter; ++it) {
        Field next = z - apply_N_minus_identity(out.b, a, s.rule);
        const double update = lp_norm(next - out.b, s.norm);
        out.b = std::move(next);
        out.report.iterations = it;
        out.report.update_norms.push_back(update);
        if (update <= threshold) {
            out.report.converged = true;
            break;
        }
        if (!std::isfinite(update)) break;
    }
    out.report.residual = out.b.all_finite() ? residual(out.b, a, z, s.norm, s.rule) : kInfinity;
    return out;
}

namespace {

struct SweepTerm {
    unsigned integrated;  // axes with i_k < m_k
    unsigned linear;      // integrated axes with kernel power 1
    const Field* coef;
    Index4 coef_stride;
    std::size_t first_table;
};

}  // namespace

// Every kernel is a tensor product of 1D causal operators T_k with
// (T g)_j = (T g)_{j-1} + alpha_j g_j + beta g_{j-1}. Writing a power-1 axis as
// x_k T_k - T_k x_k reduces each term to power-0 tables F_R = T(x^R b), R a subset
// of the power-1 axes. Expanding prod_k (1 - S_k) F = prod_k (alpha_k + beta_k S_k) g
// over the integrated axes gives F(x) from already-known neighbours plus a
// diagonal multiple of b(x), which is solved for node by node.
IntegralSolve solve_sweep(const CoefficientSet& a, const Field& zhat, const SolverSettings& s) {
    require_grid(a.grid(), zhat, "right-hand side");
    const Grid4& grid = a.grid();
    const Field z = broadcast(zhat, AxisSet::all());
    const Index4 n = grid.counts();
    const bool trap = s.rule == QuadratureRule::trapezoid;

    std::array<double, kDims> beta{};
    for (int k = 0; k < kDims; ++k) beta[k] = trap ? 0.5 * grid.spacing(k) : grid.spacing(k);
    auto alpha = [&](int k, int j) { return (trap && j > 0) ? 0.5 * grid.spacing(k) : 0.0; };

    std::vector<SweepTerm> terms;
    std::size_t table_count = 0;
    for (const MultiIndex& i : all_indices()) {
        const Field* c = a.get(i);
        if (!c) continue;
        SweepTerm t{0u, 0u, c, broadcast_strides(*c), table_count};
        for (int k = 0; k < kDims; ++k) {
            if (i[k] < kOrderProfile[k]) t.integrated |= 1u << k;
            if (kOrderProfile[k] - 1 - i[k] == 1) t.linear |= 1u << k;
        }
        table_count += std::size_t{1} << std::popcount(t.linear);
        terms.push_back(t);
    }

    const std::size_t s3 = 1, s2 = static_cast<std::size_t>(n[3]), s1 = s2 * n[2], s0 = s1 * n[1];
    const std::array<std::size_t, kDims> full_stride{s0, s1, s2, s3};
    // Tables keep two slabs along axis 1: the current and the previous one.
    std::vector<std::vector<double>> tables(table_count, std::vector<double>(2 * s0, 0.0));
    std::vector<double> known(table_count, 0.0);
    std::array<std::vector<double>, kDims> coord;
    for (int k = 0; k < kDims; ++k)
        for (int j = 0; j < n[k]; ++j) coord[k].push_back(grid.node(k, j));

    Field b(grid, AxisSet::all());
    auto bv = b.values();
    auto zv = z.values();
    Index4 j{};
    for (j[0] = 0; j[0] < n[0]; ++j[0])
        for (j[1] = 0; j[1] < n[1]; ++j[1])
            for (j[2] = 0; j[2] < n[2]; ++j[2])
                for (j[3] = 0; j[3] < n[3]; ++j[3]) {
                    const std::size_t p = j[0] * s0 + j[1] * s1 + j[2] * s2 + j[3] * s3;
                    const std::size_t slab = j[1] * s1 + j[2] * s2 + j[3] * s3;
                    const std::size_t cur = (j[0] & 1) * s0;
                    unsigned mask = 0;
                    for (int k = 0; k < kDims; ++k)
                        if (j[k] > 0) mask |= 1u << k;

                    auto table_at = [&](const std::vector<double>& tab, unsigned shift) {
                        std::size_t off = slab;
                        for (int k = 1; k < kDims; ++k)
                            if (shift >> k & 1u) off -= full_stride[k];
                        const std::size_t base = (shift & 1u) ? ((j[0] - 1) & 1) * s0 : cur;
                        return tab[base + off];
                    };
                    auto shifted_b = [&](unsigned shift, unsigned r) {
                        std::size_t q = p;
                        double w = 1.0;
                        for (int k = 0; k < kDims; ++k) {
                            const int jk = (shift >> k & 1u) ? j[k] - 1 : j[k];
                            if (shift >> k & 1u) q -= full_stride[k];
                            if (r >> k & 1u) w *= coord[k][jk];
                        }
                        return w * bv[q];
                    };

                    double known_total = 0.0, diag_total = 0.0;
                    for (const SweepTerm& t : terms) {
                        std::size_t off = 0;
                        for (int k = 0; k < kDims; ++k) off += static_cast<std::size_t>(j[k]) * t.coef_stride[k];
                        const double coef = t.coef->values()[off];
                        const unsigned live = t.integrated & mask;
                        double alpha_all = 1.0;
                        for (int k = 0; k < kDims; ++k)
                            if (t.integrated >> k & 1u) alpha_all *= alpha(k, j[k]);

                        double integral = 0.0;
                        std::size_t slot = t.first_table;
                        // Enumerate subsets R of the power-1 axes in increasing bit order.
                        for (unsigned r = 0;; r = (r - t.linear) & t.linear) {
                            const std::vector<double>& tab = tables[slot];
                            double val = 0.0;
                            for (unsigned e = live; e != 0; e = (e - 1) & live) {
                                val += (std::popcount(e) & 1) ? table_at(tab, e) : -table_at(tab, e);
                                double w = 1.0;
                                for (int k = 0; k < kDims; ++k) {
                                    if (!(t.integrated >> k & 1u)) continue;
                                    w *= (e >> k & 1u) ? beta[k] : alpha(k, j[k]);
                                }
                                if (w != 0.0) val += w * shifted_b(e, r);
                            }
                            known[slot] = val;
                            double x_rest = (std::popcount(r) & 1) ? -1.0 : 1.0;
                            for (int k = 0; k < kDims; ++k)
                                if ((t.linear & ~r) >> k & 1u) x_rest *= coord[k][j[k]];
                            integral += x_rest * val;
                            ++slot;
                            if (r == t.linear) break;
                        }
                        known_total += coef * integral;
                        if (t.linear == 0) diag_total += coef * alpha_all;
                    }

                    const double value = (zv[p] - known_total) / (1.0 + diag_total);
                    bv[p] = value;

                    for (const SweepTerm& t : terms) {
                        double alpha_all = 1.0;
                        for (int k = 0; k < kDims; ++k)
                            if (t.integrated >> k & 1u) alpha_all *= alpha(k, j[k]);
                        std::size_t slot = t.first_table;
                        for (unsigned r = 0;; r = (r - t.linear) & t.linear) {
                            double xr = 1.0;
                            for (int k = 0; k < kDims; ++k)
                                if (r >> k & 1u) xr *= coord[k][j[k]];
                            tables[slot][cur + slab] = known[slot] + alpha_all * xr * value;
                            ++slot;
                            if (r == t.linear) break;
                        }
                    }
                }

    IntegralSolve out{std::move(b), {}};
    out.report.iterations = 1;
    out.report.residual = out.b.all_finite() ? residual(out.b, a, z, s.norm, s.rule) : kInfinity;
    out.report.update_norms.push_back(out.report.residual);
    out.report.converged = out.report.residual <= s.tol * (1.0 + lp_norm(z, s.norm));
    return out;
}

IntegralSolve solve_integral_equation(const CoefficientSet& a, const Field& zhat, const SolverSettings& s) {
    return s.mode == IterationMode::picard ? solve_picard(a, zhat, s) : solve_sweep(a, zhat, s);
}

ProblemSolve solve_problem(const CoefficientSet& a, const EVector& phi, const SolverSettings& s) {
    const Field zhat = build_rhs_Zhat(phi, a, s.rule);
    IntegralSolve solved = solve_integral_equation(a, zhat, s);
    EVector source = phi;
    source.set(MultiIndex::dominant(), solved.b);
    Field u = apply_Q(source, s.rule);
    return {Solution{std::move(u), std::move(solved.b), std::move(source)}, std::move(solved.report)};
}

}  // namespace goursat
