#pragma once

// Independent reference implementations used only by tests: direct
// quadrature sums and dense assembly of the discrete integral operator.

#include "goursat/grid.hpp"
#include "goursat/multi_index.hpp"
#include "goursat/pde_operator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace oracle {

using goursat::AxisSet;
using goursat::CoefficientSet;
using goursat::Field;
using goursat::Grid4;
using goursat::Index4;
using goursat::kDims;
using goursat::MultiIndex;
using goursat::QuadratureRule;

/// Weight of node i in the integral up to node j along one axis, including
/// the kernel factor (x_j - x_i)^power.
inline double axis_weight(const Grid4& g, int axis, int j, int i, int power, QuadratureRule rule) {
    if (i > j || j == 0) return 0.0;
    const double h = g.spacing(axis);
    double w;
    if (rule == QuadratureRule::trapezoid)
        w = (i == 0 || i == j) ? 0.5 * h : h;
    else
        w = i < j ? h : 0.0;
    const double dx = g.node(axis, j) - g.node(axis, i);
    return power == 0 ? w : w * dx;
}

/// Direct O(n^2) evaluation of cumulative_integral along one axis.
inline Field naive_integral(const Field& f, int axis, int power, QuadratureRule rule) {
    const Grid4& g = f.grid();
    Field src = goursat::broadcast(f, f.axes().with(axis));
    Field out(g, src.axes());
    const Index4 d = out.dims();
    Index4 x{};
    for (x[0] = 0; x[0] < d[0]; ++x[0])
        for (x[1] = 0; x[1] < d[1]; ++x[1])
            for (x[2] = 0; x[2] < d[2]; ++x[2])
                for (x[3] = 0; x[3] < d[3]; ++x[3]) {
                    double s = 0.0;
                    for (int i = 0; i <= x[axis]; ++i) {
                        Index4 t = x;
                        t[axis] = i;
                        s += axis_weight(g, axis, x[axis], i, power, rule) * src.at(t);
                    }
                    out.at(x) = s;
                }
    return out;
}

inline std::size_t linear(const Grid4& g, const Index4& x) {
    std::size_t p = 0;
    for (int k = 0; k < kDims; ++k) p = p * static_cast<std::size_t>(g.count(k)) + x[k];
    return p;
}

inline Index4 unlinear(const Grid4& g, std::size_t p) {
    Index4 x{};
    for (int k = kDims - 1; k >= 0; --k) {
        x[k] = static_cast<int>(p % g.count(k));
        p /= g.count(k);
    }
    return x;
}

/// Dense matrix of K_i: product over axes of held (delta) or integrated weights.
inline Eigen::MatrixXd dense_kernel(const Grid4& g, const MultiIndex& idx, QuadratureRule rule) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Index4 x = unlinear(g, static_cast<std::size_t>(r));
        for (Eigen::Index c = 0; c < n; ++c) {
            const Index4 t = unlinear(g, static_cast<std::size_t>(c));
            double w = 1.0;
            for (int k = 0; k < kDims && w != 0.0; ++k) {
                const int m = goursat::kOrderProfile[k];
                if (idx[k] == m)
                    w *= (x[k] == t[k]) ? 1.0 : 0.0;
                else
                    w *= axis_weight(g, k, x[k], t[k], m - 1 - idx[k], rule);
            }
            K(r, c) = w;
        }
    }
    return K;
}

inline Eigen::VectorXd to_vector(const Field& f) {
    const Field full = goursat::broadcast(f, AxisSet::all());
    Eigen::VectorXd v(static_cast<Eigen::Index>(full.size()));
    for (std::size_t p = 0; p < full.size(); ++p) v[static_cast<Eigen::Index>(p)] = full.values()[p];
    return v;
}

inline Field to_field(const Grid4& g, const Eigen::VectorXd& v) {
    std::vector<double> values(v.data(), v.data() + v.size());
    return Field(g, AxisSet::all(), std::move(values));
}

/// Dense (N - I) assembled from the naive weights.
inline Eigen::MatrixXd dense_N_minus_identity(const CoefficientSet& a, QuadratureRule rule) {
    const Grid4& g = a.grid();
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (const MultiIndex& i : goursat::all_indices()) {
        const Field* c = a.get(i);
        if (!c) continue;
        const Eigen::VectorXd coef = to_vector(*c);
        M += coef.asDiagonal() * dense_kernel(g, i, rule);
    }
    return M;
}

/// Solves (I + K) b = z densely.
inline Field dense_solve(const CoefficientSet& a, const Field& z,
                         QuadratureRule rule = QuadratureRule::trapezoid) {
    const auto n = static_cast<Eigen::Index>(a.grid().node_count());
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) + dense_N_minus_identity(a, rule);
    Eigen::VectorXd b = A.partialPivLu().solve(to_vector(z));
    return to_field(a.grid(), b);
}

/// Random full-grid field with values in [-1, 1].
inline Field random_field(const Grid4& g, AxisSet axes, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Field f(g, axes);
    for (double& v : f.values()) v = dist(rng);
    return f;
}

/// All 35 coefficients random node fields in [-1, 1].
inline CoefficientSet random_coefficients(const Grid4& g, std::mt19937_64& rng) {
    CoefficientSet a(g);
    for (const MultiIndex& i : goursat::all_indices())
        if (!i.is_dominant()) a.set(i, random_field(g, AxisSet::all(), rng));
    return a;
}

}  // namespace oracle
