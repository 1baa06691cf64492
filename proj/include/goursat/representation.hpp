#pragma once

#include "goursat/grid.hpp"
#include "goursat/multi_index.hpp"

#include <optional>

namespace goursat {

/// Output of the end-to-end solve: u, its dominant derivative b, and the data it came from.
struct Solution {
    Field u;
    Field b;
    EVector source;
};

/// Heaviside step with theta(0) = 0.
constexpr double heaviside(double xi) { return xi > 0.0 ? 1.0 : 0.0; }

/// Kernel of the volumetric part of the representation:
/// (x3 - t3)(x4 - t4) * prod_k theta(x_k - t_k).
double kernel_R0(const Point4& tau, const Point4& x);

/// Mixed derivative D^deriv of the single representation term fed by `component`
/// in slot `slot`.
///
/// A term is the component integrated over its full-order axes with kernel
/// (x_k - t_k)^(m_k - 1) / (m_k - 1)! and multiplied by x_k^(i_k) on the
/// remaining axes. Differentiating lowers kernel powers on integrated axes
/// (reaching plain evaluation at full order) and monomial degrees elsewhere.
/// Returns nullopt when the derivative vanishes identically. The result is
/// not broadcast: it varies only over the axes the term actually depends on.
std::optional<Field> representation_term(const Field& component, const MultiIndex& slot,
                                         const Index4& deriv,
                                         QuadratureRule rule = QuadratureRule::trapezoid);

/// u = Q b: the sum of all 36 representation terms.
Field apply_Q(const EVector& b, QuadratureRule rule = QuadratureRule::trapezoid);

/// g0: the representation of the boundary part of phi (dominant slot ignored).
Field build_g0(const EVector& phi, QuadratureRule rule = QuadratureRule::trapezoid);

/// D^i g0 computed term-wise. Throws std::invalid_argument for the dominant index,
/// whose derivative of g0 vanishes identically.
Field g0_derivative(const EVector& phi, const MultiIndex& i,
                    QuadratureRule rule = QuadratureRule::trapezoid);

/// All 36 traces of u: D^i u restricted to x_k = 0 on every axis below full order,
/// by finite differences with the min-norm boundary closure.
/// Throws std::invalid_argument if axes 3 or 4 have fewer than 4 nodes.
EVector extract_EVector(const Field& u);

}  // namespace goursat
