#pragma once

#include "goursat/grid.hpp"

namespace goursat {

/// One-sided second-order stencils used on the two end nodes of an axis.
enum class Closure {
    /// Shortest stencils: 3 points for first, 4 points for second derivatives.
    /// Smallest truncation error; used for face derivatives of boundary data.
    compact,
    /// One node wider with minimum-norm weights (exact for the same degrees).
    /// Amplifies round-off about 1.6x (first) and 2.1x (second derivative) less
    /// per axis; used for high-order mixed derivatives of computed fields.
    /// Falls back to `compact` when the axis is too short.
    min_norm,
};

/// Second-order finite-difference derivative of `order` (1 or 2) along `axis`:
/// central stencils inside, the chosen one-sided closure on the end nodes.
/// A field that does not vary over `axis` differentiates to zero.
/// Throws std::invalid_argument if the axis has too few nodes for the stencil.
Field differentiate(const Field& f, int axis, int order, Closure closure = Closure::compact);

/// Applies differentiate() once per axis with the given per-axis orders (0..2).
Field mixed_derivative(const Field& f, const Index4& orders, Closure closure = Closure::compact);

/// Smallest node count per axis the stencils above accept for a given order.
constexpr int min_nodes_for_order(int order) { return order <= 1 ? 3 : 4; }

}  // namespace goursat
