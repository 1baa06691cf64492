#include "goursat/finite_difference.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace goursat {

namespace {

// Lower-edge weights in units of h^-order. The min-norm closure spends one more
// node on the least-squares-smallest weights with the same exactness.
std::vector<double> boundary_stencil(int order, int n, Closure closure) {
    const bool wide = closure == Closure::min_norm;
    if (order == 1) {
        if (wide && n >= 4) return {-21.0 / 20, 13.0 / 20, 17.0 / 20, -9.0 / 20};
        return {-1.5, 2.0, -0.5};
    }
    if (wide && n >= 5) return {9.0 / 7, -15.0 / 7, -2.0 / 7, 13.0 / 7, -5.0 / 7};
    return {2.0, -5.0, 4.0, -1.0};
}

}  // namespace

Field differentiate(const Field& f, int axis, int order, Closure closure) {
    if (axis < 0 || axis >= kDims) throw std::invalid_argument("invalid derivative axis");
    if (order == 0) return f;
    if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");
    if (!f.axes().has(axis)) return Field(f.grid(), f.axes());

    const int n = f.grid().count(axis);
    if (n < min_nodes_for_order(order))
        throw std::invalid_argument("axis " + std::to_string(axis + 1) + " has " +
                                    std::to_string(n) + " nodes; too coarse for a derivative of order " +
                                    std::to_string(order));

    const Index4 d = f.dims();
    std::size_t outer = 1, inner = 1;
    for (int k = 0; k < axis; ++k) outer *= static_cast<std::size_t>(d[k]);
    for (int k = axis + 1; k < kDims; ++k) inner *= static_cast<std::size_t>(d[k]);

    const double h = f.grid().spacing(axis);
    Field out(f.grid(), f.axes());
    auto in = f.values();
    auto res = out.values();
    const std::size_t un = static_cast<std::size_t>(n);

    const std::vector<double> edge = boundary_stencil(order, n, closure);
    const std::size_t w = edge.size();
    const double c = order == 1 ? 1.0 / h : 1.0 / (h * h);
    // First derivatives are odd under reflection, so the upper edge flips sign.
    const double upper_sign = order == 1 ? -1.0 : 1.0;

    for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t base = o * un * inner;
        auto v = [&](std::size_t j, std::size_t i) { return in[base + j * inner + i]; };
        auto r = [&](std::size_t j, std::size_t i) -> double& { return res[base + j * inner + i]; };
        for (std::size_t i = 0; i < inner; ++i) {
            double lo = 0.0, hi = 0.0;
            for (std::size_t q = 0; q < w; ++q) {
                lo += edge[q] * v(q, i);
                hi += edge[q] * v(un - 1 - q, i);
            }
            r(0, i) = c * lo;
            r(un - 1, i) = upper_sign * c * hi;
        }
        if (order == 1) {
            for (std::size_t j = 1; j + 1 < un; ++j)
                for (std::size_t i = 0; i < inner; ++i) r(j, i) = 0.5 * c * (v(j + 1, i) - v(j - 1, i));
        } else {
            for (std::size_t j = 1; j + 1 < un; ++j)
                for (std::size_t i = 0; i < inner; ++i) r(j, i) = c * (v(j - 1, i) - 2.0 * v(j, i) + v(j + 1, i));
        }
    }
    return out;
}

Field mixed_derivative(const Field& f, const Index4& orders, Closure closure) {
    Field out = f;
    for (int k = 0; k < kDims; ++k)
        if (orders[k] > 0) out = differentiate(out, k, orders[k], closure);
    return out;
}

}  // namespace goursat
