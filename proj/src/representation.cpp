#include "goursat/representation.hpp"

#include "goursat/finite_difference.hpp"

#include <array>
#include <stdexcept>

namespace goursat {

double kernel_R0(const Point4& tau, const Point4& x) {
    double theta = 1.0;
    for (int k = 0; k < kDims; ++k) theta *= heaviside(x[k] - tau[k]);
    return (x[2] - tau[2]) * (x[3] - tau[3]) * theta;
}

std::optional<Field> representation_term(const Field& component, const MultiIndex& slot,
                                         const Index4& deriv, QuadratureRule rule) {
    // Monomial factors first: a derivative above the monomial degree kills the term.
    for (int k = 0; k < kDims; ++k) {
        if (slot[k] < kOrderProfile[k] && deriv[k] > slot[k]) return std::nullopt;
    }
    Field term = component;
    for (int k = 0; k < kDims; ++k) {
        const int m = kOrderProfile[k];
        if (slot[k] == m) {
            if (deriv[k] < m) term = cumulative_integral(term, k, m - 1 - deriv[k], rule);
        } else if (slot[k] - deriv[k] == 1) {
            term = multiply_by_coordinate(term, k);
        }
    }
    return term;
}

namespace {

// Terms sharing an axis set are summed at their own dimension before the
// single broadcast into the full grid.
Field sum_terms(const EVector& b, const Index4& deriv, bool include_dominant, QuadratureRule rule) {
    std::array<std::optional<Field>, 16> partial;
    for (const MultiIndex& slot : all_indices()) {
        if (slot.is_dominant() && !include_dominant) continue;
        auto term = representation_term(b[slot], slot, deriv, rule);
        if (!term) continue;
        auto& acc = partial[term->axes().bits()];
        if (acc)
            accumulate(*acc, *term);
        else
            acc = std::move(*term);
    }
    Field u(b.grid(), AxisSet::all());
    for (const auto& p : partial)
        if (p) accumulate(u, *p);
    return u;
}

}  // namespace

Field apply_Q(const EVector& b, QuadratureRule rule) { return sum_terms(b, Index4{}, true, rule); }

Field build_g0(const EVector& phi, QuadratureRule rule) {
    return sum_terms(phi, Index4{}, false, rule);
}

Field g0_derivative(const EVector& phi, const MultiIndex& i, QuadratureRule rule) {
    if (i.is_dominant())
        throw std::invalid_argument("the dominant derivative of g0 vanishes; not a valid request");
    return sum_terms(phi, i.orders(), false, rule);
}

EVector extract_EVector(const Field& u) {
    const Grid4& grid = u.grid();
    for (int k = 2; k < kDims; ++k)
        if (grid.count(k) < min_nodes_for_order(2))
            throw std::invalid_argument("trace extraction needs at least 4 nodes on axes 3 and 4");
    const Field full = broadcast(u, AxisSet::all());
    EVector out(grid);
    for (const MultiIndex& i : all_indices()) {
        const AxisSet free = i.full_axes();
        Field f = full;
        // Differentiate and restrict the anchored axes first so later passes run on smaller blocks.
        for (int k = 0; k < kDims; ++k) {
            if (free.has(k)) continue;
            f = differentiate(f, k, i[k], Closure::min_norm);
            f = restrict_to_origin(f, AxisSet{k});
        }
        for (int k : free.list()) f = differentiate(f, k, i[k], Closure::min_norm);
        out.set(i, std::move(f));
    }
    return out;
}

}  // namespace goursat
