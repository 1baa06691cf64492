#include "goursat/pde_operator.hpp"

#include "goursat/finite_difference.hpp"

#include <stdexcept>

namespace goursat {

CoefficientSet::CoefficientSet(const Grid4& grid) : grid_(grid), coef_(kIndexCount) {}

CoefficientSet CoefficientSet::constant(const Grid4& grid, double value) {
    CoefficientSet a(grid);
    for (const MultiIndex& i : all_indices())
        if (!i.is_dominant()) a.set(i, Field::constant(grid, AxisSet{}, value));
    return a;
}

void CoefficientSet::set(const MultiIndex& i, Field value) {
    if (i.is_dominant()) throw std::invalid_argument("the dominant index carries no coefficient");
    if (!(value.grid() == grid_)) throw std::invalid_argument("coefficient lives on a different grid");
    coef_[i.slot()] = std::move(value);
}

void CoefficientSet::clear(const MultiIndex& i) { coef_[i.slot()].reset(); }

const Field* CoefficientSet::get(const MultiIndex& i) const {
    const auto& c = coef_[i.slot()];
    return c ? &*c : nullptr;
}

bool CoefficientSet::empty() const { return nonzero_count() == 0; }

std::size_t CoefficientSet::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& c : coef_) n += c ? 1 : 0;
    return n;
}

DerivativeBundle::DerivativeBundle(const Grid4& grid, std::vector<Field> parts)
    : grid_(grid), parts_(std::move(parts)) {
    if (parts_.size() != kIndexCount) throw std::invalid_argument("a derivative bundle needs 36 fields");
    for (const Field& f : parts_)
        if (!(f.grid() == grid_)) throw std::invalid_argument("bundle field on a different grid");
}

DerivativeBundle finite_diff_bundle(const Field& u) {
    const Grid4& grid = u.grid();
    for (int k = 2; k < kDims; ++k)
        if (grid.count(k) < min_nodes_for_order(2))
            throw std::invalid_argument("derivative bundle needs at least 4 nodes on axes 3 and 4");
    std::vector<Field> parts;
    parts.reserve(kIndexCount);
    for (const MultiIndex& i : all_indices()) {
        int last = -1;
        for (int k = 0; k < kDims; ++k)
            if (i[k] > 0) last = k;
        if (last < 0) {
            parts.push_back(broadcast(u, AxisSet::all()));
            continue;
        }
        Index4 parent = i.orders();
        parent[last] = 0;
        const MultiIndex p(parent[0], parent[1], parent[2], parent[3]);
        parts.push_back(differentiate(parts[p.slot()], last, i[last], Closure::min_norm));
    }
    return DerivativeBundle(grid, std::move(parts));
}

Field apply_V1122(const DerivativeBundle& bundle, const CoefficientSet& a) {
    if (!(bundle.grid() == a.grid())) throw std::invalid_argument("bundle and coefficients on different grids");
    Field out = bundle[MultiIndex::dominant()];
    for (const MultiIndex& i : all_indices()) {
        if (const Field* c = a.get(i)) accumulate_product(out, *c, bundle[i]);
    }
    return out;
}

}  // namespace goursat
