#pragma once

#include "goursat/grid.hpp"
#include "goursat/multi_index.hpp"

#include <optional>
#include <vector>

namespace goursat {

/// Coefficients a_i of the lower-order terms, one optional field per
/// non-dominant index. Absent entries are identically zero. A coefficient may
/// vary over any subset of axes and is broadcast over the grid.
class CoefficientSet {
public:
    explicit CoefficientSet(const Grid4& grid);

    /// Every non-dominant coefficient set to the same constant.
    static CoefficientSet constant(const Grid4& grid, double value);

    const Grid4& grid() const { return grid_; }
    /// Throws std::invalid_argument for the dominant index or a grid mismatch.
    void set(const MultiIndex& i, Field value);
    void clear(const MultiIndex& i);
    /// nullptr when the coefficient is identically zero.
    const Field* get(const MultiIndex& i) const;
    bool empty() const;
    std::size_t nonzero_count() const;

private:
    Grid4 grid_;
    std::vector<std::optional<Field>> coef_;
};

/// All 36 mixed derivatives D^i u on the full grid, indexed by slot.
class DerivativeBundle {
public:
    DerivativeBundle(const Grid4& grid, std::vector<Field> parts);

    const Grid4& grid() const { return grid_; }
    const Field& operator[](const MultiIndex& i) const { return parts_[i.slot()]; }

private:
    Grid4 grid_;
    std::vector<Field> parts_;
};

/// Second-order finite-difference derivatives, built hierarchically so each
/// D^i reuses the derivative that differs from it on its last differentiated axis.
/// Uses the min-norm boundary closure.
/// Throws std::invalid_argument if axes 3 or 4 have fewer than 4 nodes.
DerivativeBundle finite_diff_bundle(const Field& u);

/// D1 D2 D3^2 D4^2 u + sum_i a_i D^i u, pointwise on the full grid.
Field apply_V1122(const DerivativeBundle& bundle, const CoefficientSet& a);

}  // namespace goursat
