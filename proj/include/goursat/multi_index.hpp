#pragma once

#include "goursat/grid.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace goursat {

/// Highest derivative order per axis of the operator: D1 D2 D3^2 D4^2.
inline constexpr Index4 kOrderProfile{1, 1, 2, 2};
inline constexpr int kIndexCount = 36;

/// Derivative multi-index (i1, i2, i3, i4) with i1,i2 in {0,1} and i3,i4 in {0,1,2}.
class MultiIndex {
public:
    constexpr MultiIndex() = default;
    /// Throws std::invalid_argument when a component is out of range.
    MultiIndex(int i1, int i2, int i3, int i4);

    static constexpr MultiIndex dominant() { return from_slot(kIndexCount - 1); }
    /// Inverse of slot().
    static constexpr MultiIndex from_slot(int slot) {
        MultiIndex m;
        m.order_ = {slot / 18, (slot / 9) % 2, (slot / 3) % 3, slot % 3};
        return m;
    }
    /// Parses "i1,i2,i3,i4" (spaces allowed).
    static MultiIndex parse(std::string_view text);

    constexpr int operator[](int axis) const { return order_[axis]; }
    constexpr const Index4& orders() const { return order_; }
    constexpr int total() const { return order_[0] + order_[1] + order_[2] + order_[3]; }
    constexpr bool is_dominant() const { return slot() == kIndexCount - 1; }

    /// Dense position in [0, 36), lexicographic in (i1, i2, i3, i4).
    constexpr int slot() const {
        return ((order_[0] * 2 + order_[1]) * 3 + order_[2]) * 3 + order_[3];
    }

    /// Axes at full order (i_k = m_k): the variables the trace of this index depends on.
    constexpr AxisSet full_axes() const {
        AxisSet s;
        for (int k = 0; k < kDims; ++k)
            if (order_[k] == kOrderProfile[k]) s = s.with(k);
        return s;
    }

    std::string name() const;  ///< "i1,i2,i3,i4"

    friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    Index4 order_{0, 0, 0, 0};
};

/// All 36 indices in slot order; the dominant index is last.
const std::array<MultiIndex, kIndexCount>& all_indices();

/// Components of the data vector of the nonclassical problem: one field per
/// multi-index, where component i varies exactly over i.full_axes().
/// The dominant slot holds the volumetric right-hand side.
class EVector {
public:
    explicit EVector(const Grid4& grid);

    const Grid4& grid() const { return grid_; }
    const Field& operator[](const MultiIndex& i) const { return parts_[i.slot()]; }
    /// Replaces one component; its axes must equal i.full_axes().
    void set(const MultiIndex& i, Field value);
    /// Mutable access to the values of a component (axes stay fixed).
    std::span<double> values(const MultiIndex& i) { return parts_[i.slot()].values(); }

    /// Copy with the dominant component zeroed.
    EVector boundary_part() const;

private:
    Grid4 grid_;
    std::vector<Field> parts_;
};

}  // namespace goursat
