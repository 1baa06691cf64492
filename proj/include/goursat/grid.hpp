#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace goursat {

/// Number of independent variables. Axis ids are 0-based in code (axis 0 is x1).
inline constexpr int kDims = 4;

/// Uniform tensor grid over (0,h1)x(0,h2)x(0,h3)x(0,h4), both endpoints included.
class Grid4 {
public:
    /// Throws std::invalid_argument on a non-positive length or a count below 3.
    Grid4(std::array<double, kDims> lengths, std::array<int, kDims> counts);

    double length(int axis) const { return lengths_[axis]; }
    int count(int axis) const { return counts_[axis]; }
    double spacing(int axis) const { return lengths_[axis] / (counts_[axis] - 1); }

    /// Node coordinate; the last node is the domain length exactly.
    double node(int axis, int j) const;

    const std::array<double, kDims>& lengths() const { return lengths_; }
    const std::array<int, kDims>& counts() const { return counts_; }
    std::size_t node_count() const;

    friend bool operator==(const Grid4&, const Grid4&) = default;

private:
    std::array<double, kDims> lengths_;
    std::array<int, kDims> counts_;
};

Grid4 make_grid(std::array<double, kDims> lengths, std::array<int, kDims> counts);

/// Convenience: unit box with n nodes per axis.
Grid4 unit_grid(int n);

/// Subset of {x1,x2,x3,x4} a field varies over.
class AxisSet {
public:
    constexpr AxisSet() = default;
    constexpr AxisSet(std::initializer_list<int> axes) {
        for (int a : axes) bits_ |= static_cast<std::uint8_t>(1u << a);
    }
    static constexpr AxisSet all() { return from_bits(0xF); }
    static constexpr AxisSet from_bits(unsigned bits) {
        AxisSet s;
        s.bits_ = static_cast<std::uint8_t>(bits & 0xF);
        return s;
    }

    constexpr bool has(int axis) const { return (bits_ >> axis) & 1u; }
    constexpr AxisSet with(int axis) const { return from_bits(bits_ | (1u << axis)); }
    constexpr AxisSet without(int axis) const { return from_bits(bits_ & ~(1u << axis)); }
    constexpr unsigned bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const {
        int n = 0;
        for (int k = 0; k < kDims; ++k) n += has(k) ? 1 : 0;
        return n;
    }
    constexpr bool subset_of(AxisSet other) const { return (bits_ & ~other.bits_) == 0; }
    std::vector<int> list() const;

    constexpr AxisSet operator|(AxisSet o) const { return from_bits(bits_ | o.bits_); }
    constexpr AxisSet operator&(AxisSet o) const { return from_bits(bits_ & o.bits_); }
    friend constexpr bool operator==(AxisSet, AxisSet) = default;

private:
    std::uint8_t bits_ = 0;
};

using Index4 = std::array<int, kDims>;
using Point4 = std::array<double, kDims>;

/// Real-valued samples over the sub-grid spanned by `axes`.
///
/// Storage is always addressed as a 4D row-major block (axis 4 fastest) in
/// which absent axes have extent 1, so a field of any dimension can be
/// indexed and broadcast uniformly.
class Field {
public:
    Field(const Grid4& grid, AxisSet axes);
    /// Throws std::invalid_argument on a size mismatch or a non-finite value.
    Field(const Grid4& grid, AxisSet axes, std::vector<double> values);

    static Field constant(const Grid4& grid, AxisSet axes, double value);

    /// Samples fn(x) at every node; coordinates of absent axes are passed as 0.
    template <class Fn>
    static Field sample(const Grid4& grid, AxisSet axes, Fn&& fn) {
        Field f(grid, axes);
        const Index4 d = f.dims();
        std::size_t p = 0;
        Point4 x{};
        for (int i0 = 0; i0 < d[0]; ++i0) {
            x[0] = axes.has(0) ? grid.node(0, i0) : 0.0;
            for (int i1 = 0; i1 < d[1]; ++i1) {
                x[1] = axes.has(1) ? grid.node(1, i1) : 0.0;
                for (int i2 = 0; i2 < d[2]; ++i2) {
                    x[2] = axes.has(2) ? grid.node(2, i2) : 0.0;
                    for (int i3 = 0; i3 < d[3]; ++i3) {
                        x[3] = axes.has(3) ? grid.node(3, i3) : 0.0;
                        f.values_[p++] = fn(x);
                    }
                }
            }
        }
        return f;
    }

    const Grid4& grid() const { return grid_; }
    AxisSet axes() const { return axes_; }
    int dimension() const { return axes_.size(); }
    /// Extent per axis: the grid count for present axes, 1 for absent ones.
    Index4 dims() const;
    std::size_t size() const { return values_.size(); }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Linear offset of a 4D node index; indices along absent axes are ignored.
    std::size_t offset(const Index4& idx) const;
    double at(const Index4& idx) const { return values_[offset(idx)]; }
    double& at(const Index4& idx) { return values_[offset(idx)]; }

    double max_abs() const;
    bool all_finite() const;

private:
    Grid4 grid_;
    AxisSet axes_;
    std::vector<double> values_;
};

/// Per-axis strides of `f` when viewed as a 4D block; absent axes get stride 0.
Index4 broadcast_strides(const Field& f);

/// Copy of `f` expanded to `target` (which must contain f's axes).
Field broadcast(const Field& f, AxisSet target);

/// dst += scale * src, broadcasting src over dst. src axes must be a subset of dst axes.
void accumulate(Field& dst, const Field& src, double scale = 1.0);

/// dst += scale * coef * src (pointwise), broadcasting both over dst.
void accumulate_product(Field& dst, const Field& coef, const Field& src, double scale = 1.0);

/// Pointwise combination on the union of the operands' axes.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& f);

/// f(x) * x_axis; the result gains `axis`.
Field multiply_by_coordinate(const Field& f, int axis);

/// max |a - b| over the union grid.
double max_abs_difference(const Field& a, const Field& b);

enum class QuadratureRule { trapezoid, left_rectangle };

/// F(x) = int_0^{x_axis} (x_axis - t)^power / power! f(..., t, ...) dt at every node,
/// via a single prefix sweep. power must be 0 or 1. The result gains `axis`.
Field cumulative_integral(const Field& f, int axis, int power,
                          QuadratureRule rule = QuadratureRule::trapezoid);

enum class Side { lower, upper };

struct FaceFix {
    int axis;
    Side side = Side::lower;
};

/// Restriction of f to the hyperplanes x_axis = 0 (lower) or x_axis = h (upper).
/// Fixed axes that f does not vary over are ignored.
Field face_restrict(const Field& f, std::span<const FaceFix> fixes);
Field face_restrict(const Field& f, std::initializer_list<FaceFix> fixes);

/// Restriction to x_k = 0 for every k in `fixed`.
Field restrict_to_origin(const Field& f, AxisSet fixed);

}  // namespace goursat
