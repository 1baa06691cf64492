#include "goursat/grid.hpp"

#include "goursat/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace goursat {

Grid4::Grid4(std::array<double, kDims> lengths, std::array<int, kDims> counts)
    : lengths_(lengths), counts_(counts) {
    for (int k = 0; k < kDims; ++k) {
        if (!(lengths[k] > 0.0) || !std::isfinite(lengths[k]))
            throw std::invalid_argument("grid length of axis " + std::to_string(k + 1) +
                                        " must be positive");
        if (counts[k] < 3)
            throw std::invalid_argument("grid count of axis " + std::to_string(k + 1) +
                                        " must be at least 3");
    }
}

double Grid4::node(int axis, int j) const {
    const int last = counts_[axis] - 1;
    if (j >= last) return lengths_[axis];
    return lengths_[axis] * j / last;
}

std::size_t Grid4::node_count() const {
    std::size_t n = 1;
    for (int c : counts_) n *= static_cast<std::size_t>(c);
    return n;
}

Grid4 make_grid(std::array<double, kDims> lengths, std::array<int, kDims> counts) {
    return Grid4(lengths, counts);
}

Grid4 unit_grid(int n) { return Grid4({1.0, 1.0, 1.0, 1.0}, {n, n, n, n}); }

std::vector<int> AxisSet::list() const {
    std::vector<int> out;
    for (int k = 0; k < kDims; ++k)
        if (has(k)) out.push_back(k);
    return out;
}

namespace {

std::size_t extent_product(const Grid4& grid, AxisSet axes) {
    std::size_t n = 1;
    for (int k = 0; k < kDims; ++k)
        if (axes.has(k)) n *= static_cast<std::size_t>(grid.count(k));
    return n;
}

void require_same_grid(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

Field::Field(const Grid4& grid, AxisSet axes)
    : grid_(grid), axes_(axes), values_(extent_product(grid, axes), 0.0) {}

Field::Field(const Grid4& grid, AxisSet axes, std::vector<double> values)
    : grid_(grid), axes_(axes), values_(std::move(values)) {
    if (values_.size() != extent_product(grid, axes))
        throw std::invalid_argument("field value count does not match its sub-grid");
    if (!all_finite()) throw std::invalid_argument("field contains non-finite values");
}

Field Field::constant(const Grid4& grid, AxisSet axes, double value) {
    Field f(grid, axes);
    std::fill(f.values_.begin(), f.values_.end(), value);
    return f;
}

Index4 Field::dims() const {
    Index4 d{};
    for (int k = 0; k < kDims; ++k) d[k] = axes_.has(k) ? grid_.count(k) : 1;
    return d;
}

std::size_t Field::offset(const Index4& idx) const {
    const Index4 d = dims();
    std::size_t off = 0;
    for (int k = 0; k < kDims; ++k) {
        off *= static_cast<std::size_t>(d[k]);
        if (axes_.has(k)) off += static_cast<std::size_t>(idx[k]);
    }
    return off;
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool Field::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Index4 broadcast_strides(const Field& f) {
    const Index4 d = f.dims();
    Index4 s{};
    int stride = 1;
    for (int k = kDims - 1; k >= 0; --k) {
        s[k] = f.axes().has(k) ? stride : 0;
        stride *= d[k];
    }
    return s;
}

namespace {

// Visits every node of `target` (as a 4D block) with the matching offsets
// into up to two broadcast sources.
template <class Fn>
void for_each_broadcast(const Index4& dims, const Index4& sa, const Index4& sb, Fn&& fn) {
    std::size_t p = 0;
    for (int i0 = 0; i0 < dims[0]; ++i0) {
        const std::size_t a0 = static_cast<std::size_t>(i0) * sa[0];
        const std::size_t b0 = static_cast<std::size_t>(i0) * sb[0];
        for (int i1 = 0; i1 < dims[1]; ++i1) {
            const std::size_t a1 = a0 + static_cast<std::size_t>(i1) * sa[1];
            const std::size_t b1 = b0 + static_cast<std::size_t>(i1) * sb[1];
            for (int i2 = 0; i2 < dims[2]; ++i2) {
                const std::size_t a2 = a1 + static_cast<std::size_t>(i2) * sa[2];
                const std::size_t b2 = b1 + static_cast<std::size_t>(i2) * sb[2];
                for (int i3 = 0; i3 < dims[3]; ++i3) {
                    fn(p++, a2 + static_cast<std::size_t>(i3) * sa[3],
                       b2 + static_cast<std::size_t>(i3) * sb[3]);
                }
            }
        }
    }
}

}  // namespace

Field broadcast(const Field& f, AxisSet target) {
    if (!f.axes().subset_of(target))
        throw std::invalid_argument("broadcast target must contain the field's axes");
    if (f.axes() == target) return f;
    Field out(f.grid(), target);
    accumulate(out, f);
    return out;
}

void accumulate(Field& dst, const Field& src, double scale) {
    require_same_grid(dst, src);
    if (!src.axes().subset_of(dst.axes()))
        throw std::invalid_argument("accumulate: source axes exceed destination axes");
    auto out = dst.values();
    auto in = src.values();
    if (src.axes() == dst.axes()) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * in[i];
        return;
    }
    for_each_broadcast(dst.dims(), broadcast_strides(src), Index4{},
                       [&](std::size_t p, std::size_t a, std::size_t) { out[p] += scale * in[a]; });
}

void accumulate_product(Field& dst, const Field& coef, const Field& src, double scale) {
    require_same_grid(dst, coef);
    require_same_grid(dst, src);
    if (!coef.axes().subset_of(dst.axes()) || !src.axes().subset_of(dst.axes()))
        throw std::invalid_argument("accumulate_product: operand axes exceed destination axes");
    auto out = dst.values();
    auto c = coef.values();
    auto s = src.values();
    if (coef.axes() == dst.axes() && src.axes() == dst.axes()) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * c[i] * s[i];
        return;
    }
    if (coef.axes().empty()) {
        const double cs = scale * c[0];
        if (src.axes() == dst.axes()) {
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += cs * s[i];
        } else {
            for_each_broadcast(dst.dims(), broadcast_strides(src), Index4{},
                               [&](std::size_t p, std::size_t a, std::size_t) { out[p] += cs * s[a]; });
        }
        return;
    }
    for_each_broadcast(dst.dims(), broadcast_strides(coef), broadcast_strides(src),
                       [&](std::size_t p, std::size_t a, std::size_t b) {
                           out[p] += scale * c[a] * s[b];
                       });
}

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out(a.grid(), a.axes() | b.axes());
    accumulate(out, a);
    accumulate(out, b);
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out(a.grid(), a.axes() | b.axes());
    accumulate(out, a);
    accumulate(out, b, -1.0);
    return out;
}

Field operator*(double s, const Field& f) {
    Field out = f;
    for (double& v : out.values()) v *= s;
    return out;
}

Field multiply_by_coordinate(const Field& f, int axis) {
    Field out = broadcast(f, f.axes().with(axis));
    const Index4 d = out.dims();
    std::size_t inner = 1;
    for (int k = axis + 1; k < kDims; ++k) inner *= static_cast<std::size_t>(d[k]);
    const std::size_t n = static_cast<std::size_t>(d[axis]);
    auto v = out.values();
    for (std::size_t p = 0; p < v.size(); ++p) {
        const int j = static_cast<int>((p / inner) % n);
        v[p] *= f.grid().node(axis, j);
    }
    return out;
}

double max_abs_difference(const Field& a, const Field& b) { return (a - b).max_abs(); }

namespace {

// In-place prefix sweep along one axis of a 4D block described by
// (outer, n, inner): element (o, j, i) sits at (o * n + j) * inner + i.
void sweep_axis(std::span<double> v, std::size_t outer, std::size_t n, std::size_t inner,
                double h, int power, QuadratureRule rule) {
    const bool trap = rule == QuadratureRule::trapezoid;
    const double first_weight = trap ? 0.5 * h : h;

    auto run = [&](std::size_t o, std::size_t ib, std::size_t ie) {
        const std::size_t w = ie - ib;
        std::vector<double> prev(w), acc(w, 0.0), cum(w, 0.0);
        double* row0 = v.data() + (o * n) * inner + ib;
        for (std::size_t i = 0; i < w; ++i) {
            prev[i] = row0[i];
            row0[i] = 0.0;
        }
        if (power == 0) {
            for (std::size_t j = 1; j < n; ++j) {
                double* row = v.data() + (o * n + j) * inner + ib;
                for (std::size_t i = 0; i < w; ++i) {
                    const double cur = row[i];
                    acc[i] += trap ? 0.5 * h * (prev[i] + cur) : h * prev[i];
                    row[i] = acc[i];
                    prev[i] = cur;
                }
            }
        } else {
            // G_j = G_{j-1} + h * C_{j-1},  C_j = sum_{i<=j} c_i f_i.
            for (std::size_t i = 0; i < w; ++i) cum[i] = first_weight * prev[i];
            for (std::size_t j = 1; j < n; ++j) {
                double* row = v.data() + (o * n + j) * inner + ib;
                for (std::size_t i = 0; i < w; ++i) {
                    const double cur = row[i];
                    acc[i] += h * cum[i];
                    cum[i] += h * cur;
                    row[i] = acc[i];
                }
            }
        }
    };

    if (outer >= static_cast<std::size_t>(worker_count()) && outer > 1) {
        parallel_for(outer, [&](std::size_t b, std::size_t e) {
            for (std::size_t o = b; o < e; ++o) run(o, 0, inner);
        }, std::max<std::size_t>(1, 4096 / std::max<std::size_t>(1, n * inner)));
    } else {
        for (std::size_t o = 0; o < outer; ++o)
            parallel_for(inner, [&](std::size_t b, std::size_t e) { run(o, b, e); }, 1024);
    }
}

}  // namespace

Field cumulative_integral(const Field& f, int axis, int power, QuadratureRule rule) {
    if (axis < 0 || axis >= kDims) throw std::invalid_argument("invalid integration axis");
    if (power != 0 && power != 1) throw std::invalid_argument("kernel power must be 0 or 1");
    Field out = broadcast(f, f.axes().with(axis));
    const Index4 d = out.dims();
    std::size_t outer = 1, inner = 1;
    for (int k = 0; k < axis; ++k) outer *= static_cast<std::size_t>(d[k]);
    for (int k = axis + 1; k < kDims; ++k) inner *= static_cast<std::size_t>(d[k]);
    sweep_axis(out.values(), outer, static_cast<std::size_t>(d[axis]), inner,
               f.grid().spacing(axis), power, rule);
    return out;
}

Field face_restrict(const Field& f, std::span<const FaceFix> fixes) {
    AxisSet fixed;
    Index4 at{};
    for (const FaceFix& fx : fixes) {
        if (fx.axis < 0 || fx.axis >= kDims) throw std::invalid_argument("invalid face axis");
        if (!f.axes().has(fx.axis)) continue;
        fixed = fixed.with(fx.axis);
        at[fx.axis] = fx.side == Side::lower ? 0 : f.grid().count(fx.axis) - 1;
    }
    if (fixed.empty()) return f;
    AxisSet kept = AxisSet::from_bits(f.axes().bits() & ~fixed.bits());
    Field out(f.grid(), kept);
    const Index4 d = out.dims();
    std::size_t p = 0;
    auto v = out.values();
    Index4 idx{};
    for (idx[0] = 0; idx[0] < d[0]; ++idx[0])
        for (idx[1] = 0; idx[1] < d[1]; ++idx[1])
            for (idx[2] = 0; idx[2] < d[2]; ++idx[2])
                for (idx[3] = 0; idx[3] < d[3]; ++idx[3]) {
                    Index4 src = idx;
                    for (int k = 0; k < kDims; ++k)
                        if (fixed.has(k)) src[k] = at[k];
                    v[p++] = f.at(src);
                }
    return out;
}

Field face_restrict(const Field& f, std::initializer_list<FaceFix> fixes) {
    return face_restrict(f, std::span<const FaceFix>(fixes.begin(), fixes.size()));
}

Field restrict_to_origin(const Field& f, AxisSet fixed) {
    std::vector<FaceFix> fixes;
    for (int k : fixed.list()) fixes.push_back({k, Side::lower});
    return face_restrict(f, fixes);
}

}  // namespace goursat
