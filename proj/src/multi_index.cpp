#include "goursat/multi_index.hpp"

#include <charconv>
#include <stdexcept>

namespace goursat {

MultiIndex::MultiIndex(int i1, int i2, int i3, int i4) : order_{i1, i2, i3, i4} {
    for (int k = 0; k < kDims; ++k)
        if (order_[k] < 0 || order_[k] > kOrderProfile[k])
            throw std::invalid_argument("multi-index component out of range: " + name());
}

MultiIndex MultiIndex::parse(std::string_view text) {
    Index4 v{};
    int count = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
        if (pos >= text.size()) break;
        if (count == kDims) throw std::invalid_argument("too many multi-index components");
        int value = 0;
        auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc{}) throw std::invalid_argument("malformed multi-index: " + std::string(text));
        v[count++] = value;
        pos = static_cast<std::size_t>(end - text.data());
    }
    if (count != kDims) throw std::invalid_argument("multi-index needs 4 components: " + std::string(text));
    return MultiIndex(v[0], v[1], v[2], v[3]);
}

std::string MultiIndex::name() const {
    return std::to_string(order_[0]) + "," + std::to_string(order_[1]) + "," +
           std::to_string(order_[2]) + "," + std::to_string(order_[3]);
}

const std::array<MultiIndex, kIndexCount>& all_indices() {
    static const std::array<MultiIndex, kIndexCount> table = [] {
        std::array<MultiIndex, kIndexCount> t{};
        for (int s = 0; s < kIndexCount; ++s) t[s] = MultiIndex::from_slot(s);
        return t;
    }();
    return table;
}

EVector::EVector(const Grid4& grid) : grid_(grid) {
    parts_.reserve(kIndexCount);
    for (const MultiIndex& i : all_indices()) parts_.emplace_back(grid, i.full_axes());
}

void EVector::set(const MultiIndex& i, Field value) {
    if (!(value.grid() == grid_)) throw std::invalid_argument("component lives on a different grid");
    if (value.axes() != i.full_axes())
        throw std::invalid_argument("component " + i.name() + " has the wrong axes");
    parts_[i.slot()] = std::move(value);
}

EVector EVector::boundary_part() const {
    EVector out = *this;
    out.parts_[MultiIndex::dominant().slot()] = Field(grid_, AxisSet::all());
    return out;
}

}  // namespace goursat
