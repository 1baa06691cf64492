#include "goursat/boundary_data.hpp"

#include "goursat/finite_difference.hpp"
#include "goursat/representation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace goursat {

namespace {

constexpr std::array<Classical, kClassicalCount> kAllClassical{
    Classical::F, Classical::g, Classical::psi, Classical::Phi, Classical::T, Classical::S};

Classical from_letter(char c) {
    switch (c) {
        case 'F': return Classical::F;
        case 'g': return Classical::g;
        case 'p': return Classical::psi;
        case 'P': return Classical::Phi;
        case 'T': return Classical::T;
        case 'S': return Classical::S;
        default: throw std::logic_error("bad source letter");
    }
}

// Alternative expressions per component, in preference order
// (p = psi, P = Phi). Indexed by slot.
constexpr std::array<const char*, kIndexCount> kSourceTable = [] {
    std::array<const char*, kIndexCount> t{};
    auto put = [&t](int i1, int i2, int i3, int i4, const char* s) {
        t[((i1 * 2 + i2) * 3 + i3) * 3 + i4] = s;
    };
    put(0, 0, 0, 0, "FgpT");
    put(0, 0, 1, 0, "PgF");
    put(0, 0, 0, 1, "SFp");
    put(0, 0, 1, 1, "SP");
    put(1, 0, 0, 0, "gpT");
    put(1, 0, 1, 0, "gPT");
    put(1, 0, 0, 1, "gpS");
    put(1, 0, 1, 1, "gP");
    put(0, 1, 0, 0, "FpT");
    put(0, 1, 1, 0, "FTP");
    put(0, 1, 0, 1, "FpS");
    put(0, 1, 1, 1, "FS");
    put(0, 0, 2, 0, "FgT");
    put(0, 0, 2, 1, "FgS");
    put(0, 0, 0, 2, "Fgp");
    put(0, 0, 1, 2, "FgP");
    put(1, 1, 0, 0, "pT");
    put(1, 1, 1, 0, "TP");
    put(1, 1, 0, 1, "pS");
    put(1, 1, 1, 1, "PS");
    put(1, 0, 2, 0, "gT");
    put(1, 0, 2, 1, "gS");
    put(1, 0, 0, 2, "gp");
    put(1, 0, 1, 2, "gP");
    put(0, 1, 2, 0, "FT");
    put(0, 1, 2, 1, "FS");
    put(0, 1, 0, 2, "Fp");
    put(0, 1, 1, 2, "FP");
    put(0, 0, 2, 2, "Fg");
    put(1, 1, 2, 0, "T");
    put(1, 1, 2, 1, "S");
    put(1, 1, 0, 2, "p");
    put(1, 1, 1, 2, "P");
    put(0, 1, 2, 2, "F");
    put(1, 0, 2, 2, "g");
    put(1, 1, 2, 2, "");
    return t;
}();

void require_grid(const Grid4& expected, const Field& f) {
    if (!(f.grid() == expected)) throw std::invalid_argument("classical component on a different grid");
}

// D^orders(source) on the source's own axes, then restriction to the origin on `anchor`.
Field derived_trace(const Field& source, const Index4& orders, AxisSet anchor) {
    Field f = source;
    for (int k = 0; k < kDims; ++k)
        if (orders[k] > 0) f = differentiate(f, k, orders[k]);
    return restrict_to_origin(f, anchor);
}

struct FaceTerm {
    Classical source;
    int deriv_axis;  // -1 for none
    int fixed_axis;
};

struct Identity {
    FaceTerm lhs, rhs;
    const char* name;
};

constexpr std::array<Identity, kCompatIdentityCount> kIdentities{{
    {{Classical::F, -1, 1}, {Classical::g, -1, 0}, "F(0,x3,x4)=g(0,x3,x4)"},
    {{Classical::F, -1, 2}, {Classical::psi, -1, 0}, "F(x2,0,x4)=psi(0,x2,x4)"},
    {{Classical::g, 3, 3}, {Classical::S, -1, 1}, "g_x4(x1,x3,0)=S(x1,0,x3)"},
    {{Classical::F, -1, 3}, {Classical::T, -1, 0}, "F(x2,x3,0)=T(0,x2,x3)"},
    {{Classical::F, 2, 2}, {Classical::Phi, -1, 0}, "F_x3(x2,0,x4)=Phi(0,x2,x4)"},
    {{Classical::F, 3, 3}, {Classical::S, -1, 0}, "F_x4(x2,x3,0)=S(0,x2,x3)"},
    {{Classical::g, -1, 3}, {Classical::T, -1, 1}, "g(x1,x3,0)=T(x1,0,x3)"},
    {{Classical::g, -1, 2}, {Classical::psi, -1, 1}, "g(x1,0,x4)=psi(x1,0,x4)"},
    {{Classical::g, 2, 2}, {Classical::Phi, -1, 1}, "g_x3(x1,0,x4)=Phi(x1,0,x4)"},
    {{Classical::psi, -1, 3}, {Classical::T, -1, 2}, "psi(x1,x2,0)=T(x1,x2,0)"},
    {{Classical::psi, 3, 3}, {Classical::S, -1, 2}, "psi_x4(x1,x2,0)=S(x1,x2,0)"},
    {{Classical::Phi, 3, 3}, {Classical::S, 2, 2}, "Phi_x4(x1,x2,0)=S_x3(x1,x2,0)"},
}};

Field evaluate(const ClassicalData& c, const FaceTerm& t) {
    Index4 orders{};
    if (t.deriv_axis >= 0) orders[t.deriv_axis] = 1;
    return derived_trace(c[t.source], orders, AxisSet{t.fixed_axis});
}

}  // namespace

std::string_view classical_name(Classical c) {
    static constexpr std::array<std::string_view, kClassicalCount> names{"F", "g", "psi",
                                                                         "Phi", "T", "S"};
    return names[static_cast<int>(c)];
}

int classical_anchor_axis(Classical c) {
    static constexpr std::array<int, kClassicalCount> axis{0, 1, 2, 2, 3, 3};
    return axis[static_cast<int>(c)];
}

int classical_normal_order(Classical c) { return (c == Classical::Phi || c == Classical::S) ? 1 : 0; }

AxisSet classical_axes(Classical c) { return AxisSet::all().without(classical_anchor_axis(c)); }

ClassicalData::ClassicalData(const Grid4& grid) : grid_(grid) {
    parts_.reserve(kClassicalCount);
    for (Classical c : kAllClassical) parts_.emplace_back(grid, classical_axes(c));
}

void ClassicalData::set(Classical c, Field value) {
    require_grid(grid_, value);
    if (value.axes() != classical_axes(c))
        throw std::invalid_argument("classical component " + std::string(classical_name(c)) +
                                    " has the wrong axes");
    parts_[static_cast<int>(c)] = std::move(value);
}

ClassicalData ClassicalData::from_field(const Field& u) {
    ClassicalData out(u.grid());
    const Field full = broadcast(u, AxisSet::all());
    for (Classical c : kAllClassical) {
        const int k = classical_anchor_axis(c);
        Field trace = restrict_to_origin(differentiate(full, k, classical_normal_order(c)), AxisSet{k});
        out.set(c, broadcast(trace, classical_axes(c)));
    }
    return out;
}

std::string_view CompatReport::identity_name(int id) { return kIdentities.at(id).name; }

int CompatReport::worst() const {
    return static_cast<int>(std::max_element(violation.begin(), violation.end()) - violation.begin());
}

CompatReport check_compatibility(const ClassicalData& c, double tol) {
    CompatReport report;
    report.tol = tol;
    for (int id = 0; id < kCompatIdentityCount; ++id) {
        const Identity& rule = kIdentities[id];
        report.violation[id] = max_abs_difference(evaluate(c, rule.lhs), evaluate(c, rule.rhs));
        if (!(report.violation[id] <= tol)) report.pass = false;
    }
    return report;
}

double ConversionResult::max_spread() const { return *std::max_element(spread.begin(), spread.end()); }

const std::vector<Classical>& sources_for(const MultiIndex& i) {
    static const std::array<std::vector<Classical>, kIndexCount> table = [] {
        std::array<std::vector<Classical>, kIndexCount> t;
        for (int s = 0; s < kIndexCount; ++s)
            for (const char* p = kSourceTable[s]; *p; ++p) t[s].push_back(from_letter(*p));
        return t;
    }();
    return table[i.slot()];
}

ConversionResult classical_to_nonclassical(const ClassicalData& c) {
    ConversionResult out{EVector(c.grid()), {}};
    for (const MultiIndex& i : all_indices()) {
        if (i.is_dominant()) continue;
        std::vector<Field> candidates;
        for (Classical src : sources_for(i)) {
            const int k = classical_anchor_axis(src);
            if (i[k] != classical_normal_order(src))
                throw std::logic_error("source table entry inconsistent with " + i.name());
            Index4 orders = i.orders();
            orders[k] = 0;
            const AxisSet fixed = AxisSet::from_bits(~i.full_axes().bits()).without(k);
            candidates.push_back(broadcast(derived_trace(c[src], orders, fixed), i.full_axes()));
        }
        double spread = 0.0;
        for (std::size_t a = 1; a < candidates.size(); ++a)
            spread = std::max(spread, max_abs_difference(candidates[0], candidates[a]));
        out.spread[i.slot()] = spread;
        out.phi.set(i, std::move(candidates.front()));
    }
    return out;
}

ClassicalData nonclassical_to_classical(const EVector& phi, QuadratureRule rule) {
    ClassicalData out(phi.grid());
    for (Classical c : kAllClassical) {
        const int k = classical_anchor_axis(c);
        const int d = classical_normal_order(c);
        Index4 deriv{};
        deriv[k] = d;
        // On x_k = 0 only terms whose x_k monomial degree equals d survive, with factor 1;
        // terms integrated over x_k vanish there.
        Field face(phi.grid(), classical_axes(c));
        for (const MultiIndex& j : all_indices()) {
            if (j.is_dominant() || j[k] != d) continue;
            if (auto term = representation_term(phi[j], j, deriv, rule)) accumulate(face, *term);
        }
        out.set(c, std::move(face));
    }
    return out;
}

}  // namespace goursat
