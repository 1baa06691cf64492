#pragma once

#include "goursat/grid.hpp"
#include "goursat/multi_index.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace goursat {

/// The six classical Goursat data functions, each a face trace of u:
///   F = u|x1=0, g = u|x2=0, psi = u|x3=0, Phi = D3 u|x3=0, T = u|x4=0, S = D4 u|x4=0.
enum class Classical { F, g, psi, Phi, T, S };
inline constexpr int kClassicalCount = 6;

/// Name as used in reports ("F", "g", "psi", "Phi", "T", "S").
std::string_view classical_name(Classical c);
/// The anchored axis k (the face x_k = 0) and the normal derivative order taken there.
int classical_anchor_axis(Classical c);
int classical_normal_order(Classical c);
/// Axes the component varies over: every axis except the anchored one.
AxisSet classical_axes(Classical c);

struct ClassicalData {
    explicit ClassicalData(const Grid4& grid);

    const Grid4& grid() const { return grid_; }
    const Field& operator[](Classical c) const { return parts_[static_cast<int>(c)]; }
    /// Throws std::invalid_argument on a grid or axes mismatch.
    void set(Classical c, Field value);

    /// Face traces of a 4D field (normal derivatives by finite differences).
    static ClassicalData from_field(const Field& u);

private:
    Grid4 grid_;
    std::vector<Field> parts_;
};

inline constexpr int kCompatIdentityCount = 12;
inline constexpr double kDefaultCompatTol = 1e-8;

struct CompatReport {
    std::array<double, kCompatIdentityCount> violation{};
    double tol = kDefaultCompatTol;
    bool pass = true;

    /// Identity labels, e.g. "g_x4(x1,x3,0)=S(x1,0,x3)".
    static std::string_view identity_name(int id);
    /// Index of the largest violation.
    int worst() const;
};

/// Evaluates the 12 matching identities the classical data must satisfy on
/// shared edges. Face derivatives use the library's finite-difference stencils.
CompatReport check_compatibility(const ClassicalData& c, double tol = kDefaultCompatTol);

struct ConversionResult {
    /// Boundary components; the dominant slot is zero.
    EVector phi;
    /// Per slot: max deviation of the alternative expressions from the returned one.
    std::array<double, kIndexCount> spread{};

    double max_spread() const;
};

/// Nonclassical data from classical data. Each component is a mixed derivative
/// of one classical function restricted to the origin on the anchored axes.
/// Every valid source is evaluated; the first one in the fixed preference
/// order is returned and the others feed `spread`.
ConversionResult classical_to_nonclassical(const ClassicalData& c);

/// The ordered list of classical sources that express component i
/// (empty for the dominant index).
const std::vector<Classical>& sources_for(const MultiIndex& i);

/// Classical data from the boundary part of phi: the face traces of the
/// representation built from phi, evaluated term-wise with the same quadrature.
ClassicalData nonclassical_to_classical(const EVector& phi,
                                        QuadratureRule rule = QuadratureRule::trapezoid);

}  // namespace goursat
