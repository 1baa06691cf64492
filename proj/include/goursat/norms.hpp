#pragma once

#include "goursat/grid.hpp"
#include "goursat/multi_index.hpp"
#include "goursat/pde_operator.hpp"

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace goursat {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct NormConfig {
    /// 1 <= p <= infinity; infinity is the grid maximum.
    double p = 2.0;
};

/// Trapezoid-weighted discrete L_p norm over the field's own axes
/// (absolute value for a scalar). Throws std::invalid_argument if p < 1.
double lp_norm(const Field& f, NormConfig cfg);

/// Sum of the L_p norms of all 36 mixed derivatives.
double wp_norm(const DerivativeBundle& bundle, NormConfig cfg);

/// Sum of the L_p norms of all 36 components, each over its own face.
double ep_norm(const EVector& v, NormConfig cfg);

enum class EVectorSampler {
    uniform,     ///< i.i.d. node values in [-1, 1]
    polynomial,  ///< random c0 + c1 x1 + c2 x2 + c3 x1 x2 per component, c in [-1, 1]
};

EVectorSampler parse_sampler(std::string_view name);
std::string_view sampler_name(EVectorSampler s);

/// Deterministic random EVector for (seed, sample index).
EVector random_evector(const Grid4& grid, EVectorSampler sampler, std::uint64_t seed,
                       std::uint64_t sample);

/// r(b) = ||Q b||_W / ||b||_E with the W norm taken from finite differences of Q b.
double homeo_ratio(const EVector& b, NormConfig cfg);

struct HomeoScan {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::vector<double> ratios;
};

/// Ratios for `samples` random EVectors; deterministic for a given seed.
/// Throws std::invalid_argument if samples < 1.
HomeoScan homeo_ratio_scan(const Grid4& grid, NormConfig cfg, int samples, std::uint64_t seed,
                           EVectorSampler sampler = EVectorSampler::uniform);

}  // namespace goursat
