#include "goursat/norms.hpp"

#include "goursat/parallel.hpp"
#include "goursat/representation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace goursat {

namespace {

double trapezoid_weight(const Grid4& grid, int axis, int j) {
    const double h = grid.spacing(axis);
    return (j == 0 || j == grid.count(axis) - 1) ? 0.5 * h : h;
}

}  // namespace

double lp_norm(const Field& f, NormConfig cfg) {
    if (!(cfg.p >= 1.0)) throw std::invalid_argument("norm exponent must be at least 1");
    if (std::isinf(cfg.p)) return f.max_abs();
    const Index4 d = f.dims();
    const AxisSet axes = f.axes();
    const Grid4& grid = f.grid();
    auto w = [&](int k, int j) { return axes.has(k) ? trapezoid_weight(grid, k, j) : 1.0; };
    auto power = [&](double a) {
        return cfg.p == 1.0 ? a : cfg.p == 2.0 ? a * a : std::pow(a, cfg.p);
    };
    auto v = f.values();
    double sum = 0.0;
    std::size_t p = 0;
    for (int i0 = 0; i0 < d[0]; ++i0) {
        const double w0 = w(0, i0);
        for (int i1 = 0; i1 < d[1]; ++i1) {
            const double w1 = w0 * w(1, i1);
            for (int i2 = 0; i2 < d[2]; ++i2) {
                const double w2 = w1 * w(2, i2);
                for (int i3 = 0; i3 < d[3]; ++i3) {
                    const double a = std::abs(v[p++]);
                    if (a != 0.0) sum += w2 * w(3, i3) * power(a);
                }
            }
        }
    }
    return cfg.p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / cfg.p);
}

double wp_norm(const DerivativeBundle& bundle, NormConfig cfg) {
    double s = 0.0;
    for (const MultiIndex& i : all_indices()) s += lp_norm(bundle[i], cfg);
    return s;
}

double ep_norm(const EVector& v, NormConfig cfg) {
    double s = 0.0;
    for (const MultiIndex& i : all_indices()) s += lp_norm(v[i], cfg);
    return s;
}

EVectorSampler parse_sampler(std::string_view name) {
    if (name == "uniform") return EVectorSampler::uniform;
    if (name == "poly" || name == "polynomial") return EVectorSampler::polynomial;
    throw std::invalid_argument("unknown sampler: " + std::string(name));
}

std::string_view sampler_name(EVectorSampler s) {
    return s == EVectorSampler::uniform ? "uniform" : "poly";
}

EVector random_evector(const Grid4& grid, EVectorSampler sampler, std::uint64_t seed,
                       std::uint64_t sample) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    EVector b(grid);
    for (const MultiIndex& i : all_indices()) {
        const AxisSet axes = i.full_axes();
        if (sampler == EVectorSampler::uniform) {
            for (double& x : b.values(i)) x = dist(rng);
            continue;
        }
        const double c0 = dist(rng);
        const double c1 = axes.has(0) ? dist(rng) : 0.0;
        const double c2 = axes.has(1) ? dist(rng) : 0.0;
        const double c3 = axes.has(0) && axes.has(1) ? dist(rng) : 0.0;
        b.set(i, Field::sample(grid, axes, [&](const Point4& x) {
                  return c0 + c1 * x[0] + c2 * x[1] + c3 * x[0] * x[1];
              }));
    }
    return b;
}

double homeo_ratio(const EVector& b, NormConfig cfg) {
    return wp_norm(finite_diff_bundle(apply_Q(b)), cfg) / ep_norm(b, cfg);
}

HomeoScan homeo_ratio_scan(const Grid4& grid, NormConfig cfg, int samples, std::uint64_t seed,
                           EVectorSampler sampler) {
    if (samples < 1) throw std::invalid_argument("at least one sample is required");
    HomeoScan scan;
    scan.ratios.assign(static_cast<std::size_t>(samples), 0.0);
    parallel_for(scan.ratios.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s)
            scan.ratios[s] = homeo_ratio(random_evector(grid, sampler, seed, s), cfg);
    }, 1);
    scan.min_ratio = *std::min_element(scan.ratios.begin(), scan.ratios.end());
    scan.max_ratio = *std::max_element(scan.ratios.begin(), scan.ratios.end());
    return scan;
}

}  // namespace goursat
