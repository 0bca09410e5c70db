#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "closed_forms.hpp"
#include "error.hpp"
#include "jet.hpp"

namespace edgefol {

enum class Scenario {
    generic,        ///< b20 drawn from [0, 2]
    edge_degenerate ///< b20 = 0, kept away from the non-generic strata
};

struct SamplingMargins {
    double min_abs_b03 = 0.1;
    double min_slope = 1e-3;             ///< |b30 - a20 b12|
    double min_asymptotic_disc = 1e-6;   ///< |D_as|
    double min_characteristic_disc = 1e-6; ///< |D_ch|
    double min_parallel_factor = 1e-3;   ///< |4 b12^3 + b03^2 b30|
    int max_rejections = 10000;
};

/// SplitMix64 finalizer; derives independent per-trial seeds from a master seed.
constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline bool within_margins(const EdgeJet& jet, Scenario scenario, const SamplingMargins& m)
{
    if (std::abs(jet.b03) < m.min_abs_b03)
        return false;
    if (scenario == Scenario::generic)
        return true;
    const auto c = jet.coefficients();
    return std::abs(limiting_curvature_slope(c)) >= m.min_slope
           && std::abs(asymptotic_discriminant(c)) >= m.min_asymptotic_disc
           && std::abs(characteristic_discriminant(c)) >= m.min_characteristic_disc
           && std::abs(parallel_surface_factor(c)) >= m.min_parallel_factor;
}

/// Uniform draw of the six leading coefficients from [-2, 2] (b20 from [0, 2],
/// or exactly 0 for edge_degenerate), rejected until the scenario margins hold.
/// Deterministic in the seed.
inline EdgeJet sample_generic_jet(std::uint64_t seed, Scenario scenario, const SamplingMargins& margins = {})
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> positive(0.0, 2.0);

    for (int attempt = 0; attempt <= margins.max_rejections; ++attempt) {
        EdgeJet jet;
        jet.a20 = coef(rng);
        jet.a30 = coef(rng);
        jet.b20 = scenario == Scenario::generic ? positive(rng) : 0.0;
        jet.b30 = coef(rng);
        jet.b12 = coef(rng);
        jet.b03 = coef(rng);
        if (within_margins(jet, scenario, margins))
            return jet;
    }
    throw Error(ErrorKind::SamplingExhausted,
                "no jet within the scenario margins after " + std::to_string(margins.max_rejections) + " rejections");
}

} // namespace edgefol
