#ifndef EWB_INITIAL_DATA_HPP
#define EWB_INITIAL_DATA_HPP

#include <cstdint>
#include <map>
#include <string>

#include "ewb/fluid_state.hpp"

namespace ewb {

/// Seeded random band-limited real field: Gaussian spectral coefficients
/// with Hermitian symmetry, support 1 <= |k| <= band, rescaled so that
/// max |f| equals `amplitude`. Deterministic in (seed, tag) regardless of
/// thread schedule (coefficients are derived from a counter hash).
ScalarField random_band_limited(GridPtr grid, std::uint64_t seed, int band,
                                double amplitude, std::uint32_t tag = 0);

/// C-infinity bump, equal to exp(1 - 1/(1 - r^2)) for r = |x - center|/radius < 1
/// and 0 outside; supported strictly inside the box.
ScalarField bump_field(GridPtr grid, const std::array<double, 3>& center,
                       double radius, double amplitude);

struct InitialDataSpec {
    std::string kind;  // constant | shear | acoustic_mode | random_band_limited | vortical_bump
    std::map<std::string, double> params;
};

/// Build the named initial state on `grid` at t = 0.
FluidState make_initial_state(GridPtr grid, const InitialDataSpec& spec);

}  // namespace ewb

#endif
