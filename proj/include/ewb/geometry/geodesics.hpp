#ifndef EWB_GEOMETRY_GEODESICS_HPP
#define EWB_GEOMETRY_GEODESICS_HPP

#include "ewb/geometry/spacetime_metric.hpp"

namespace ewb {

/// One sample of a ray: unwrapped position (t, x) and covector xi.
struct RaySample {
    double t;
    std::array<double, 3> x;   // universal cover coordinates (no wrap)
    std::array<double, 4> xi;  // (xi_0, xi_1, xi_2, xi_3)
};

struct GeodesicRay {
    std::array<double, 3> theta{};
    std::vector<RaySample> samples;
    /// max |g^{ab} xi_a xi_b| along the ray, relative to cs^2 |xi'|^2 at launch.
    double null_drift = 0.0;
};

struct TraceOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.05;
    double drift_abort = 1e-6;  // ConstraintDrift above this
};

/// Build the null covector at (t0, x0) for spatial direction theta:
/// xi' = theta, xi_0 the forward-cone root of the null condition.
std::array<double, 4> null_covector(const MetricJet& jet,
                                    const std::array<double, 3>& theta);

/// Integrate the Hamiltonian flow of H = (1/2) g^{ab} xi_a xi_b from
/// (t0, x0, xi) until time `t_stop`, sampling at the requested times
/// (strictly increasing, within the metric's range).
GeodesicRay trace_null_geodesic(const SpacetimeMetric& metric, double t0,
                                const std::array<double, 3>& x0,
                                const std::array<double, 3>& theta,
                                const std::vector<double>& sample_times,
                                const TraceOptions& opts = {});

}  // namespace ewb

#endif
