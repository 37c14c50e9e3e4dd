#ifndef EWB_GEOMETRY_SPACETIME_METRIC_HPP
#define EWB_GEOMETRY_SPACETIME_METRIC_HPP

#include <map>
#include <memory>
#include <mutex>

#include "ewb/evolution.hpp"

namespace ewb {

/// Value and first derivatives of the inverse and lower acoustic metric
/// at one spacetime point, built pointwise from (v, cs^2) so that
/// g . g^{-1} = Id holds to rounding and g^{00} = -1 exactly.
struct MetricJet {
    double t = 0.0;
    std::array<double, 3> x{};
    double cs2 = 0.0;
    std::array<double, 3> v{};
    std::array<double, 3> cs2_dx{};
    double cs2_dt = 0.0;
    std::array<std::array<double, 3>, 3> v_dx{};  // v_dx[i][j] = d_j v^i
    std::array<double, 3> v_dt{};

    double upper(int a, int b) const;
    double lower(int a, int b) const;
    /// d_mu g^{ab}, mu in {0 = t, 1..3 = x}.
    double upper_d(int mu, int a, int b) const;
    /// d_mu g_{ab}.
    double lower_d(int mu, int a, int b) const;
    /// Christoffel symbol Gamma^lam_{mu nu}.
    double christoffel(int lam, int mu, int nu) const;
    /// max | g . g^{-1} - Id | over index pairs.
    double inverse_identity_error() const;
};

/// Spacetime evaluation of the acoustic metric over a snapshot stack.
///
/// Spatial interpolation: periodic quintic B-spline on an FFT-upsampled
/// grid (C^4, exact at fine-grid nodes of the band-limited field).
/// Temporal interpolation: cubic Hermite per snapshot interval, using the
/// on-shell time derivatives of (v, cs^2); globally C^1 in time, so the
/// interpolated Hamiltonian is conserved along exact null flow.
class SpacetimeMetric {
  public:
    /// upsample: fine grid points per axis; 0 picks max(2n, 64).
    explicit SpacetimeMetric(std::shared_ptr<const SnapshotStack> stack,
                             int upsample = 0);

    MetricJet eval(double t, const std::array<double, 3>& x) const;

    /// Reference evaluation through the exact trigonometric interpolant
    /// (slow; used to validate the spline path).
    MetricJet eval_exact(double t, const std::array<double, 3>& x) const;

    double t_begin() const;
    double t_end() const;
    /// First Hermite knot strictly after t (time interpolation is C^1
    /// globally and smooth inside each snapshot interval).
    double next_knot(double t) const;
    const SnapshotStack& stack() const { return *stack_; }

  private:
    struct SnapshotSplines;
    const SnapshotSplines& splines_at(std::size_t i) const;

    std::shared_ptr<const SnapshotStack> stack_;
    int fine_n_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::size_t, std::shared_ptr<const SnapshotSplines>> cache_;
};

}  // namespace ewb

#endif
