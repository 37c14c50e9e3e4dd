#ifndef EWB_EVOLUTION_HPP
#define EWB_EVOLUTION_HPP

#include <functional>
#include <optional>
#include <vector>

#include "ewb/fluid_state.hpp"
#include "ewb/initial_data.hpp"

namespace ewb {

/// Time-ordered states at uniform spacing; the substrate for the
/// finite-difference time derivatives used by the identity checks.
class SnapshotStack {
  public:
    SnapshotStack(std::vector<FluidState> states, EquationOfState eos);

    const std::vector<FluidState>& states() const { return states_; }
    const FluidState& at(std::size_t i) const { return states_.at(i); }
    std::size_t size() const { return states_.size(); }
    double dt_snap() const { return dt_snap_; }
    const EquationOfState& eos() const { return eos_; }

    /// Valid center indices for a 5-point stencil of the given stride.
    bool stencil_ok(std::size_t center, int stride, int half_width = 2) const {
        const std::ptrdiff_t lo = std::ptrdiff_t(center) - half_width * stride;
        const std::ptrdiff_t hi = std::ptrdiff_t(center) + half_width * stride;
        return lo >= 0 && hi < std::ptrdiff_t(states_.size());
    }

  private:
    std::vector<FluidState> states_;
    EquationOfState eos_;
    double dt_snap_ = 0.0;
};

/// 4th-order centered time derivative of per-snapshot scalar fields.
/// `extract` maps a snapshot index to the field; spacing is stride*dt_snap.
ScalarField time_derivative_o4(const SnapshotStack& stack,
                               const std::function<ScalarField(std::size_t)>& extract,
                               std::size_t center, int stride);

struct Tendency {
    ScalarField drho_dt;
    VectorField dv_dt;
};

/// Right-hand side of the first-order system:
///   drho/dt = -v.grad rho - div v
///   dv/dt   = -(v.grad) v - cs^2 grad rho
/// Quadratic products are dealiased (2/3 rule) after summation.
Tendency rhs(const FluidState& state, const EquationOfState& eos);

/// Same tendency assembled from the symmetric-hyperbolic matrix form
/// U_t = -sum_i A_i(U) dU/dx_i with A_i rebuilt from the first-order
/// system (v_i on the diagonal, 1 at (0, i+1), cs^2 at (i+1, 0)).
Tendency rhs_matrix_form(const FluidState& state, const EquationOfState& eos);

/// Symmetrizer and flux matrices at one grid point (used by tests).
Eigen::Matrix4d hyperbolic_flux_matrix(int axis, double cs2, const Eigen::Vector3d& v);

/// Classical 4-stage Runge-Kutta step.
/// Throws BlowupDetected when a field exceeds 1e6 or turns non-finite.
FluidState step_rk4(const FluidState& state, const EquationOfState& eos, double dt);

struct GuardSettings {
    double c0 = 1e-3;            // hyperbolicity floor on c_s
    double blowup_threshold = 1e6;
};

struct SimConfig {
    int grid_n = 32;
    double grid_length = 2.0 * M_PI;
    double dealias_fraction = 2.0 / 3.0;
    EquationOfState eos;
    double t_end = 1.0;
    std::optional<double> dt;
    std::optional<double> cfl;   // exactly one of dt/cfl
    int snap_every = 1;
    InitialDataSpec initial_data;
    GuardSettings guards;
    std::uint64_t seed = 1;

    void validate() const;
    /// Fixed step size: dt if given, else derived from the cfl number
    /// against max|v| + max c_s of the initial state.
    double resolve_dt(const FluidState& initial) const;
};

struct StepDiagnostics {
    double time;
    double mass;       // integral of exp(rho)
    double min_cs;
    double max_speed;  // max |v|
    double cfl;        // dt * (max|v| + max c_s) * n / length
};

/// Integrate to t_end, recording every snap_every-th state (plus the
/// initial one). Throws HyperbolicityLost when min c_s < c0 and
/// BlowupDetected on runaway fields; both carry time and offending norm.
SnapshotStack simulate(const SimConfig& config,
                       const std::function<void(const FluidState&,
                                                const StepDiagnostics&)>& on_snapshot = {});

struct StabilityResult {
    std::vector<double> times;
    std::vector<double> distances;   // H^{s-1} distance of (v, rho)
    double amplification;            // sup_t dist(t)/dist(0)
};

/// Run base and perturbed trajectories on one grid and measure the
/// H^{s-1} distance at every snapshot.
StabilityResult stability_compare(const SimConfig& config,
                                  const InitialDataSpec& perturbation,
                                  double delta, double s);

}  // namespace ewb

#endif
