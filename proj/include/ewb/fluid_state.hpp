#ifndef EWB_FLUID_STATE_HPP
#define EWB_FLUID_STATE_HPP

#include <array>

#include "ewb/spectral_ops.hpp"

namespace ewb {

/// Polytropic state law p = rho^gamma with a constant background density.
/// The specific vorticity is normalized with rho_bar = 1 so the two
/// conventions used in the source material coincide.
struct EquationOfState {
    double gamma = 5.0 / 3.0;
    double rho_bar = 1.0;

    EquationOfState() = default;
    EquationOfState(double g, double rb = 1.0) : gamma(g), rho_bar(rb) {
        if (!(gamma > 0.0)) throw Error("EquationOfState: gamma must be positive");
        if (!(rho_bar > 0.0)) throw Error("EquationOfState: rho_bar must be positive");
    }
};

constexpr double kVacuumFloor = 1e-6;

/// The pair (rho_log, v) at one instant. rho_log is the logarithmic
/// density ln(rho / rho_bar); vacuum exclusion is enforced at construction.
class FluidState {
  public:
    FluidState() = default;
    FluidState(ScalarField rho_log, VectorField velocity, double time)
        : rho_log_(std::move(rho_log)), velocity_(std::move(velocity)), time_(time) {
        if (!(rho_log_.grid() == velocity_.grid()))
            throw Error("FluidState: fields on different grids");
        if (!rho_log_.all_finite() || !velocity_.all_finite())
            throw Error("FluidState: non-finite field values");
        const double min_density = std::exp(rho_log_.values().minCoeff());
        if (!(min_density > kVacuumFloor))
            throw VacuumState("FluidState: exp(rho_log) fell below the vacuum floor");
    }

    const ScalarField& rho_log() const { return rho_log_; }
    const VectorField& velocity() const { return velocity_; }
    double time() const { return time_; }
    const Grid& grid() const { return rho_log_.grid(); }
    GridPtr grid_ptr() const { return rho_log_.grid_ptr(); }

  private:
    ScalarField rho_log_;
    VectorField velocity_;
    double time_ = 0.0;
};

/// c_s^2 = gamma * (rho_bar * exp(rho_log))^(gamma - 1), pointwise.
ScalarField sound_speed_squared(const FluidState& state, const EquationOfState& eos);
ScalarField sound_speed(const FluidState& state, const EquationOfState& eos);
/// c_s' = dc_s/drho_log = ((gamma - 1)/2) c_s.
ScalarField sound_speed_derivative(const FluidState& state, const EquationOfState& eos);

/// Material derivative T f = f_t + v . grad f.
ScalarField convective_derivative(const ScalarField& f, const ScalarField& f_t,
                                  const FluidState& state);

/// Specific vorticity  w = exp(-rho_log) curl v.
VectorField specific_vorticity(const FluidState& state, const EquationOfState& eos);

/// Pointwise 4x4 acoustic metric and its inverse, stored symmetric
/// (index order 00, 01, 02, 03, 11, 12, 13, 22, 23, 33). The inverse has
/// the closed form  g^{-1} = -(T) x (T) + c_s^2 sum_i d_i x d_i,
/// so g^{00} = -1 identically.
class AcousticMetric {
  public:
    AcousticMetric(std::array<ScalarField, 10> lower, std::array<ScalarField, 10> upper)
        : lower_(std::move(lower)), upper_(std::move(upper)) {}

    static int sym_index(int a, int b);

    const ScalarField& lower(int a, int b) const { return lower_[sym_index(a, b)]; }
    const ScalarField& upper(int a, int b) const { return upper_[sym_index(a, b)]; }

    /// max |g . g^{-1} - Id| over grid points and index pairs.
    double inverse_identity_error() const;

  private:
    std::array<ScalarField, 10> lower_;
    std::array<ScalarField, 10> upper_;
};

AcousticMetric acoustic_metric(const FluidState& state, const EquationOfState& eos);

/// The velocity decomposition v = v_plus + eta with -Lap eta = exp(rho) curl w.
/// On the torus the source generally carries a nonzero mean; the solve uses
/// the zero-mean projection and the removed mean is recorded per component
/// (the constant part of the Hodge decomposition belongs to v_plus).
struct DerivedFields {
    VectorField w;          // specific vorticity
    VectorField omega_cap;  // exp(-rho) curl w
    VectorField eta;
    VectorField v_plus;
    std::array<double, 3> source_mean{};  // mean of exp(rho) curl w
};

DerivedFields derived_fields(const FluidState& state, const EquationOfState& eos);

}  // namespace ewb

#endif
