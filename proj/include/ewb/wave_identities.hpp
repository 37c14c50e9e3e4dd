#ifndef EWB_WAVE_IDENTITIES_HPP
#define EWB_WAVE_IDENTITIES_HPP

#include "ewb/evolution.hpp"
#include "ewb/residual_report.hpp"

namespace ewb {

/// Source terms of the wave equations relative to the operator
/// box_g = -TT + cs^2 Lap (the operative definition here):
///   box_g v^i  = -e^rho cs^2 curl w^i + Q^i,       box_g rho = D,
///   Q^i = 2 e^rho eps^i_{ab} (T v^a) w^b - cs c_s' (2 div v) d_i rho
///         - cs^2 grad rho . grad v^i,
///   D   = -2 cs c_s' |grad rho|^2 - d_i v^k d_k v^i,
/// with T v = -cs^2 grad rho and T rho = -div v substituted on shell.
struct NullFormBundle {
    VectorField q;
    ScalarField d_form;
};

NullFormBundle null_forms(const FluidState& state, const EquationOfState& eos);

/// box_g f = -T(T f) + cs^2 Lap f with d_t from nested 4th-order stencils
/// (width 4*stride each side) and spectral space derivatives.
ScalarField box_g_stencil(const SnapshotStack& stack,
                          const std::function<ScalarField(std::size_t)>& extract,
                          std::size_t t_index, int stride);

/// Residual of box_g v^i + e^rho cs^2 curl w^i - Q^i (all three components).
ResidualReport residual_wave_velocity(const SnapshotStack& stack, std::size_t t_index,
                                      int stride = 1);

/// Residual of box_g rho - D.
ResidualReport residual_wave_density(const SnapshotStack& stack, std::size_t t_index,
                                     int stride = 1);

/// Residual of the v_plus wave equation. On the torus the Hodge source
/// exp(rho) curl w carries a mean mu(t) that the zero-mean eta solve drops,
/// so the periodic form of the identity reads
///   box_g v_plus^i = TT eta^i + Q^i - cs^2 mu^i(t).
/// Also reports the additivity defect box(v_plus) + box(eta) - box(v).
ResidualReport residual_wave_vplus(const SnapshotStack& stack, std::size_t t_index,
                                   int stride = 1);

}  // namespace ewb

#endif
