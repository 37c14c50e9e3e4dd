#ifndef EWB_VORTICITY_IDENTITIES_HPP
#define EWB_VORTICITY_IDENTITIES_HPP

#include "ewb/evolution.hpp"
#include "ewb/residual_report.hpp"

namespace ewb {

/// div w + w . grad rho = 0 (algebraic-differential, no time stencil).
ResidualReport residual_divergence_law(const FluidState& state,
                                       const EquationOfState& eos);

/// T w = (w . grad) v, with d_t from a 4th-order centered stencil of
/// spacing stride * dt_snap.
ResidualReport residual_w_transport(const SnapshotStack& stack, std::size_t t_index,
                                    int stride = 1);

/// T Omega^i = -2 eps^{imn} e^-rho d_m v^a d_n w_a
///             + eps^{amn} e^-rho d_a v^i d_m w_n.
ResidualReport residual_omega_transport(const SnapshotStack& stack, std::size_t t_index,
                                        int stride = 1);

/// Transport law for the modified curl of Omega,
///   T(curl Om^i + 2 e^-rho d_a rho d_i w^a)
///     = -d_i(2 e^-rho d_n v^a d_n w^a) + sum_j R_j^i,
/// with the remainder families R_1..R_6 reported term by term.
ResidualReport residual_modified_curl_omega(const SnapshotStack& stack,
                                            std::size_t t_index, int stride = 1);

/// The eps^{ijk} a_j b_k contraction (pointwise cross product).
VectorField epsilon_contraction(const VectorField& a, const VectorField& b);

/// Spatial term assemblies of the transport laws (shared by the stencil
/// residuals and by the stencil-free oracle tests).
/// (w . grad) v
VectorField w_stretch_term(const FluidState& state, const EquationOfState& eos);
/// right side of the Omega transport law
VectorField omega_transport_rhs(const FluidState& state, const EquationOfState& eos);

struct ModifiedCurlOmegaTerms {
    VectorField transported;  // curl Om + 2 e^-rho d_a rho grad w^a
    VectorField main_grad;    // d_i (2 e^-rho d_n v^a d_n w^a)
    std::array<VectorField, 6> remainders;
};
ModifiedCurlOmegaTerms modified_curl_omega_terms(const FluidState& state,
                                                 const EquationOfState& eos);

/// Just the transported combination (cheap; used under the time stencil).
VectorField modified_curl_omega_transported(const FluidState& state,
                                            const EquationOfState& eos);

/// Brute-force check of eps^{ijk} eps_{kmn} = delta_im delta_jn -
/// delta_in delta_jm over all index values; returns the max deviation.
double epsilon_delta_identity_error();

}  // namespace ewb

#endif
