#ifndef EWB_TESTS_ONSHELL_ORACLE_HPP
#define EWB_TESTS_ONSHELL_ORACLE_HPP

#include "ewb/fluid_state.hpp"

namespace test_support {

/// Stencil-free oracle: exact time derivatives of the derived fields at a
/// single state, obtained by eliminating d_t through the first-order system
/// (product/chain rule only; never uses the transport or wave identities
/// under test). Products are raw grid products, so keep the band well below
/// the grid's resolution when using this.
struct OnShellOracle {
    ewb::FluidState state;
    ewb::EquationOfState eos;

    ewb::ScalarField rho_t;
    ewb::VectorField v_t;
    ewb::VectorField w, w_t;
    ewb::VectorField om, om_t;
    ewb::VectorField transported, transported_t;  // modified curl-Omega quantity
    ewb::VectorField box_v;
    ewb::ScalarField box_rho;

    OnShellOracle(const ewb::FluidState& s, const ewb::EquationOfState& e);

    /// T X = X_t + (v . grad) X for a derived field with known time derivative.
    ewb::ScalarField material(const ewb::ScalarField& x, const ewb::ScalarField& x_t) const;
    ewb::VectorField material(const ewb::VectorField& x, const ewb::VectorField& x_t) const;
};

}  // namespace test_support

#endif
