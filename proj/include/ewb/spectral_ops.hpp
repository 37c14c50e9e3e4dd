#ifndef EWB_SPECTRAL_OPS_HPP
#define EWB_SPECTRAL_OPS_HPP

#include <functional>

#include "ewb/vector_field.hpp"

namespace ewb {

/// Apply a real radial-ish multiplier m(kx, ky, kz) in spectral space.
/// Arguments are physical wavenumbers (integer modes times 2*pi/length).
ScalarField apply_multiplier(const ScalarField& f,
                             const std::function<double(double, double, double)>& m);

/// Exact spectral derivative d_i f, i in {0,1,2}.
ScalarField derivative(const ScalarField& f, int axis);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);
VectorField curl(const VectorField& u);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& u);

/// Solve -Lap u = f with mean(u) = 0. Throws NonZeroMean when the source
/// carries a mean larger than `mean_tol` (solvability on the torus).
ScalarField solve_neg_laplacian(const ScalarField& f, double mean_tol = 1e-12);

/// Fractional power Lambda^alpha = (-Lap)^{alpha/2}; the k = 0 mode maps
/// to zero. For alpha < 0 the input must have zero mean.
ScalarField fractional_power(const ScalarField& f, double alpha);

/// Bessel potential <d>^k with multiplier (1 + |xi|^2)^{k/2}.
ScalarField bessel_potential(const ScalarField& f, double k);

/// Smooth cutoff profile: 1 on s <= 1, 0 on s >= 2, exp-mollifier blend.
double lp_profile(double s);

/// Dyadic range of meaningful shell indices for this grid: [0, lp_max(g)].
/// Shell j has multiplier support in {2^{j-1} <= |xi| <= 2^{j+1}}.
int lp_max_shell(const Grid& g);

/// Littlewood-Paley shell projection Delta_j. Throws OutOfBand when the
/// shell support 2^{j+1} exceeds the Nyquist wavenumber.
ScalarField lp_project(const ScalarField& f, int j);

/// Low-pass S_j = sum_{j' < j} Delta_{j'} plus the low block, realized as
/// the multiplier profile(|xi| / 2^{j-1}).
ScalarField lp_low(const ScalarField& f, int j);

/// Residual block above the last full shell: identity minus S_{jmax+1}.
ScalarField lp_top_block(const ScalarField& f);

/// Zero every mode with any axis index above the grid's dealias cutoff.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& u);

/// Pointwise product followed by the dealias projection.
ScalarField multiply_dealias(const ScalarField& a, const ScalarField& b);

/// L2 norm computed in spectral space (Parseval).
double l2_norm_spectral(const ScalarField& f);

/// Evaluate the trigonometric interpolant at an arbitrary point.
double evaluate_at(const ScalarField& f, double x, double y, double z);

}  // namespace ewb

#endif
