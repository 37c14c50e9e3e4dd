#ifndef EWB_NORMS_HPP
#define EWB_NORMS_HPP

#include <string>
#include <vector>

#include "ewb/fluid_state.hpp"

namespace ewb {

class SnapshotStack;

struct NormReport {
    std::string norm_id;
    double value = 0.0;
    double s = 0.0;
    double p = 0.0;
    double r = 0.0;
    int grid_n = 0;
    double grid_length = 0.0;
};

/// Homogeneous Sobolev norm via the dyadic sum over the grid's resolvable
/// shells (j = 0 .. jmax plus the residual top block); the k = 0 mode is
/// not seen by any shell.
double homogeneous_sobolev(const ScalarField& f, double s);

/// ||f||_{H^s} = ||f||_{L^2} + ||f||_{Hdot^s}  (the additive convention).
NormReport sobolev_norm(const ScalarField& f, double s);

/// Besov norm Bdot^s_{p,r}; p in {2, inf}, r in [1, inf] (r = inf -> sup).
NormReport besov_norm(const ScalarField& f, double s, double p, double r);

/// Holder norm C^delta = L^inf + Bdot^delta_{inf,inf} on band-limited fields.
NormReport holder_norm(const ScalarField& f, double delta);

/// ell-2 combination of component Sobolev norms.
double sobolev_norm_vec(const VectorField& u, double s);

/// Besov norm of a gradient-type family: per shell, the max over the listed
/// component fields of the L^p shell norm, then the ell-r sum over shells.
double besov_norm_family(const std::vector<ScalarField>& fields, double s, double p,
                         double r);

struct EnergySample {
    double time;
    double energy;      // ||rho||_{H^s} + ||v||_{H^s} + ||w||_{H^{s0}}
    double energy_low;  // same with H^2 everywhere
};

std::vector<EnergySample> energy_functionals(const SnapshotStack& stack, double s,
                                             double s0);

struct GronwallReport {
    double fitted_constant = 1.0;
    bool pass = true;
    bool degenerate = false;
    std::vector<double> times;
    std::vector<double> integrand;   // ||dv,drho||_Linf + ||dv||_{Bdot^{s0-2}_{inf,2}}
    std::vector<double> energy;
};

/// Fit the smallest C with E(t) <= C E(0) exp(int_0^t integrand) and compare
/// against `bound`. The material derivative in the integrand is evaluated
/// on shell (T v = -cs^2 grad rho, T rho = -div v), so no time stencils.
GronwallReport gronwall_check(const SnapshotStack& stack, double s, double s0,
                              double bound = 10.0);

/// Trapezoid L^q_t norm of per-snapshot values.
double lq_time_norm(const std::vector<double>& times, const std::vector<double>& values,
                    double q);

}  // namespace ewb

#endif
