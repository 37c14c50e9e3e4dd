#ifndef EWB_GEOMETRY_FOLIATION_HPP
#define EWB_GEOMETRY_FOLIATION_HPP

#include "ewb/geometry/geodesics.hpp"

namespace ewb {

/// Characteristic hypersurface as a graph x_theta = phi(t, x') over the
/// plane orthogonal to an axis direction theta = sign * e_axis. The (a, b)
/// parameter grid covers one period in the two transverse axes, so all
/// transverse fields are periodic and differentiated spectrally.
struct FoliationGraph {
    std::array<double, 3> theta{};
    int axis = 2;
    double sign = 1.0;
    double r = 0.0;
    int m = 0;          // x' grid points per axis
    double span = 0.0;  // transverse period
    std::vector<double> times;
    std::vector<Eigen::ArrayXd> phi;  // per time, m*m values, a-fastest
    double max_graph_residual = 0.0;  // |x_theta(ray) - phi(t, x'(ray))|
    double max_null_drift = 0.0;

    std::array<double, 3> u_axis() const;  // transverse direction of 'a'
    std::array<double, 3> w_axis() const;  // transverse direction of 'b'
    /// Point on the surface for parameter indices (ia, ib) at time index kt.
    std::array<double, 3> surface_point(std::size_t kt, int ia, int ib) const;
};

struct FoliationOptions {
    int rays_per_axis = 17;
    TraceOptions trace;
    double fold_margin = 0.0;  // FoldDetected when det(I + grad d) <= margin
};

/// Seed a lattice of rays on the plane theta . x = r at the stack's initial
/// time, trace each null geodesic, and reconstruct phi on the regular
/// transverse grid at every snapshot time of the metric's stack.
FoliationGraph build_foliation(const SpacetimeMetric& metric,
                               const std::array<double, 3>& theta, double r,
                               const FoliationOptions& opts = {});

/// One term of the G functional: ||| d phi - dt |||_{s0,2,Sigma} with the
/// two-norm taken over interior times (4th-order time stencils).
double foliation_norm(const FoliationGraph& graph, double s0);

/// G = max over the supplied graphs.
double foliation_functional(const std::vector<FoliationGraph>& graphs, double s0);

/// Null frame sampled on the graph at one time index.
struct NullFrameSlice {
    std::size_t t_index = 0;
    int m = 0;
    // frame vectors per grid point: components [4] each of size m*m
    std::array<Eigen::ArrayXd, 4> l, lbar, e1, e2;
    Eigen::ArrayXd sigma;
    /// max deviation of the Gram matrix from (<l,lbar> = 2, <ea,eb> = dab, rest 0)
    double gram_error = 0.0;
    /// max |xi_0(null) - (-d_t phi)|: tangency consistency of the graph
    double cone_consistency = 0.0;
};

NullFrameSlice build_null_frame(const FoliationGraph& graph, const SpacetimeMetric& metric,
                                std::size_t t_index);

/// Connection coefficients on the slice: chi_{ab} = <D_{e_a} l, e_b>,
/// l(ln sigma) = (1/2) <D_l lbar, l>, mu_{0ab} = <D_l e_a, e_b>.
struct ConnectionCoefficients {
    std::size_t t_index = 0;
    std::array<std::array<Eigen::ArrayXd, 2>, 2> chi;
    std::array<std::array<Eigen::ArrayXd, 2>, 2> mu0;
    Eigen::ArrayXd l_ln_sigma;
    double max_chi = 0.0;
    double max_mu0 = 0.0;
    double max_l_ln_sigma = 0.0;
};

ConnectionCoefficients second_fundamental_form(const FoliationGraph& graph,
                                               const SpacetimeMetric& metric,
                                               std::size_t t_index);

}  // namespace ewb

#endif
