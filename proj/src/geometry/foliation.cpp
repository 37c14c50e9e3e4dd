#include "ewb/geometry/foliation.hpp"

#include <cmath>

#include "ewb/parallel.hpp"

namespace ewb {

namespace {

int dominant_axis(const std::array<double, 3>& theta, double& sign) {
    int axis = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(theta[i]) > std::abs(theta[axis])) axis = i;
    sign = theta[axis] >= 0.0 ? 1.0 : -1.0;
    for (int i = 0; i < 3; ++i)
        if (i != axis && std::abs(theta[i]) > 1e-14)
            throw Error("foliation graphs support axis directions only");
    return axis;
}

// 2D spectral helpers on the m x m transverse grid with period `span`
Eigen::ArrayXd deriv2d(int m, double span, const Eigen::ArrayXcd& spec, int axis) {
    const int mx = m / 2 + 1;
    const double k0 = 2.0 * M_PI / span;
    Eigen::ArrayXcd out(spec.size());
    std::int64_t idx = 0;
    for (int kb = 0; kb < m; ++kb) {
        const int sb = kb <= m / 2 ? kb : kb - m;
        for (int ka = 0; ka < mx; ++ka, ++idx) {
            const double k = k0 * (axis == 0 ? ka : sb);
            const bool nyq = std::abs(axis == 0 ? ka : sb) == m / 2;
            out[idx] = nyq ? 0.0 : std::complex<double>(0.0, k) * spec[idx];
        }
    }
    return fft2_inverse(m, out);
}

double eval2d(int m, double span, const Eigen::ArrayXcd& spec, double a, double b) {
    const int mx = m / 2 + 1;
    const double k0 = 2.0 * M_PI / span;
    std::complex<double> acc(0.0, 0.0);
    std::int64_t idx = 0;
    for (int kb = 0; kb < m; ++kb) {
        const int sb = kb <= m / 2 ? kb : kb - m;
        const std::complex<double> pb = std::polar(1.0, k0 * sb * b);
        for (int ka = 0; ka < mx; ++ka, ++idx) {
            const std::complex<double> pa = std::polar(1.0, k0 * ka * a);
            const double w = (ka == 0 || ka == m / 2) ? 1.0 : 2.0;
            acc += w * spec[idx] * pa * pb;
        }
    }
    return acc.real();
}

}  // namespace

std::array<double, 3> FoliationGraph::u_axis() const {
    std::array<double, 3> u{0.0, 0.0, 0.0};
    u[sign > 0 ? (axis + 1) % 3 : (axis + 2) % 3] = 1.0;
    return u;
}

std::array<double, 3> FoliationGraph::w_axis() const {
    std::array<double, 3> w{0.0, 0.0, 0.0};
    w[sign > 0 ? (axis + 2) % 3 : (axis + 1) % 3] = 1.0;
    return w;
}

std::array<double, 3> FoliationGraph::surface_point(std::size_t kt, int ia, int ib) const {
    const double h = span / m;
    const auto u = u_axis();
    const auto w = w_axis();
    std::array<double, 3> x{0.0, 0.0, 0.0};
    const double pv = phi[kt][ia + std::int64_t(m) * ib];
    for (int c = 0; c < 3; ++c) x[c] = ia * h * u[c] + ib * h * w[c];
    x[axis] += sign * pv;
    return x;
}

FoliationGraph build_foliation(const SpacetimeMetric& metric,
                               const std::array<double, 3>& theta, double r,
                               const FoliationOptions& opts) {
    FoliationGraph graph;
    graph.theta = theta;
    graph.axis = dominant_axis(theta, graph.sign);
    graph.r = r;
    graph.m = opts.rays_per_axis;
    graph.span = metric.stack().at(0).grid().length();

    const int m = graph.m;
    const double h = graph.span / m;
    const auto u = graph.u_axis();
    const auto w = graph.w_axis();
    const double t0 = metric.t_begin();

    std::vector<double> times;
    for (std::size_t i = 0; i < metric.stack().size(); ++i)
        times.push_back(metric.stack().at(i).time());
    graph.times = times;

    // Trace the ray lattice; store transverse displacement and height per time.
    const std::int64_t npts = std::int64_t(m) * m;
    std::vector<Eigen::ArrayXd> disp_a(times.size(), Eigen::ArrayXd::Zero(npts));
    std::vector<Eigen::ArrayXd> disp_b(times.size(), Eigen::ArrayXd::Zero(npts));
    std::vector<Eigen::ArrayXd> height(times.size(), Eigen::ArrayXd::Zero(npts));

    std::vector<double> drifts(npts, 0.0);
    parallel_for(npts, [&](std::int64_t p) {
        const int ia = int(p % m);
        const int ib = int(p / m);
        std::array<double, 3> x0{0.0, 0.0, 0.0};
        for (int c = 0; c < 3; ++c) x0[c] = ia * h * u[c] + ib * h * w[c];
        x0[graph.axis] += graph.sign * r;

        GeodesicRay ray = trace_null_geodesic(metric, t0, x0, theta, times, opts.trace);
        drifts[p] = ray.null_drift;
        for (std::size_t kt = 0; kt < times.size(); ++kt) {
            const auto& s = ray.samples[kt];
            double pa = 0.0, pb = 0.0, ht = 0.0;
            for (int c = 0; c < 3; ++c) {
                pa += u[c] * s.x[c];
                pb += w[c] * s.x[c];
                ht += theta[c] * s.x[c];
            }
            disp_a[kt][p] = pa - ia * h;
            disp_b[kt][p] = pb - ib * h;
            height[kt][p] = ht;
        }
    });
    for (double d : drifts) graph.max_null_drift = std::max(graph.max_null_drift, d);

    // Reconstruct phi(t, x') on the regular transverse grid: invert the
    // launch-to-arrival map by fixed point, then evaluate the height field.
    graph.phi.resize(times.size());
    for (std::size_t kt = 0; kt < times.size(); ++kt) {
        const Eigen::ArrayXcd sa = fft2_forward(m, disp_a[kt]);
        const Eigen::ArrayXcd sb = fft2_forward(m, disp_b[kt]);
        const double hmean = height[kt].mean();
        const Eigen::ArrayXcd sh = fft2_forward(m, height[kt] - hmean);

        // fold check: the launch-to-arrival Jacobian det(I + grad d)
        const Eigen::ArrayXd daa = deriv2d(m, graph.span, sa, 0);
        const Eigen::ArrayXd dab = deriv2d(m, graph.span, sa, 1);
        const Eigen::ArrayXd dba = deriv2d(m, graph.span, sb, 0);
        const Eigen::ArrayXd dbb = deriv2d(m, graph.span, sb, 1);
        const Eigen::ArrayXd det =
            (1.0 + daa) * (1.0 + dbb) - dab * dba;
        if (det.minCoeff() <= opts.fold_margin)
            throw FoldDetected("build_foliation: rays crossed in the transverse "
                               "projection",
                               times[kt]);

        Eigen::ArrayXd phi(npts);
        for (int ib = 0; ib < m; ++ib)
            for (int ia = 0; ia < m; ++ia) {
                const double ag = ia * h, bg = ib * h;
                double a = ag, b = bg;
                for (int it = 0; it < 50; ++it) {
                    const double da = eval2d(m, graph.span, sa, a, b);
                    const double db = eval2d(m, graph.span, sb, a, b);
                    const double na = ag - da, nb = bg - db;
                    if (std::abs(na - a) + std::abs(nb - b) < 1e-13) {
                        a = na;
                        b = nb;
                        break;
                    }
                    a = na;
                    b = nb;
                }
                phi[ia + std::int64_t(m) * ib] =
                    hmean + eval2d(m, graph.span, sh, a, b);
            }
        graph.phi[kt] = std::move(phi);

        // residual of the reconstruction against the raw rays
        const Eigen::ArrayXcd sp = fft2_forward(m, graph.phi[kt] - graph.phi[kt].mean());
        const double pmean = graph.phi[kt].mean();
        for (int ib = 0; ib < m; ++ib)
            for (int ia = 0; ia < m; ++ia) {
                const std::int64_t p = ia + std::int64_t(m) * ib;
                const double a = ia * h + disp_a[kt][p];
                const double b = ib * h + disp_b[kt][p];
                const double fit = pmean + eval2d(m, graph.span, sp, a, b);
                graph.max_graph_residual = std::max(
                    graph.max_graph_residual, std::abs(fit - height[kt][p]));
            }
    }
    return graph;
}

namespace {

Eigen::ArrayXd time_stencil(const std::vector<Eigen::ArrayXd>& series, std::size_t k,
                            double h, int order) {
    if (k < 2 || k + 2 >= series.size())
        throw StencilOutOfRange("foliation time stencil");
    if (order == 1)
        return (series[k - 2] - 8.0 * series[k - 1] + 8.0 * series[k + 1] -
                series[k + 2]) /
               (12.0 * h);
    return (-series[k - 2] + 16.0 * series[k - 1] - 30.0 * series[k] +
            16.0 * series[k + 1] - series[k + 2]) /
           (12.0 * h * h);
}

double sobolev2d(int m, double span, const Eigen::ArrayXd& f, double s) {
    const Eigen::ArrayXcd spec = fft2_forward(m, f);
    const int mx = m / 2 + 1;
    const double k0 = 2.0 * M_PI / span;
    double acc = 0.0;
    std::int64_t idx = 0;
    for (int kb = 0; kb < m; ++kb) {
        const int sbm = kb <= m / 2 ? kb : kb - m;
        for (int ka = 0; ka < mx; ++ka, ++idx) {
            const double w = (ka == 0 || ka == m / 2) ? 1.0 : 2.0;
            const double k2 = k0 * k0 * (ka * ka + double(sbm) * sbm);
            acc += w * std::pow(1.0 + k2, s) * std::norm(spec[idx]);
        }
    }
    return std::sqrt(acc * span * span);
}

}  // namespace

double foliation_norm(const FoliationGraph& graph, double s0) {
    const std::size_t nt = graph.times.size();
    if (nt < 5) throw StencilOutOfRange("foliation_norm: need >= 5 snapshot times");
    const double h = graph.times[1] - graph.times[0];

    // components of d phi - dt on the parameter grid: (d_t phi - 1, d_a phi)
    std::vector<double> sq_j0, sq_j1, ts;
    for (std::size_t k = 2; k + 2 < nt; ++k) {
        const Eigen::ArrayXcd sp = fft2_forward(graph.m, graph.phi[k]);
        const Eigen::ArrayXd u0 =
            time_stencil(graph.phi, k, h, 1) - 1.0;
        const Eigen::ArrayXd u1 = deriv2d(graph.m, graph.span, sp, 0);
        const Eigen::ArrayXd u2 = deriv2d(graph.m, graph.span, sp, 1);

        double j0 = 0.0;
        for (const auto* c : {&u0, &u1, &u2})
            j0 += std::pow(sobolev2d(graph.m, graph.span, *c, s0), 2);

        // time derivative of the components (for the j = 1 part of the norm)
        const Eigen::ArrayXd du0 = time_stencil(graph.phi, k, h, 2);
        double j1 = std::pow(sobolev2d(graph.m, graph.span, du0, s0 - 1.0), 2);
        for (int ax = 0; ax < 2; ++ax) {
            std::vector<Eigen::ArrayXd> comp(nt);
            for (std::size_t kk = std::max<std::size_t>(2, k) - 2; kk <= k + 2; ++kk)
                comp[kk] = deriv2d(graph.m, graph.span,
                                   fft2_forward(graph.m, graph.phi[kk]), ax);
            const Eigen::ArrayXd dc = time_stencil(comp, k, h, 1);
            j1 += std::pow(sobolev2d(graph.m, graph.span, dc, s0 - 1.0), 2);
        }
        ts.push_back(graph.times[k]);
        sq_j0.push_back(j0);
        sq_j1.push_back(j1);
    }

    auto trapz = [&](const std::vector<double>& vals) {
        double acc = 0.0;
        for (std::size_t i = 1; i < vals.size(); ++i)
            acc += 0.5 * (vals[i] + vals[i - 1]) * (ts[i] - ts[i - 1]);
        return std::sqrt(std::max(acc, 0.0));
    };
    return std::max(trapz(sq_j0), trapz(sq_j1));
}

double foliation_functional(const std::vector<FoliationGraph>& graphs, double s0) {
    double g = 0.0;
    for (const auto& gr : graphs) g = std::max(g, foliation_norm(gr, s0));
    return g;
}

namespace {

struct FramePoint {
    std::array<double, 4> l, lbar, e1, e2;
    double sigma;
    MetricJet jet;
    std::array<double, 2> lprime;  // transverse parameter components of l
};

FramePoint frame_at_point(const FoliationGraph& graph, const SpacetimeMetric& metric,
                          double t, const std::array<double, 3>& x, double dphi_a,
                          double dphi_b, double dphi_t, double* cone_err) {
    FramePoint fp;
    fp.jet = metric.eval(t, x);
    const auto& jet = fp.jet;
    const auto u = graph.u_axis();
    const auto w = graph.w_axis();

    // spatial conormal xi' = theta - dphi_a u - dphi_b w; xi_0 from the cone
    std::array<double, 3> xs;
    for (int c = 0; c < 3; ++c)
        xs[c] = graph.theta[c] - dphi_a * u[c] - dphi_b * w[c];
    const double vdx = jet.v[0] * xs[0] + jet.v[1] * xs[1] + jet.v[2] * xs[2];
    const double nx = std::sqrt(xs[0] * xs[0] + xs[1] * xs[1] + xs[2] * xs[2]);
    const double xi0 = -vdx - std::sqrt(jet.cs2) * nx;
    if (cone_err) *cone_err = std::abs(xi0 - (-dphi_t));

    const std::array<double, 4> xi = {xi0, xs[0], xs[1], xs[2]};
    std::array<double, 4> V{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) V[a] += jet.upper(a, b) * xi[b];
    fp.sigma = V[0];
    if (!(std::abs(fp.sigma) > 1e-14))
        throw DegenerateFrame("null frame: dt(V) vanished");
    for (int a = 0; a < 4; ++a) fp.l[a] = V[a] / fp.sigma;

    // lbar = l - 2N with N = (1, v): the forward unit material direction
    fp.lbar = {fp.l[0] - 2.0, fp.l[1] - 2.0 * jet.v[0], fp.l[2] - 2.0 * jet.v[1],
               fp.l[3] - 2.0 * jet.v[2]};

    // Gram-Schmidt on the slice-tangent vectors u + dphi_a theta, w + dphi_b theta
    auto gdot = [&](const std::array<double, 4>& a, const std::array<double, 4>& b) {
        double acc = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) acc += jet.lower(i, j) * a[i] * b[j];
        return acc;
    };
    std::array<double, 4> t1 = {0.0, u[0], u[1], u[2]};
    std::array<double, 4> t2 = {0.0, w[0], w[1], w[2]};
    for (int c = 0; c < 3; ++c) {
        t1[1 + c] += dphi_a * graph.theta[c];
        t2[1 + c] += dphi_b * graph.theta[c];
    }
    const double n1 = std::sqrt(gdot(t1, t1));
    if (n1 < 1e-10) throw DegenerateFrame("null frame: first tangent degenerate");
    for (auto& c : t1) c /= n1;
    const double proj = gdot(t2, t1);
    for (int c = 0; c < 4; ++c) t2[c] -= proj * t1[c];
    const double n2 = std::sqrt(gdot(t2, t2));
    if (n2 < 1e-10) throw DegenerateFrame("null frame: Gram-Schmidt pivot underflow");
    for (auto& c : t2) c /= n2;
    fp.e1 = t1;
    fp.e2 = t2;

    for (int c = 0; c < 2; ++c) fp.lprime[c] = 0.0;
    for (int d = 0; d < 3; ++d) {
        fp.lprime[0] += u[d] * fp.l[1 + d];
        fp.lprime[1] += w[d] * fp.l[1 + d];
    }
    return fp;
}

}  // namespace

NullFrameSlice build_null_frame(const FoliationGraph& graph, const SpacetimeMetric& metric,
                                std::size_t t_index) {
    NullFrameSlice slice;
    slice.t_index = t_index;
    slice.m = graph.m;
    const int m = graph.m;
    const std::int64_t npts = std::int64_t(m) * m;
    for (int c = 0; c < 4; ++c) {
        slice.l[c] = Eigen::ArrayXd::Zero(npts);
        slice.lbar[c] = Eigen::ArrayXd::Zero(npts);
        slice.e1[c] = Eigen::ArrayXd::Zero(npts);
        slice.e2[c] = Eigen::ArrayXd::Zero(npts);
    }
    slice.sigma = Eigen::ArrayXd::Zero(npts);

    const double h = graph.times[1] - graph.times[0];
    const Eigen::ArrayXcd sp = fft2_forward(m, graph.phi[t_index]);
    const Eigen::ArrayXd da = deriv2d(m, graph.span, sp, 0);
    const Eigen::ArrayXd db = deriv2d(m, graph.span, sp, 1);
    const Eigen::ArrayXd dt = time_stencil(graph.phi, t_index, h, 1);

    for (int ib = 0; ib < m; ++ib)
        for (int ia = 0; ia < m; ++ia) {
            const std::int64_t p = ia + std::int64_t(m) * ib;
            double cone = 0.0;
            const FramePoint fp =
                frame_at_point(graph, metric, graph.times[t_index],
                               graph.surface_point(t_index, ia, ib), da[p], db[p],
                               dt[p], &cone);
            slice.cone_consistency = std::max(slice.cone_consistency, cone);
            for (int c = 0; c < 4; ++c) {
                slice.l[c][p] = fp.l[c];
                slice.lbar[c][p] = fp.lbar[c];
                slice.e1[c][p] = fp.e1[c];
                slice.e2[c][p] = fp.e2[c];
            }
            slice.sigma[p] = fp.sigma;

            auto gdot = [&](const std::array<double, 4>& a,
                            const std::array<double, 4>& b) {
                double acc = 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) acc += fp.jet.lower(i, j) * a[i] * b[j];
                return acc;
            };
            const double gram[6] = {gdot(fp.l, fp.l),
                                    gdot(fp.lbar, fp.lbar),
                                    gdot(fp.l, fp.lbar) - 2.0,
                                    gdot(fp.e1, fp.e1) - 1.0,
                                    gdot(fp.e2, fp.e2) - 1.0,
                                    gdot(fp.e1, fp.e2)};
            for (double gv : gram)
                slice.gram_error = std::max(slice.gram_error, std::abs(gv));
            const double mixed[4] = {gdot(fp.l, fp.e1), gdot(fp.l, fp.e2),
                                     gdot(fp.lbar, fp.e1), gdot(fp.lbar, fp.e2)};
            for (double gv : mixed)
                slice.gram_error = std::max(slice.gram_error, std::abs(gv));
        }
    return slice;
}

ConnectionCoefficients second_fundamental_form(const FoliationGraph& graph,
                                               const SpacetimeMetric& metric,
                                               std::size_t t_index) {
    const int m = graph.m;
    const std::int64_t npts = std::int64_t(m) * m;
    if (t_index < 2 || t_index + 2 >= graph.times.size())
        throw StencilOutOfRange("second_fundamental_form: interior time needed");

    // frames at the five stencil times
    std::array<NullFrameSlice, 5> slices;
    for (int o = -2; o <= 2; ++o)
        slices[o + 2] = build_null_frame(graph, metric, t_index + o);
    const NullFrameSlice& sc = slices[2];
    const double h = graph.times[1] - graph.times[0];

    auto tderiv = [&](auto pick) {
        Eigen::ArrayXd out(npts);
        out = (pick(slices[0]) - 8.0 * pick(slices[1]) + 8.0 * pick(slices[3]) -
               pick(slices[4])) /
              (12.0 * h);
        return out;
    };

    // transverse spectral derivatives of the frame coefficient fields
    auto sderiv = [&](const Eigen::ArrayXd& f, int ax) {
        return deriv2d(m, graph.span, fft2_forward(m, f), ax);
    };

    std::array<std::array<Eigen::ArrayXd, 4>, 2> de;       // d_a of l components
    std::array<std::array<Eigen::ArrayXd, 4>, 2> dlbar_s;  // d_a of lbar components
    std::array<Eigen::ArrayXd, 4> dlbar_t;
    for (int c = 0; c < 4; ++c) {
        de[0][c] = sderiv(sc.l[c], 0);
        de[1][c] = sderiv(sc.l[c], 1);
        dlbar_s[0][c] = sderiv(sc.lbar[c], 0);
        dlbar_s[1][c] = sderiv(sc.lbar[c], 1);
        dlbar_t[c] = tderiv([c](const NullFrameSlice& s) { return s.lbar[c]; });
    }
    std::array<std::array<Eigen::ArrayXd, 4>, 2> dea_t;
    std::array<std::array<std::array<Eigen::ArrayXd, 4>, 2>, 2> dea_s;
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 4; ++c) {
            dea_t[a][c] = tderiv([a, c](const NullFrameSlice& s) {
                return a == 0 ? s.e1[c] : s.e2[c];
            });
            dea_s[0][a][c] = sderiv(a == 0 ? sc.e1[c] : sc.e2[c], 0);
            dea_s[1][a][c] = sderiv(a == 0 ? sc.e1[c] : sc.e2[c], 1);
        }

    ConnectionCoefficients out;
    out.t_index = t_index;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            out.chi[a][b] = Eigen::ArrayXd::Zero(npts);
            out.mu0[a][b] = Eigen::ArrayXd::Zero(npts);
        }
    out.l_ln_sigma = Eigen::ArrayXd::Zero(npts);

    const Eigen::ArrayXcd spp = fft2_forward(m, graph.phi[t_index]);
    const Eigen::ArrayXd dpa = deriv2d(m, graph.span, spp, 0);
    const Eigen::ArrayXd dpb = deriv2d(m, graph.span, spp, 1);

    const auto u = graph.u_axis();
    const auto w = graph.w_axis();

    for (int ib = 0; ib < m; ++ib)
        for (int ia = 0; ia < m; ++ia) {
            const std::int64_t p = ia + std::int64_t(m) * ib;
            const MetricJet jet =
                metric.eval(graph.times[t_index], graph.surface_point(t_index, ia, ib));

            auto lower = [&](int i, int j) { return jet.lower(i, j); };

            // frame vectors at the point
            std::array<double, 4> l, lbar, e[2];
            for (int c = 0; c < 4; ++c) {
                l[c] = sc.l[c][p];
                lbar[c] = sc.lbar[c][p];
                e[0][c] = sc.e1[c][p];
                e[1][c] = sc.e2[c][p];
            }

            // parameter-space tangential coefficients of e_a on the slice:
            // e_a = kappa_a^1 (u + dphi_a theta) + kappa_a^2 (w + dphi_b theta)
            double kappa[2][2];
            for (int a = 0; a < 2; ++a) {
                double cu = 0.0, cw = 0.0;
                for (int d = 0; d < 3; ++d) {
                    cu += u[d] * e[a][1 + d];
                    cw += w[d] * e[a][1 + d];
                }
                kappa[a][0] = cu;
                kappa[a][1] = cw;
            }

            // l = d_t + l'^c d_c in parameter space (tangent to the graph)
            auto along_l = [&](const Eigen::ArrayXd& tpart,
                               const Eigen::ArrayXd& s0part,
                               const Eigen::ArrayXd& s1part) {
                double lp0 = 0.0, lp1 = 0.0;
                for (int d = 0; d < 3; ++d) {
                    lp0 += u[d] * l[1 + d];
                    lp1 += w[d] * l[1 + d];
                }
                return tpart[p] + lp0 * s0part[p] + lp1 * s1part[p];
            };

            auto gdot4 = [&](const std::array<double, 4>& a,
                             const std::array<double, 4>& b) {
                double acc = 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) acc += lower(i, j) * a[i] * b[j];
                return acc;
            };

            // chi_{ab} = < D_{e_a} l, e_b >
            for (int a = 0; a < 2; ++a) {
                std::array<double, 4> Dl{};
                for (int c = 0; c < 4; ++c) {
                    double dir = kappa[a][0] * de[0][c][p] + kappa[a][1] * de[1][c][p];
                    double gamma = 0.0;
                    for (int mu = 0; mu < 4; ++mu)
                        for (int nu = 0; nu < 4; ++nu)
                            gamma += e[a][mu] * jet.christoffel(c, mu, nu) * l[nu];
                    Dl[c] = dir + gamma;
                }
                for (int b = 0; b < 2; ++b)
                    out.chi[a][b][p] = gdot4(Dl, e[b]);
            }

            // mu_{0ab} = < D_l e_a, e_b >
            for (int a = 0; a < 2; ++a) {
                std::array<double, 4> De{};
                for (int c = 0; c < 4; ++c) {
                    double dir = along_l(dea_t[a][c], dea_s[0][a][c], dea_s[1][a][c]);
                    double gamma = 0.0;
                    for (int mu = 0; mu < 4; ++mu)
                        for (int nu = 0; nu < 4; ++nu)
                            gamma += l[mu] * jet.christoffel(c, mu, nu) * e[a][nu];
                    De[c] = dir + gamma;
                }
                for (int b = 0; b < 2; ++b) out.mu0[a][b][p] = gdot4(De, e[b]);
            }

            // l(ln sigma) = (1/2) < D_l lbar, l >
            std::array<double, 4> Dlbar{};
            for (int c = 0; c < 4; ++c) {
                double dir = along_l(dlbar_t[c], dlbar_s[0][c], dlbar_s[1][c]);
                double gamma = 0.0;
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = 0; nu < 4; ++nu)
                        gamma += l[mu] * jet.christoffel(c, mu, nu) * lbar[nu];
                Dlbar[c] = dir + gamma;
            }
            out.l_ln_sigma[p] = 0.5 * gdot4(Dlbar, l);
        }

    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            out.max_chi = std::max(out.max_chi, out.chi[a][b].abs().maxCoeff());
            out.max_mu0 = std::max(out.max_mu0, out.mu0[a][b].abs().maxCoeff());
        }
    out.max_l_ln_sigma = out.l_ln_sigma.abs().maxCoeff();
    return out;
}

}  // namespace ewb
