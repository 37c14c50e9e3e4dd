#include "ewb/geometry/geodesics.hpp"

#include <cmath>

namespace ewb {

namespace {

using State = std::array<double, 7>;  // x1..x3, xi0..xi3

double hamiltonian2(const MetricJet& jet, const std::array<double, 4>& xi) {
    // g^{ab} xi_a xi_b
    double acc = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) acc += jet.upper(a, b) * xi[a] * xi[b];
    return acc;
}

State rhs_in_time(const SpacetimeMetric& metric, double t, const State& y) {
    const MetricJet jet = metric.eval(t, {y[0], y[1], y[2]});
    const std::array<double, 4> xi = {y[3], y[4], y[5], y[6]};

    double sigma = 0.0;
    for (int b = 0; b < 4; ++b) sigma += jet.upper(0, b) * xi[b];
    if (!(std::abs(sigma) > 1e-14))
        throw ConstraintDrift("geodesic: degenerate time component dt/ds");

    State dy{};
    for (int i = 0; i < 3; ++i) {
        double vi = 0.0;
        for (int b = 0; b < 4; ++b) vi += jet.upper(i + 1, b) * xi[b];
        dy[i] = vi / sigma;
    }
    for (int mu = 0; mu < 4; ++mu) {
        double acc = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) acc += jet.upper_d(mu, a, b) * xi[a] * xi[b];
        dy[3 + mu] = -0.5 * acc / sigma;
    }
    return dy;
}

State axpy(const State& y, double h, const State& k) {
    State out;
    for (int i = 0; i < 7; ++i) out[i] = y[i] + h * k[i];
    return out;
}

}  // namespace

std::array<double, 4> null_covector(const MetricJet& jet,
                                    const std::array<double, 3>& theta) {
    const double vdth = jet.v[0] * theta[0] + jet.v[1] * theta[1] + jet.v[2] * theta[2];
    const double norm = std::sqrt(theta[0] * theta[0] + theta[1] * theta[1] +
                                  theta[2] * theta[2]);
    const double xi0 = -vdth - std::sqrt(jet.cs2) * norm;
    return {xi0, theta[0], theta[1], theta[2]};
}

GeodesicRay trace_null_geodesic(const SpacetimeMetric& metric, double t0,
                                const std::array<double, 3>& x0,
                                const std::array<double, 3>& theta,
                                const std::vector<double>& sample_times,
                                const TraceOptions& opts) {
    if (sample_times.empty())
        throw Error("trace_null_geodesic: no sample times requested");
    for (double ts : sample_times)
        if (ts < metric.t_begin() - 1e-12 || ts > metric.t_end() + 1e-12)
            throw LeftDomain("trace_null_geodesic: sample time outside the stack");

    GeodesicRay ray;
    ray.theta = theta;

    const MetricJet j0 = metric.eval(t0, x0);
    const std::array<double, 4> xi0 = null_covector(j0, theta);
    State y = {x0[0], x0[1], x0[2], xi0[0], xi0[1], xi0[2], xi0[3]};
    double t = t0;

    const double th2 = theta[0] * theta[0] + theta[1] * theta[1] + theta[2] * theta[2];
    const double drift_scale = j0.cs2 * th2;

    auto record_drift = [&](double tt, const State& s) {
        const MetricJet jet = metric.eval(tt, {s[0], s[1], s[2]});
        const double h2 = hamiltonian2(jet, {s[3], s[4], s[5], s[6]});
        ray.null_drift = std::max(ray.null_drift, std::abs(h2) / drift_scale);
        if (ray.null_drift > opts.drift_abort)
            throw ConstraintDrift("trace_null_geodesic: null constraint drift " +
                                  std::to_string(ray.null_drift));
    };

    auto push_sample = [&](double tt, const State& s) {
        ray.samples.push_back(RaySample{tt, {s[0], s[1], s[2]},
                                        {s[3], s[4], s[5], s[6]}});
    };

    record_drift(t, y);
    std::size_t next = 0;
    if (std::abs(sample_times[0] - t0) < 1e-14) {
        push_sample(t0, y);
        next = 1;
    }

    // Dormand-Prince 5(4)
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640,
                        e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    double h = std::min(opts.max_step, 1e-3);
    while (next < sample_times.size()) {
        const double target = sample_times[next];
        bool clipped = false;
        if (t + h >= target - 1e-14) {
            h = target - t;
            clipped = true;
        }
        // never integrate across a knot of the time interpolation: inside
        // one interval the Hamiltonian is smooth and the pair keeps its
        // full order
        const double knot = metric.next_knot(t);
        if (!clipped && knot < target - 1e-14 && t + h > knot - 1e-14)
            h = knot - t;
        if (h <= 1e-15) {
            push_sample(target, y);
            ++next;
            h = std::min(opts.max_step, 1e-3);
            continue;
        }

        const State k1 = rhs_in_time(metric, t, y);
        const State k2 = rhs_in_time(metric, t + h * a21, axpy(y, h * a21, k1));
        State tmp = y;
        for (int i = 0; i < 7; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const State k3 = rhs_in_time(metric, t + h * 3.0 / 10, tmp);
        for (int i = 0; i < 7; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const State k4 = rhs_in_time(metric, t + h * 4.0 / 5, tmp);
        for (int i = 0; i < 7; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const State k5 = rhs_in_time(metric, t + h * 8.0 / 9, tmp);
        for (int i = 0; i < 7; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                 a65 * k5[i]);
        const State k6 = rhs_in_time(metric, t + h, tmp);
        State y5;
        for (int i = 0; i < 7; ++i)
            y5[i] = y[i] +
                    h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const State k7 = rhs_in_time(metric, t + h, y5);

        double err = 0.0;
        for (int i = 0; i < 7; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = opts.abs_tol + opts.rel_tol * std::abs(y5[i]);
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 7.0);

        // error-per-unit-step acceptance: the accumulated defect scales
        // linearly with the tolerance, so halving the tolerance halves
        // the constraint drift
        const double target_err = std::max(h, 1e-6);
        if (err <= target_err) {
            t += h;
            y = y5;
            record_drift(t, y);
            if (clipped && std::abs(t - target) < 1e-12) {
                push_sample(target, y);
                ++next;
            }
        }
        const double fac =
            std::clamp(0.9 * std::pow(std::max(err / target_err, 1e-10), -0.25), 0.2, 5.0);
        h = std::min(fac * h, opts.max_step);
    }
    return ray;
}

}  // namespace ewb
