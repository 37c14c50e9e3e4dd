#include "ewb/geometry/spacetime_metric.hpp"

#include <cmath>

namespace ewb {

double MetricJet::upper(int a, int b) const {
    if (a > b) std::swap(a, b);
    if (a == 0 && b == 0) return -1.0;
    if (a == 0) return -v[b - 1];
    return (a == b ? cs2 : 0.0) - v[a - 1] * v[b - 1];
}

double MetricJet::lower(int a, int b) const {
    if (a > b) std::swap(a, b);
    const double ic = 1.0 / cs2;
    if (a == 0 && b == 0) {
        double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        return -1.0 + ic * v2;
    }
    if (a == 0) return -ic * v[b - 1];
    return a == b ? ic : 0.0;
}

namespace {
inline double pick_d(double dt_part, const std::array<double, 3>& dx_part, int mu) {
    return mu == 0 ? dt_part : dx_part[mu - 1];
}
}  // namespace

double MetricJet::upper_d(int mu, int a, int b) const {
    if (a > b) std::swap(a, b);
    auto dv = [&](int i) { return mu == 0 ? v_dt[i] : v_dx[i][mu - 1]; };
    const double dcs2 = pick_d(cs2_dt, cs2_dx, mu);
    if (a == 0 && b == 0) return 0.0;
    if (a == 0) return -dv(b - 1);
    return (a == b ? dcs2 : 0.0) - dv(a - 1) * v[b - 1] - v[a - 1] * dv(b - 1);
}

double MetricJet::lower_d(int mu, int a, int b) const {
    if (a > b) std::swap(a, b);
    auto dv = [&](int i) { return mu == 0 ? v_dt[i] : v_dx[i][mu - 1]; };
    const double dcs2 = pick_d(cs2_dt, cs2_dx, mu);
    const double ic = 1.0 / cs2;
    const double dic = -dcs2 * ic * ic;
    if (a == 0 && b == 0) {
        double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        double dv2 = 2.0 * (v[0] * dv(0) + v[1] * dv(1) + v[2] * dv(2));
        return dic * v2 + ic * dv2;
    }
    if (a == 0) return -dic * v[b - 1] - ic * dv(b - 1);
    return a == b ? dic : 0.0;
}

double MetricJet::christoffel(int lam, int mu, int nu) const {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k)
        acc += upper(lam, k) *
               (lower_d(mu, k, nu) + lower_d(nu, k, mu) - lower_d(k, mu, nu));
    return 0.5 * acc;
}

double MetricJet::inverse_identity_error() const {
    double err = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int c = 0; c < 4; ++c) s += lower(a, c) * upper(c, b);
            err = std::max(err, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    return err;
}

namespace {

/// Centered quintic B-spline and its derivative, support |x| < 3.
double bspline5(double x) {
    const double t = std::abs(x);
    if (t >= 3.0) return 0.0;
    if (t >= 2.0) {
        const double u = 3.0 - t;
        return u * u * u * u * u / 120.0;
    }
    if (t >= 1.0)
        return (51.0 + t * (75.0 + t * (-210.0 + t * (150.0 + t * (-45.0 + 5.0 * t))))) /
               120.0;
    const double t2 = t * t;
    return (66.0 + t2 * (-60.0 + t2 * (30.0 - 10.0 * t))) / 120.0;
}

double bspline5_d(double x) {
    const double s = x < 0.0 ? -1.0 : 1.0;
    const double t = std::abs(x);
    if (t >= 3.0) return 0.0;
    double d;
    if (t >= 2.0) {
        const double u = 3.0 - t;
        d = -5.0 * u * u * u * u / 120.0;
    } else if (t >= 1.0) {
        d = (75.0 + t * (-420.0 + t * (450.0 + t * (-180.0 + 25.0 * t)))) / 120.0;
    } else {
        d = (t * (-120.0 + t * t * (120.0 - 50.0 * t))) / 120.0;
    }
    return s * d;
}

/// Periodic quintic-spline coefficients of a band-limited field, obtained
/// by zero-padding the coarse spectrum to the fine grid and dividing by
/// the spline's interpolation symbol per axis.
Eigen::ArrayXd spline_coefficients(const ScalarField& f, int m) {
    const Grid& g = f.grid();
    const int n = g.n();
    const Eigen::ArrayXcd& spec = f.spectrum();

    GridPtr fine = make_grid(m, g.length(), 1.0);
    Eigen::ArrayXcd fine_spec = Eigen::ArrayXcd::Zero(fine->spec_size());

    Eigen::ArrayXd symbol(m);
    for (int k = 0; k < m; ++k) {
        const double th = 2.0 * M_PI * k / m;
        symbol[k] = (66.0 + 52.0 * std::cos(th) + 2.0 * std::cos(2.0 * th)) / 120.0;
    }

    const int nx = n / 2 + 1;
    const int mx = m / 2 + 1;
    for (int kz = 0; kz < n; ++kz) {
        const int sz = g.signed_mode(kz);
        if (std::abs(sz) >= n / 2) continue;
        const int fz = sz >= 0 ? sz : sz + m;
        for (int ky = 0; ky < n; ++ky) {
            const int sy = g.signed_mode(ky);
            if (std::abs(sy) >= n / 2) continue;
            const int fy = sy >= 0 ? sy : sy + m;
            for (int kx = 0; kx < n / 2; ++kx) {
                const std::int64_t src = kx + std::int64_t(nx) * (ky + std::int64_t(n) * kz);
                const std::int64_t dst = kx + std::int64_t(mx) * (fy + std::int64_t(m) * fz);
                fine_spec[dst] = spec[src] / (symbol[kx] * symbol[(fy) % m] * symbol[(fz) % m]);
            }
        }
    }
    return fft_inverse(m, fine_spec);
}

}  // namespace

struct SpacetimeMetric::SnapshotSplines {
    // coefficient grids: v (3), cs2, and their on-shell time derivatives
    std::array<Eigen::ArrayXd, 8> coef;
    int m = 0;
    double length = 0.0;

    struct Sample {
        double value;
        std::array<double, 3> grad;
    };

    Sample eval(int field, const std::array<double, 3>& x) const {
        const double h = length / m;
        double wv[3][6], wd[3][6];
        int base[3];
        for (int ax = 0; ax < 3; ++ax) {
            double u = x[ax] / h;
            u -= std::floor(u / m) * m;  // periodic wrap into [0, m)
            const int b = int(std::floor(u));
            const double t = u - b;
            base[ax] = b;
            for (int o = -2; o <= 3; ++o) {
                wv[ax][o + 2] = bspline5(t - o);
                wd[ax][o + 2] = bspline5_d(t - o) / h;
            }
        }
        const Eigen::ArrayXd& c = coef[field];
        double acc = 0.0, gx = 0.0, gy = 0.0, gz = 0.0;
        for (int oz = -2; oz <= 3; ++oz) {
            const int iz = (base[2] + oz + 2 * m) % m;
            for (int oy = -2; oy <= 3; ++oy) {
                const int iy = (base[1] + oy + 2 * m) % m;
                const std::int64_t rowbase = std::int64_t(m) * (iy + std::int64_t(m) * iz);
                const double wyz = wv[1][oy + 2] * wv[2][oz + 2];
                const double wdy = wd[1][oy + 2] * wv[2][oz + 2];
                const double wdz = wv[1][oy + 2] * wd[2][oz + 2];
                double sv = 0.0, sd = 0.0;
                for (int ox = -2; ox <= 3; ++ox) {
                    const int ix = (base[0] + ox + 2 * m) % m;
                    const double cv = c[rowbase + ix];
                    sv += cv * wv[0][ox + 2];
                    sd += cv * wd[0][ox + 2];
                }
                acc += sv * wyz;
                gx += sd * wyz;
                gy += sv * wdy;
                gz += sv * wdz;
            }
        }
        return {acc, {gx, gy, gz}};
    }
};

SpacetimeMetric::SpacetimeMetric(std::shared_ptr<const SnapshotStack> stack, int upsample)
    : stack_(std::move(stack)) {
    if (stack_->size() < 2)
        throw Error("SpacetimeMetric: needs at least two snapshots");
    const int n = stack_->at(0).grid().n();
    fine_n_ = upsample > 0 ? upsample : std::max(2 * n, 64);
}

double SpacetimeMetric::t_begin() const { return stack_->at(0).time(); }
double SpacetimeMetric::t_end() const { return stack_->at(stack_->size() - 1).time(); }

double SpacetimeMetric::next_knot(double t) const {
    const double dt = stack_->dt_snap();
    const double u = (t - t_begin()) / dt;
    const double k = std::floor(u + 1e-9) + 1.0;
    return std::min(t_begin() + k * dt, t_end());
}

const SpacetimeMetric::SnapshotSplines& SpacetimeMetric::splines_at(std::size_t i) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(i);
        if (it != cache_.end()) return *it->second;
    }
    const FluidState& st = stack_->at(i);
    const EquationOfState& eos = stack_->eos();
    auto sp = std::make_shared<SnapshotSplines>();
    sp->m = fine_n_;
    sp->length = st.grid().length();

    const Tendency tend = rhs(st, eos);
    const ScalarField cs2 = sound_speed_squared(st, eos);
    // cs2_t = (gamma - 1) cs2 rho_t on shell
    const ScalarField cs2_t(st.grid_ptr(),
                            (eos.gamma - 1.0) * cs2.values() * tend.drho_dt.values());

    for (int c = 0; c < 3; ++c) {
        sp->coef[c] = spline_coefficients(st.velocity()[c], fine_n_);
        sp->coef[4 + c] = spline_coefficients(tend.dv_dt[c], fine_n_);
    }
    sp->coef[3] = spline_coefficients(cs2, fine_n_);
    sp->coef[7] = spline_coefficients(cs2_t, fine_n_);

    std::lock_guard<std::mutex> lock(cache_mutex_);
    return *cache_.emplace(i, std::move(sp)).first->second;
}

MetricJet SpacetimeMetric::eval(double t, const std::array<double, 3>& x) const {
    const double t0 = t_begin();
    const double dt = stack_->dt_snap();
    const std::size_t last = stack_->size() - 1;
    if (t < t0 - 1e-12 || t > t_end() + 1e-12)
        throw LeftDomain("SpacetimeMetric::eval: t outside the stack range");

    double u = (t - t0) / dt;
    std::size_t k = std::min<std::size_t>(last - 1, std::size_t(std::max(0.0, std::floor(u))));
    const double s = u - double(k);

    // cubic Hermite weights on [0, 1]
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    const double d00 = 6.0 * s * (s - 1.0) / dt;
    const double d10 = 1.0 - 4.0 * s + 3.0 * s * s;
    const double d01 = -d00;
    const double d11 = s * (3.0 * s - 2.0);

    const SnapshotSplines& a = splines_at(k);
    const SnapshotSplines& b = splines_at(k + 1);

    MetricJet jet;
    jet.t = t;
    jet.x = x;
    for (int f = 0; f < 4; ++f) {
        const auto va = a.eval(f, x);
        const auto vta = a.eval(4 + f, x);
        const auto vb = b.eval(f, x);
        const auto vtb = b.eval(4 + f, x);

        const double value = h00 * va.value + h10 * dt * vta.value + h01 * vb.value +
                             h11 * dt * vtb.value;
        const double dval_dt = d00 * va.value + d10 * vta.value + d01 * vb.value +
                               d11 * vtb.value;
        std::array<double, 3> grad;
        for (int ax = 0; ax < 3; ++ax)
            grad[ax] = h00 * va.grad[ax] + h10 * dt * vta.grad[ax] + h01 * vb.grad[ax] +
                       h11 * dt * vtb.grad[ax];
        if (f < 3) {
            jet.v[f] = value;
            jet.v_dt[f] = dval_dt;
            jet.v_dx[f] = grad;
        } else {
            jet.cs2 = value;
            jet.cs2_dt = dval_dt;
            jet.cs2_dx = grad;
        }
    }
    return jet;
}

MetricJet SpacetimeMetric::eval_exact(double t, const std::array<double, 3>& x) const {
    const double t0 = t_begin();
    const double dt = stack_->dt_snap();
    const std::size_t last = stack_->size() - 1;
    if (t < t0 - 1e-12 || t > t_end() + 1e-12)
        throw LeftDomain("SpacetimeMetric::eval_exact: t outside the stack range");
    double u = (t - t0) / dt;
    std::size_t k = std::min<std::size_t>(last - 1, std::size_t(std::max(0.0, std::floor(u))));
    const double s = u - double(k);
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    const double d00 = 6.0 * s * (s - 1.0) / dt;
    const double d10 = 1.0 - 4.0 * s + 3.0 * s * s;
    const double d01 = -d00;
    const double d11 = s * (3.0 * s - 2.0);

    MetricJet jet;
    jet.t = t;
    jet.x = x;
    for (std::size_t node : {k, k + 1}) {
        const FluidState& st = stack_->at(node);
        const EquationOfState& eos = stack_->eos();
        const Tendency tend = rhs(st, eos);
        const ScalarField cs2 = sound_speed_squared(st, eos);
        const ScalarField cs2_t(st.grid_ptr(),
                                (eos.gamma - 1.0) * cs2.values() * tend.drho_dt.values());
        const double wv = node == k ? h00 : h01;
        const double wt = (node == k ? h10 : h11) * dt;
        const double dv = node == k ? d00 : d01;
        const double dtw = node == k ? d10 : d11;

        for (int f = 0; f < 3; ++f) {
            const ScalarField& base = st.velocity()[f];
            const ScalarField& tder = tend.dv_dt[f];
            jet.v[f] += wv * evaluate_at(base, x[0], x[1], x[2]) +
                        wt * evaluate_at(tder, x[0], x[1], x[2]);
            jet.v_dt[f] += dv * evaluate_at(base, x[0], x[1], x[2]) +
                           dtw * evaluate_at(tder, x[0], x[1], x[2]);
            for (int ax = 0; ax < 3; ++ax) {
                const ScalarField db = derivative(base, ax);
                const ScalarField dtd = derivative(tder, ax);
                jet.v_dx[f][ax] += wv * evaluate_at(db, x[0], x[1], x[2]) +
                                   wt * evaluate_at(dtd, x[0], x[1], x[2]);
            }
        }
        jet.cs2 += wv * evaluate_at(cs2, x[0], x[1], x[2]) +
                   wt * evaluate_at(cs2_t, x[0], x[1], x[2]);
        jet.cs2_dt += dv * evaluate_at(cs2, x[0], x[1], x[2]) +
                      dtw * evaluate_at(cs2_t, x[0], x[1], x[2]);
        for (int ax = 0; ax < 3; ++ax) {
            const ScalarField db = derivative(cs2, ax);
            const ScalarField dtd = derivative(cs2_t, ax);
            jet.cs2_dx[ax] += wv * evaluate_at(db, x[0], x[1], x[2]) +
                              wt * evaluate_at(dtd, x[0], x[1], x[2]);
        }
    }
    return jet;
}

}  // namespace ewb
