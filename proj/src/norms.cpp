#include "ewb/norms.hpp"

#include <cmath>

#include "ewb/evolution.hpp"

namespace ewb {

namespace {

double shell_lp_norm(const ScalarField& shell, double p) {
    if (std::isinf(p)) return shell.max_abs();
    if (p == 2.0) return shell.l2_norm();
    throw HypothesisViolation("shell norms support p in {2, inf} only");
}

/// All shells of f: pairs (j, Delta_j f), j = 0..jmax, plus the top block
/// carried with index jmax+1.
template <typename F>
void for_each_shell(const ScalarField& f, F&& fn) {
    const int jmax = lp_max_shell(f.grid());
    for (int j = 0; j <= jmax; ++j) fn(j, lp_project(f, j));
    fn(jmax + 1, lp_top_block(f));
}

}  // namespace

double homogeneous_sobolev(const ScalarField& f, double s) {
    double acc = 0.0;
    for_each_shell(f, [&](int j, const ScalarField& shell) {
        const double w = std::pow(2.0, j * s);
        const double nj = shell.l2_norm();
        acc += w * w * nj * nj;
    });
    return std::sqrt(acc);
}

NormReport sobolev_norm(const ScalarField& f, double s) {
    NormReport r;
    r.norm_id = "H^s";
    r.s = s;
    r.p = 2.0;
    r.r = 2.0;
    r.grid_n = f.grid().n();
    r.grid_length = f.grid().length();
    r.value = f.l2_norm() + homogeneous_sobolev(f, s);
    return r;
}

NormReport besov_norm(const ScalarField& f, double s, double p, double r) {
    if (!(r >= 1.0)) throw HypothesisViolation("besov_norm: r must be >= 1");
    NormReport out;
    out.norm_id = "Bdot^s_{p,r}";
    out.s = s;
    out.p = p;
    out.r = r;
    out.grid_n = f.grid().n();
    out.grid_length = f.grid().length();
    double acc = 0.0;
    for_each_shell(f, [&](int j, const ScalarField& shell) {
        const double term = std::pow(2.0, j * s) * shell_lp_norm(shell, p);
        if (std::isinf(r))
            acc = std::max(acc, term);
        else
            acc += std::pow(term, r);
    });
    out.value = std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
    return out;
}

NormReport holder_norm(const ScalarField& f, double delta) {
    NormReport r = besov_norm(f, delta, INFINITY, INFINITY);
    r.norm_id = "C^delta";
    r.value += f.max_abs();
    return r;
}

double sobolev_norm_vec(const VectorField& u, double s) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += std::pow(sobolev_norm(u[i], s).value, 2);
    return std::sqrt(acc);
}

double besov_norm_family(const std::vector<ScalarField>& fields, double s, double p,
                         double r) {
    if (fields.empty()) return 0.0;
    const int jmax = lp_max_shell(fields[0].grid());
    double acc = 0.0;
    for (int j = 0; j <= jmax + 1; ++j) {
        double shell_max = 0.0;
        for (const auto& f : fields) {
            ScalarField shell = j <= jmax ? lp_project(f, j) : lp_top_block(f);
            shell_max = std::max(shell_max, shell_lp_norm(shell, p));
        }
        const double term = std::pow(2.0, j * s) * shell_max;
        if (std::isinf(r))
            acc = std::max(acc, term);
        else
            acc += std::pow(term, r);
    }
    return std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
}

std::vector<EnergySample> energy_functionals(const SnapshotStack& stack, double s,
                                             double s0) {
    std::vector<EnergySample> out;
    out.reserve(stack.size());
    for (std::size_t i = 0; i < stack.size(); ++i) {
        const FluidState& st = stack.at(i);
        const VectorField w = specific_vorticity(st, stack.eos());
        EnergySample e;
        e.time = st.time();
        e.energy = sobolev_norm(st.rho_log(), s).value +
                   sobolev_norm_vec(st.velocity(), s) + sobolev_norm_vec(w, s0);
        e.energy_low = sobolev_norm(st.rho_log(), 2.0).value +
                       sobolev_norm_vec(st.velocity(), 2.0) + sobolev_norm_vec(w, 2.0);
        out.push_back(e);
    }
    return out;
}

GronwallReport gronwall_check(const SnapshotStack& stack, double s, double s0,
                              double bound) {
    if (stack.size() < 3)
        throw Error("gronwall_check: needs at least 3 snapshots");
    GronwallReport rep;
    const auto energies = energy_functionals(stack, s, s0);

    for (std::size_t i = 0; i < stack.size(); ++i) {
        const FluidState& st = stack.at(i);
        const ScalarField cs2 = sound_speed_squared(st, stack.eos());
        const VectorField grad_rho = gradient(st.rho_log());

        std::vector<ScalarField> dv_family;   // the 9 space derivatives of v
        double linf = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int j = 0; j < 3; ++j) {
                dv_family.push_back(derivative(st.velocity()[a], j));
                linf = std::max(linf, dv_family.back().max_abs());
            }
        // on-shell material derivatives
        const ScalarField div_v = divergence(st.velocity());
        linf = std::max(linf, div_v.max_abs());  // |T rho|
        for (int i2 = 0; i2 < 3; ++i2) {
            ScalarField tv(st.grid_ptr(), -cs2.values() * grad_rho[i2].values());
            linf = std::max(linf, tv.max_abs());
            linf = std::max(linf, grad_rho[i2].max_abs());
        }
        const double besov = besov_norm_family(dv_family, s0 - 2.0, INFINITY, 2.0);

        rep.times.push_back(st.time());
        rep.integrand.push_back(linf + besov);
        rep.energy.push_back(energies[i].energy);
    }

    const double e0 = rep.energy.front();
    if (e0 <= 0.0) {
        rep.degenerate = true;
        rep.fitted_constant = 1.0;
        rep.pass = true;
        return rep;
    }
    double running = 0.0;
    double cmax = 1.0;
    for (std::size_t i = 1; i < rep.times.size(); ++i) {
        running += 0.5 * (rep.integrand[i] + rep.integrand[i - 1]) *
                   (rep.times[i] - rep.times[i - 1]);
        cmax = std::max(cmax, rep.energy[i] / (e0 * std::exp(running)));
    }
    rep.fitted_constant = cmax;
    rep.pass = cmax <= bound;
    return rep;
}

double lq_time_norm(const std::vector<double>& times, const std::vector<double>& values,
                    double q) {
    if (times.size() != values.size() || times.size() < 2)
        throw Error("lq_time_norm: need matching series with >= 2 samples");
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double a = std::pow(std::abs(values[i - 1]), q);
        const double b = std::pow(std::abs(values[i]), q);
        acc += 0.5 * (a + b) * (times[i] - times[i - 1]);
    }
    return std::pow(acc, 1.0 / q);
}

}  // namespace ewb
