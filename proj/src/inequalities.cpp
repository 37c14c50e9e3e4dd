#include "ewb/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "ewb/initial_data.hpp"
#include "ewb/parallel.hpp"

namespace ewb {

namespace {

double param(const SampleParams& p, const std::string& key, double fallback) {
    auto it = p.lemma_params.find(key);
    return it == p.lemma_params.end() ? fallback : it->second;
}

struct SampleFields {
    ScalarField h, f;
    VectorField v;
};

SampleFields make_fields(const SampleParams& p, int sample_index, double f_scale) {
    GridPtr grid = make_grid(p.grid_n);
    const std::uint64_t s = p.seed * 1000003ULL + std::uint64_t(sample_index);
    SampleFields out;
    out.h = random_band_limited(grid, s, p.band, p.amplitude, 10);
    ScalarField f = random_band_limited(grid, s, p.band, p.amplitude, 11);
    out.f = ScalarField(grid, f_scale * f.values());
    if (p.constant_v) {
        out.v = VectorField(ScalarField::constant(grid, 0.31),
                            ScalarField::constant(grid, -0.77),
                            ScalarField::constant(grid, 0.52));
    } else {
        out.v = VectorField(random_band_limited(grid, s, p.band, p.amplitude, 12),
                            random_band_limited(grid, s, p.band, p.amplitude, 13),
                            random_band_limited(grid, s, p.band, p.amplitude, 14));
    }
    return out;
}

ScalarField advect(const VectorField& v, const ScalarField& f) {
    return dot(v, gradient(f));
}

std::vector<ScalarField> velocity_gradients(const VectorField& v) {
    std::vector<ScalarField> out;
    for (int a = 0; a < 3; ++a)
        for (int j = 0; j < 3; ++j) out.push_back(derivative(v[a], j));
    return out;
}

/// Riesz operator component d_i d_j (-Lap)^{-1} (zero mode -> 0).
ScalarField riesz(const ScalarField& f, int i, int j) {
    return apply_multiplier(f, [i, j](double kx, double ky, double kz) {
        const double k[3] = {kx, ky, kz};
        const double k2 = kx * kx + ky * ky + kz * kz;
        return k2 == 0.0 ? 0.0 : k[i] * k[j] / k2;
    });
}

}  // namespace

const std::vector<std::string>& inequality_ids() {
    static const std::vector<std::string> ids = {"jh",  "cj",  "jh0", "ps", "lpe",
                                                 "wql", "LPE", "ceR", "YR", "ce"};
    return ids;
}

std::pair<double, double> inequality_instance(const std::string& id,
                                              const SampleParams& p, int sample_index,
                                              double f_scale) {
    const SampleFields sf = make_fields(p, sample_index, f_scale);
    const ScalarField& h = sf.h;
    const ScalarField& f = sf.f;
    const VectorField& v = sf.v;

    if (id == "jh") {
        const double s = param(p, "s", 1.5);
        if (s < 0.0) throw HypothesisViolation("jh: s >= 0 required");
        const ScalarField lhs_f =
            fractional_power(h * f, s) - fractional_power(h, s) * f;
        const double rhs = fractional_power(h, s - 1.0).l2_norm() *
                               gradient(f).max_abs() +
                           h.max_abs() * fractional_power(f, s).l2_norm();
        return {lhs_f.l2_norm(), rhs};
    }
    if (id == "cj") {
        const double a = param(p, "a", 1.5);
        if (a < 0.0) throw HypothesisViolation("cj: a >= 0 required");
        const double lhs = sobolev_norm(h * f, a).value;
        const double rhs = h.max_abs() * sobolev_norm(f, a).value +
                           f.max_abs() * sobolev_norm(h, a).value;
        return {lhs, rhs};
    }
    if (id == "jh0") {
        const double s = param(p, "s", 1.5);
        if (s < 0.0) throw HypothesisViolation("jh0: s >= 0 required");
        const ScalarField fu(h.grid_ptr(), h.values().sin());  // F(u) = sin u, F(0) = 0
        const double lhs = sobolev_norm(fu, s).value;
        const double rhs = sobolev_norm(h, s).value * (1.0 + h.max_abs());
        return {lhs, rhs};
    }
    if (id == "ps") {
        const double r = param(p, "r", 1.0);
        const double rp = param(p, "rp", 1.0);
        if (!(r >= 0.0 && r < 1.5 && rp >= 0.0 && rp < 1.5 && r + rp > 1.5))
            throw HypothesisViolation("ps: need 0 <= r, r' < 3/2 and r + r' > 3/2");
        const double lhs = sobolev_norm(h * f, r + rp - 1.5).value;
        const double rhs = sobolev_norm(h, r).value * sobolev_norm(f, rp).value;
        return {lhs, rhs};
    }
    if (id == "lpe") {
        const double a = param(p, "alpha", 0.5);
        if (!(a >= 0.0 && a < 1.0)) throw HypothesisViolation("lpe: 0 <= alpha < 1");
        const double lhs = fractional_power(h * f, a).l2_norm();
        const double rhs = besov_norm(h, a, INFINITY, 2.0).value * f.l2_norm() +
                           h.max_abs() * homogeneous_sobolev(f, a);
        return {lhs, rhs};
    }
    if (id == "wql") {
        const double a = param(p, "alpha", 0.5);
        if (!(a > 0.0 && a < 1.0)) throw HypothesisViolation("wql: 0 < alpha < 1");
        const ScalarField f3 = v[0];  // third independent factor
        const double lhs = fractional_power(h * f * f3, a).l2_norm();
        const double n1p[3] = {sobolev_norm(h, 1.0 + a).value,
                               sobolev_norm(f, 1.0 + a).value,
                               sobolev_norm(f3, 1.0 + a).value};
        const double n1[3] = {sobolev_norm(h, 1.0).value, sobolev_norm(f, 1.0).value,
                              sobolev_norm(f3, 1.0).value};
        double rhs = INFINITY;
        for (int i = 0; i < 3; ++i) {
            double prod = n1p[i];
            for (int j = 0; j < 3; ++j)
                if (j != i) prod *= n1[j];
            rhs = std::min(rhs, prod);
        }
        return {lhs, rhs};
    }
    if (id == "LPE") {
        const double a = param(p, "alpha", 0.5);
        const double b = param(p, "beta", a + 0.1);
        if (!(a > 0.0 && a < 1.0 && b > a))
            throw HypothesisViolation("LPE: 0 < alpha < 1 and beta > alpha");
        const double lhs = besov_norm(h * f, a, INFINITY, 2.0).value;
        const double rhs = h.max_abs() * besov_norm(f, a, INFINITY, 2.0).value +
                           holder_norm(h, b).value * f.max_abs();
        return {lhs, rhs};
    }
    if (id == "ceR") {
        const double a = param(p, "alpha", 0.5);
        if (!(a >= 0.0 && a < 1.0)) throw HypothesisViolation("ceR: 0 <= alpha < 1");
        const ScalarField vdf = advect(v, f);
        double lhs2 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const ScalarField comm = riesz(vdf, i, j) - advect(v, riesz(f, i, j));
                lhs2 += std::pow(homogeneous_sobolev(comm, a), 2);
            }
        double b1p = 0.0, b1 = 0.0;
        for (int c = 0; c < 3; ++c) {
            b1p = std::max(b1p, besov_norm(v[c], 1.0 + a, INFINITY, INFINITY).value);
            b1 = std::max(b1, besov_norm(v[c], 1.0, INFINITY, INFINITY).value);
        }
        const double rhs = b1p * f.l2_norm() + b1 * homogeneous_sobolev(f, a);
        return {std::sqrt(lhs2), rhs};
    }
    if (id == "YR") {
        const double s1 = param(p, "s1", 2.2);
        const double s2 = param(p, "s2", 2.2);
        if (!(s1 > 2.0 && s2 >= s1))
            throw HypothesisViolation("YR: need 2 < s1 <= s2");
        const ScalarField vdf = advect(v, f);
        const int jmax = lp_max_shell(f.grid());
        double lhs2 = 0.0;
        for (int j = 0; j <= jmax; ++j) {
            const ScalarField comm = lp_project(vdf, j) - advect(v, lp_project(f, j));
            lhs2 += std::pow(std::pow(2.0, (s1 - 1.0) * j) *
                                 homogeneous_sobolev(comm, s2 - s1),
                             2);
        }
        double vd_linf = 0.0;
        for (const auto& g : velocity_gradients(v)) vd_linf = std::max(vd_linf, g.max_abs());
        double v_hs2 = 0.0;
        for (int c = 0; c < 3; ++c) v_hs2 += std::pow(sobolev_norm(v[c], s2).value, 2);
        const double rhs = vd_linf * homogeneous_sobolev(f, s2) +
                           std::sqrt(v_hs2) * sobolev_norm(f, 1.0).value;
        return {std::sqrt(lhs2), rhs};
    }
    if (id == "ce") {
        const double a = param(p, "alpha", 0.5);
        if (!(a > 0.0 && a < 1.0)) throw HypothesisViolation("ce: 0 < alpha < 1");
        const ScalarField comm =
            fractional_power(advect(v, f), a) - advect(v, fractional_power(f, a));
        const double rhs = besov_norm_family(velocity_gradients(v), 0.0, INFINITY, 2.0) *
                           homogeneous_sobolev(f, a);
        return {comm.l2_norm(), rhs};
    }
    throw HypothesisViolation("unknown inequality id: " + id);
}

RatioReport inequality_sample(const std::string& id, const SampleParams& p) {
    RatioReport rep;
    rep.inequality_id = id;
    rep.samples = p.n_samples;
    rep.ratios.assign(p.n_samples, 0.0);

    parallel_for(p.n_samples, [&](std::int64_t i) {
        const auto [lhs, rhs] = inequality_instance(id, p, int(i));
        if (rhs > 1e-100)
            rep.ratios[i] = lhs / rhs;
        else
            rep.ratios[i] = lhs <= 1e-12 * std::max(1.0, p.amplitude) ? 0.0 : INFINITY;
    });
    for (int i = 0; i < p.n_samples; ++i) {
        const double ratio = rep.ratios[i];
        if (std::isinf(ratio)) rep.fail = true;
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.worst_sample_seed = p.seed * 1000003ULL + std::uint64_t(i);
        }
    }
    std::vector<double> sorted = rep.ratios;
    std::sort(sorted.begin(), sorted.end());
    rep.median_ratio = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
    if (!std::isfinite(rep.max_ratio)) rep.fail = true;
    return rep;
}

}  // namespace ewb
