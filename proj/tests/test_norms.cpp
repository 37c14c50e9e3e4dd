#include <doctest.h>

#include <cmath>

#include "ewb/inequalities.hpp"
#include "ewb/norms.hpp"
#include "ewb/vorticity_identities.hpp"

using namespace ewb;

namespace {

ScalarField coord(GridPtr g, int axis) {
    const int n = g->n();
    Eigen::ArrayXd vals(g->size());
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const int idx[3] = {i, j, k};
                vals[g->index(i, j, k)] = idx[axis] * g->dx();
            }
    return ScalarField(g, std::move(vals));
}

}  // namespace

TEST_CASE("norm basics") {
    GridPtr g = make_grid(32);

    SUBCASE("zero field") {
        ScalarField z = ScalarField::zero(g);
        CHECK(sobolev_norm(z, 1.3).value == 0.0);
        CHECK(besov_norm(z, 0.5, INFINITY, 2.0).value == 0.0);
        CHECK(holder_norm(z, 0.4).value == 0.0);
    }

    SUBCASE("single dyadic mode: Hdot^s weight is exactly 2^{js}") {
        ScalarField x1 = coord(g, 0);
        for (int j = 0; j <= lp_max_shell(*g); ++j) {
            const double k = std::pow(2.0, j);
            ScalarField mode(g, (k * x1.values()).sin());
            const double l2 = mode.l2_norm();  // (2 pi)^{3/2} / sqrt(2)
            CHECK(std::abs(l2 - std::pow(2.0 * M_PI, 1.5) / std::sqrt(2.0)) < 1e-12);
            const double hs = homogeneous_sobolev(mode, 1.4);
            CHECK(std::abs(hs - std::pow(k, 1.4) * l2) / hs < 1e-12);
        }
    }

    SUBCASE("H^s is the additive combination") {
        ScalarField f = random_band_limited(g, 3, 6, 1.0);
        NormReport r = sobolev_norm(f, 1.7);
        CHECK(std::abs(r.value - (f.l2_norm() + homogeneous_sobolev(f, 1.7))) < 1e-12);
    }

    SUBCASE("Hdot^0 vs L2: partition overlap factor in [1, sqrt 2]") {
        ScalarField f = random_band_limited(g, 5, 8, 1.0);
        const double ratio = f.l2_norm() / homogeneous_sobolev(f, 0.0);
        CHECK(ratio >= 1.0 - 1e-12);
        CHECK(ratio <= std::sqrt(2.0) + 1e-12);
    }

    SUBCASE("monotone dyadic weights") {
        ScalarField f = random_band_limited(g, 8, 6, 1.0);
        CHECK(homogeneous_sobolev(f, 0.8) <= homogeneous_sobolev(f, 1.6) + 1e-12);
    }

    SUBCASE("holder norm of a constant is its sup") {
        ScalarField c = ScalarField::constant(g, -2.5);
        CHECK(std::abs(holder_norm(c, 0.5).value - 2.5) < 1e-13);
    }
}

TEST_CASE("riesz operator invariants") {
    GridPtr g = make_grid(32);
    auto riesz = [&](const ScalarField& f, int i, int j) {
        return apply_multiplier(f, [i, j](double kx, double ky, double kz) {
            const double k[3] = {kx, ky, kz};
            const double k2 = kx * kx + ky * ky + kz * kz;
            return k2 == 0.0 ? 0.0 : k[i] * k[j] / k2;
        });
    };

    SUBCASE("trace is the identity on zero-mean fields") {
        ScalarField f = random_band_limited(g, 7, 6, 1.0);
        ScalarField tr = riesz(f, 0, 0) + riesz(f, 1, 1) + riesz(f, 2, 2);
        CHECK((tr - f).l2_norm() / f.l2_norm() < 1e-12);
    }
    SUBCASE("single mode multiplies by k_i k_j / |k|^2") {
        ScalarField x1 = coord(g, 0), x2 = coord(g, 1);
        // k = (1, 2, 0): R_01 multiplier = 2/5
        ScalarField mode(g, (x1.values() + 2.0 * x2.values()).cos());
        ScalarField r01 = riesz(mode, 0, 1);
        CHECK((r01 - ScalarField(g, 0.4 * mode.values())).max_abs() < 1e-13);
    }
}

TEST_CASE("energy functionals and gronwall fits") {
    SUBCASE("constant state: E constant in time, C = 1") {
        SimConfig cfg;
        cfg.grid_n = 16;
        cfg.dt = 5e-3;
        cfg.t_end = 0.1;
        cfg.snap_every = 4;
        cfg.initial_data = {"constant", {{"rho", 0.2}, {"vx", 0.3}}};
        SnapshotStack stack = simulate(cfg);
        auto energies = energy_functionals(stack, 2.4, 2.2);
        for (const auto& e : energies)
            CHECK(std::abs(e.energy - energies.front().energy) /
                      energies.front().energy <
                  1e-12);
        GronwallReport rep = gronwall_check(stack, 2.4, 2.2);
        CHECK(std::abs(rep.fitted_constant - 1.0) < 1e-10);
        CHECK(rep.pass);
    }
    SUBCASE("steady shear: E(t) = E(0), C = 1") {
        SimConfig cfg;
        cfg.grid_n = 16;
        cfg.dt = 1e-3;
        cfg.t_end = 0.05;
        cfg.snap_every = 10;
        cfg.initial_data = {"shear", {{"amplitude", 0.2}}};
        SnapshotStack stack = simulate(cfg);
        GronwallReport rep = gronwall_check(stack, 2.4, 2.2);
        CHECK(std::abs(rep.fitted_constant - 1.0) < 1e-10);
    }
    SUBCASE("small vortical run: C order one") {
        SimConfig cfg;
        cfg.grid_n = 24;
        cfg.dt = 2e-3;
        cfg.t_end = 0.1;
        cfg.snap_every = 5;
        cfg.initial_data = {"random_band_limited",
                            {{"amplitude", 0.05}, {"band", 2}, {"seed", 8}}};
        SnapshotStack stack = simulate(cfg);
        GronwallReport rep = gronwall_check(stack, 2.4, 2.2);
        CHECK(rep.fitted_constant <= 10.0);
        CHECK(rep.pass);
        for (double e : rep.energy) CHECK(std::isfinite(e));
    }
}

TEST_CASE("time quadrature") {
    std::vector<double> t = {0.0, 0.5, 1.0};
    std::vector<double> v = {2.0, 2.0, 2.0};
    CHECK(std::abs(lq_time_norm(t, v, 2.0) - 2.0) < 1e-14);
    CHECK(std::abs(lq_time_norm(t, v, INFINITY) - 2.0) < 1e-14);
}
