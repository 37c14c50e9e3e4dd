#include "ewb/evolution.hpp"

#include <cmath>

#include "ewb/norms.hpp"

namespace ewb {

SnapshotStack::SnapshotStack(std::vector<FluidState> states, EquationOfState eos)
    : states_(std::move(states)), eos_(eos) {
    if (states_.size() < 2) {
        dt_snap_ = 0.0;
        return;
    }
    dt_snap_ = states_[1].time() - states_[0].time();
    for (std::size_t i = 1; i < states_.size(); ++i) {
        const double dt_i = states_[i].time() - states_[i - 1].time();
        if (std::abs(dt_i - dt_snap_) > 1e-12 * std::max(1.0, std::abs(dt_snap_)))
            throw Error("SnapshotStack: non-uniform snapshot spacing");
    }
}

ScalarField time_derivative_o4(const SnapshotStack& stack,
                               const std::function<ScalarField(std::size_t)>& extract,
                               std::size_t center, int stride) {
    if (!stack.stencil_ok(center, stride))
        throw StencilOutOfRange("time_derivative_o4: index " + std::to_string(center) +
                                " stride " + std::to_string(stride));
    const double h = stack.dt_snap() * stride;
    // f'(t) = (f(-2h) - 8 f(-h) + 8 f(h) - f(2h)) / (12 h)
    const ScalarField fm2 = extract(center - 2 * stride);
    const ScalarField fm1 = extract(center - stride);
    const ScalarField fp1 = extract(center + stride);
    const ScalarField fp2 = extract(center + 2 * stride);
    return ScalarField(fm2.grid_ptr(),
                       (fm2.values() - 8.0 * fm1.values() + 8.0 * fp1.values() -
                        fp2.values()) /
                           (12.0 * h));
}

namespace {

Tendency finish_tendency(const FluidState& state, Eigen::ArrayXd drho,
                         std::array<Eigen::ArrayXd, 3> dv) {
    const GridPtr g = state.grid_ptr();
    return Tendency{dealias(ScalarField(g, std::move(drho))),
                    dealias(VectorField(ScalarField(g, std::move(dv[0])),
                                        ScalarField(g, std::move(dv[1])),
                                        ScalarField(g, std::move(dv[2]))))};
}

}  // namespace

Tendency rhs(const FluidState& state, const EquationOfState& eos) {
    const VectorField& v = state.velocity();
    const ScalarField cs2 = sound_speed_squared(state, eos);
    const VectorField grad_rho = gradient(state.rho_log());

    std::array<std::array<ScalarField, 3>, 3> dv;  // dv[a][j] = d_j v^a
    for (int a = 0; a < 3; ++a)
        for (int j = 0; j < 3; ++j) dv[a][j] = derivative(v[a], j);

    Eigen::ArrayXd div_v = dv[0][0].values() + dv[1][1].values() + dv[2][2].values();
    Eigen::ArrayXd drho = -(v[0].values() * grad_rho[0].values() +
                            v[1].values() * grad_rho[1].values() +
                            v[2].values() * grad_rho[2].values()) -
                          div_v;

    std::array<Eigen::ArrayXd, 3> dvdt;
    for (int i = 0; i < 3; ++i) {
        dvdt[i] = -(v[0].values() * dv[i][0].values() +
                    v[1].values() * dv[i][1].values() +
                    v[2].values() * dv[i][2].values()) -
                  cs2.values() * grad_rho[i].values();
    }
    return finish_tendency(state, std::move(drho), std::move(dvdt));
}

Eigen::Matrix4d hyperbolic_flux_matrix(int axis, double cs2, const Eigen::Vector3d& v) {
    Eigen::Matrix4d a = Eigen::Matrix4d::Identity() * v[axis];
    a(0, axis + 1) = 1.0;
    a(axis + 1, 0) = cs2;
    return a;
}

Tendency rhs_matrix_form(const FluidState& state, const EquationOfState& eos) {
    const VectorField& v = state.velocity();
    const ScalarField cs2 = sound_speed_squared(state, eos);

    std::array<ScalarField, 4> u = {state.rho_log(), v[0], v[1], v[2]};
    std::array<std::array<ScalarField, 4>, 3> du;  // du[i][c] = d_i U_c
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 4; ++c) du[i][c] = derivative(u[c], i);

    const std::int64_t npts = state.grid().size();
    Eigen::ArrayXd out[4];
    for (auto& o : out) o = Eigen::ArrayXd::Zero(npts);

    for (std::int64_t p = 0; p < npts; ++p) {
        const Eigen::Vector3d vp(v[0].values()[p], v[1].values()[p], v[2].values()[p]);
        Eigen::Vector4d acc = Eigen::Vector4d::Zero();
        for (int i = 0; i < 3; ++i) {
            const Eigen::Matrix4d a = hyperbolic_flux_matrix(i, cs2.values()[p], vp);
            Eigen::Vector4d dui(du[i][0].values()[p], du[i][1].values()[p],
                                du[i][2].values()[p], du[i][3].values()[p]);
            acc += a * dui;
        }
        for (int c = 0; c < 4; ++c) out[c][p] = -acc[c];
    }
    return finish_tendency(state, std::move(out[0]),
                           {std::move(out[1]), std::move(out[2]), std::move(out[3])});
}

FluidState step_rk4(const FluidState& state, const EquationOfState& eos, double dt) {
    if (!(dt > 0.0)) throw Error("step_rk4: dt must be positive");

    auto checked = [&](Eigen::ArrayXd a, double t_stage) {
        const double peak = a.abs().maxCoeff();
        if (!std::isfinite(peak) || peak > 1e6)
            throw BlowupDetected("step_rk4: runaway field inside a stage", t_stage,
                                 peak);
        return ScalarField(state.grid_ptr(), std::move(a));
    };
    // a stage that dives below the vacuum floor is a runaway trajectory,
    // not a valid near-vacuum state
    auto advance = [&](const Tendency& k, double scale) {
        const double ts = state.time() + scale;
        try {
            return FluidState(
                checked(state.rho_log().values() + scale * k.drho_dt.values(), ts),
                VectorField(
                    checked(state.velocity()[0].values() + scale * k.dv_dt[0].values(),
                            ts),
                    checked(state.velocity()[1].values() + scale * k.dv_dt[1].values(),
                            ts),
                    checked(state.velocity()[2].values() + scale * k.dv_dt[2].values(),
                            ts)),
                ts);
        } catch (const VacuumState&) {
            throw BlowupDetected("step_rk4: density hit the vacuum floor inside a stage",
                                 ts, 0.0);
        }
    };

    const Tendency k1 = rhs(state, eos);
    const Tendency k2 = rhs(advance(k1, 0.5 * dt), eos);
    const Tendency k3 = rhs(advance(k2, 0.5 * dt), eos);
    const Tendency k4 = rhs(advance(k3, dt), eos);

    const GridPtr g = state.grid_ptr();
    Eigen::ArrayXd rho = state.rho_log().values() +
                         (dt / 6.0) * (k1.drho_dt.values() + 2.0 * k2.drho_dt.values() +
                                       2.0 * k3.drho_dt.values() + k4.drho_dt.values());
    std::array<Eigen::ArrayXd, 3> vel;
    for (int i = 0; i < 3; ++i)
        vel[i] = state.velocity()[i].values() +
                 (dt / 6.0) * (k1.dv_dt[i].values() + 2.0 * k2.dv_dt[i].values() +
                               2.0 * k3.dv_dt[i].values() + k4.dv_dt[i].values());

    double peak = rho.abs().maxCoeff();
    for (const auto& c : vel) peak = std::max(peak, c.abs().maxCoeff());
    if (!std::isfinite(peak) || peak > 1e6)
        throw BlowupDetected("step_rk4: field magnitude exceeded the blowup threshold",
                             state.time() + dt, peak);

    try {
        return FluidState(ScalarField(g, std::move(rho)),
                          VectorField(ScalarField(g, std::move(vel[0])),
                                      ScalarField(g, std::move(vel[1])),
                                      ScalarField(g, std::move(vel[2]))),
                          state.time() + dt);
    } catch (const VacuumState&) {
        throw BlowupDetected("step_rk4: density hit the vacuum floor during a step",
                             state.time() + dt, peak);
    }
}

void SimConfig::validate() const {
    if (dt.has_value() == cfl.has_value())
        throw ConfigError("SimConfig: exactly one of time.dt / time.cfl required");
    if (!(t_end > 0.0)) throw ConfigError("SimConfig: t_end must be positive");
    if (!(guards.c0 > 0.0)) throw ConfigError("SimConfig: guards.c0 must be positive");
    if (snap_every < 1) throw ConfigError("SimConfig: snap_every must be >= 1");
}

double SimConfig::resolve_dt(const FluidState& initial) const {
    if (dt) return *dt;
    const double speed = initial.velocity().max_abs() +
                         std::sqrt(sound_speed_squared(initial, eos).values().maxCoeff());
    const double dx = grid_length / grid_n;
    double dt_raw = *cfl * dx / std::max(speed, 1e-12);
    // land on t_end exactly so snapshots stay uniformly spaced
    const int nsteps = std::max(1, int(std::ceil(t_end / dt_raw - 1e-12)));
    return t_end / nsteps;
}

namespace {

StepDiagnostics diagnostics_for(const FluidState& state, const EquationOfState& eos,
                                double dt) {
    StepDiagnostics d;
    d.time = state.time();
    d.mass = state.rho_log().values().exp().mean() * std::pow(state.grid().length(), 3);
    d.min_cs = std::sqrt(sound_speed_squared(state, eos).values().minCoeff());
    d.max_speed = state.velocity().max_abs();
    d.cfl = dt * (d.max_speed + std::sqrt(sound_speed_squared(state, eos)
                                              .values()
                                              .maxCoeff())) *
            state.grid().n() / state.grid().length();
    return d;
}

}  // namespace

SnapshotStack simulate(const SimConfig& config,
                       const std::function<void(const FluidState&,
                                                const StepDiagnostics&)>& on_snapshot) {
    config.validate();
    GridPtr grid = make_grid(config.grid_n, config.grid_length, config.dealias_fraction);
    FluidState state = make_initial_state(grid, config.initial_data);
    const double dt = config.resolve_dt(state);
    const int nsteps = std::max(1, int(std::llround(config.t_end / dt)));

    std::vector<FluidState> snaps;
    auto guard = [&](const FluidState& s) {
        const double min_cs =
            std::sqrt(sound_speed_squared(s, config.eos).values().minCoeff());
        if (min_cs < config.guards.c0)
            throw HyperbolicityLost("simulate: min c_s fell below the floor",
                                    s.time(), min_cs);
    };

    guard(state);
    snaps.push_back(state);
    if (on_snapshot) on_snapshot(state, diagnostics_for(state, config.eos, dt));

    for (int step = 1; step <= nsteps; ++step) {
        if (config.cfl) {
            const double speed =
                state.velocity().max_abs() +
                std::sqrt(sound_speed_squared(state, config.eos).values().maxCoeff());
            const double number = dt * speed * grid->n() / grid->length();
            if (number > 0.5)
                throw CflViolation("simulate: CFL number " + std::to_string(number) +
                                   " exceeds 0.5");
        }
        state = step_rk4(state, config.eos, dt);
        guard(state);
        if (step % config.snap_every == 0) {
            snaps.push_back(state);
            if (on_snapshot) on_snapshot(state, diagnostics_for(state, config.eos, dt));
        }
    }
    return SnapshotStack(std::move(snaps), config.eos);
}

StabilityResult stability_compare(const SimConfig& config,
                                  const InitialDataSpec& perturbation,
                                  double delta, double s) {
    SimConfig cfg = config;
    cfg.validate();
    GridPtr grid = make_grid(cfg.grid_n, cfg.grid_length, cfg.dealias_fraction);

    FluidState base0 = make_initial_state(grid, cfg.initial_data);
    FluidState pert_seed = make_initial_state(grid, perturbation);
    FluidState pert0(
        ScalarField(grid, base0.rho_log().values() + delta * pert_seed.rho_log().values()),
        VectorField(
            ScalarField(grid, base0.velocity()[0].values() +
                                  delta * pert_seed.velocity()[0].values()),
            ScalarField(grid, base0.velocity()[1].values() +
                                  delta * pert_seed.velocity()[1].values()),
            ScalarField(grid, base0.velocity()[2].values() +
                                  delta * pert_seed.velocity()[2].values())),
        0.0);

    const double dt = cfg.resolve_dt(base0);
    const int nsteps = std::max(1, int(std::llround(cfg.t_end / dt)));

    StabilityResult out;
    auto distance = [&](const FluidState& a, const FluidState& b) {
        const double hs = s - 1.0;
        double acc = 0.0;
        ScalarField dr(grid, a.rho_log().values() - b.rho_log().values());
        acc += std::pow(sobolev_norm(dr, hs).value, 2);
        for (int i = 0; i < 3; ++i) {
            ScalarField dvc(grid, a.velocity()[i].values() - b.velocity()[i].values());
            acc += std::pow(sobolev_norm(dvc, hs).value, 2);
        }
        return std::sqrt(acc);
    };

    FluidState a = base0, b = pert0;
    out.times.push_back(0.0);
    out.distances.push_back(distance(a, b));
    for (int step = 1; step <= nsteps; ++step) {
        a = step_rk4(a, cfg.eos, dt);
        b = step_rk4(b, cfg.eos, dt);
        if (step % cfg.snap_every == 0 || step == nsteps) {
            out.times.push_back(a.time());
            out.distances.push_back(distance(a, b));
        }
    }
    const double d0 = out.distances.front();
    double amp = 0.0;
    for (double d : out.distances) amp = std::max(amp, d0 > 0.0 ? d / d0 : 0.0);
    out.amplification = amp;
    return out;
}

}  // namespace ewb
