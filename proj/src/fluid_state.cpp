#include "ewb/fluid_state.hpp"

namespace ewb {

ScalarField sound_speed_squared(const FluidState& state, const EquationOfState& eos) {
    const double g = eos.gamma;
    const double pref = g * std::pow(eos.rho_bar, g - 1.0);
    return ScalarField(state.grid_ptr(),
                       pref * ((g - 1.0) * state.rho_log().values()).exp());
}

ScalarField sound_speed(const FluidState& state, const EquationOfState& eos) {
    return ScalarField(state.grid_ptr(),
                       sound_speed_squared(state, eos).values().sqrt());
}

ScalarField sound_speed_derivative(const FluidState& state, const EquationOfState& eos) {
    return 0.5 * (eos.gamma - 1.0) * sound_speed(state, eos);
}

ScalarField convective_derivative(const ScalarField& f, const ScalarField& f_t,
                                  const FluidState& state) {
    if (!(f.grid() == state.grid()) || !(f_t.grid() == state.grid()))
        throw Error("convective_derivative: grid mismatch");
    return f_t + dot(state.velocity(), gradient(f));
}

VectorField specific_vorticity(const FluidState& state, const EquationOfState&) {
    const ScalarField inv_density(state.grid_ptr(), (-state.rho_log().values()).exp());
    return inv_density * curl(state.velocity());
}

int AcousticMetric::sym_index(int a, int b) {
    if (a > b) std::swap(a, b);
    static const int base[4] = {0, 4, 7, 9};
    return base[a] + (b - a);
}

double AcousticMetric::inverse_identity_error() const {
    double err = 0.0;
    const std::int64_t npts = lower_[0].values().size();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(npts);
            for (int c = 0; c < 4; ++c)
                acc += lower(a, c).values() * upper(c, b).values();
            if (a == b) acc -= 1.0;
            err = std::max(err, acc.abs().maxCoeff());
        }
    }
    return err;
}

AcousticMetric acoustic_metric(const FluidState& state, const EquationOfState& eos) {
    const GridPtr grid = state.grid_ptr();
    const ScalarField cs2 = sound_speed_squared(state, eos);
    const Eigen::ArrayXd inv_cs2 = cs2.values().inverse();
    const VectorField& v = state.velocity();

    auto field = [&](Eigen::ArrayXd a) { return ScalarField(grid, std::move(a)); };

    std::array<ScalarField, 10> lo, up;
    Eigen::ArrayXd v2 = v[0].values().square() + v[1].values().square() +
                        v[2].values().square();

    // g = -dt x dt + cs^{-2} sum_a (dx^a - v^a dt) x (dx^a - v^a dt)
    lo[AcousticMetric::sym_index(0, 0)] = field(-1.0 + inv_cs2 * v2);
    for (int i = 0; i < 3; ++i)
        lo[AcousticMetric::sym_index(0, i + 1)] = field(-inv_cs2 * v[i].values());
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            lo[AcousticMetric::sym_index(i + 1, j + 1)] =
                field(i == j ? Eigen::ArrayXd(inv_cs2)
                             : Eigen::ArrayXd(Eigen::ArrayXd::Zero(grid->size())));

    // g^{-1} = -(d_t + v.d) x (d_t + v.d) + cs^2 sum_i d_i x d_i
    up[AcousticMetric::sym_index(0, 0)] = ScalarField::constant(grid, -1.0);
    for (int i = 0; i < 3; ++i)
        up[AcousticMetric::sym_index(0, i + 1)] = field(-v[i].values());
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Eigen::ArrayXd a = -v[i].values() * v[j].values();
            if (i == j) a += cs2.values();
            up[AcousticMetric::sym_index(i + 1, j + 1)] = field(std::move(a));
        }

    return AcousticMetric(std::move(lo), std::move(up));
}

DerivedFields derived_fields(const FluidState& state, const EquationOfState& eos) {
    DerivedFields out;
    out.w = specific_vorticity(state, eos);
    const ScalarField erho(state.grid_ptr(), state.rho_log().values().exp());
    const ScalarField emrho(state.grid_ptr(), (-state.rho_log().values()).exp());
    const VectorField curl_w = curl(out.w);
    out.omega_cap = emrho * curl_w;

    std::array<ScalarField, 3> eta_c;
    for (int i = 0; i < 3; ++i) {
        ScalarField src = erho * curl_w[i];
        out.source_mean[i] = src.mean();
        ScalarField centered(state.grid_ptr(),
                             src.values() - out.source_mean[i]);
        eta_c[i] = solve_neg_laplacian(centered);
    }
    out.eta = VectorField(std::move(eta_c[0]), std::move(eta_c[1]), std::move(eta_c[2]));
    out.v_plus = state.velocity() - out.eta;
    return out;
}

}  // namespace ewb
