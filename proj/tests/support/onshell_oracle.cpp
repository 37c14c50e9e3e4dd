#include "support/onshell_oracle.hpp"

#include "ewb/spectral_ops.hpp"

namespace test_support {

using namespace ewb;

OnShellOracle::OnShellOracle(const FluidState& s, const EquationOfState& e)
    : state(s), eos(e) {
    const GridPtr g = state.grid_ptr();
    const VectorField& v = state.velocity();
    const ScalarField& rho = state.rho_log();
    const ScalarField cs2 = sound_speed_squared(state, eos);
    const Eigen::ArrayXd emrho = (-rho.values()).exp();

    // first-order system, raw products
    rho_t = ScalarField(g, -dot(v, gradient(rho)).values() - divergence(v).values());
    {
        std::array<ScalarField, 3> c;
        for (int i = 0; i < 3; ++i)
            c[i] = ScalarField(g, -dot(v, gradient(v[i])).values() -
                                      cs2.values() * derivative(rho, i).values());
        v_t = VectorField(std::move(c[0]), std::move(c[1]), std::move(c[2]));
    }

    auto scale = [&](const Eigen::ArrayXd& a, const VectorField& u) {
        return VectorField(ScalarField(g, a * u[0].values()),
                           ScalarField(g, a * u[1].values()),
                           ScalarField(g, a * u[2].values()));
    };

    w = scale(emrho, curl(v));
    w_t = scale(-rho_t.values(), w) + scale(emrho, curl(v_t));
    om = scale(emrho, curl(w));
    om_t = scale(-rho_t.values(), om) + scale(emrho, curl(w_t));

    // transported quantity of the modified curl-Omega law and its d_t
    const VectorField grad_rho = gradient(rho);
    const VectorField grad_rho_t = gradient(rho_t);
    {
        const VectorField curl_om = curl(om);
        const VectorField curl_om_t = curl(om_t);
        std::array<ScalarField, 3> f, f_t;
        for (int i = 0; i < 3; ++i) {
            Eigen::ArrayXd mod = Eigen::ArrayXd::Zero(g->size());
            Eigen::ArrayXd mod_t = Eigen::ArrayXd::Zero(g->size());
            for (int a = 0; a < 3; ++a) {
                const Eigen::ArrayXd dwa = derivative(w[a], i).values();
                const Eigen::ArrayXd dwa_t = derivative(w_t[a], i).values();
                mod += grad_rho[a].values() * dwa;
                mod_t += -rho_t.values() * grad_rho[a].values() * dwa +
                         grad_rho_t[a].values() * dwa + grad_rho[a].values() * dwa_t;
            }
            f[i] = ScalarField(g, curl_om[i].values() + 2.0 * emrho * mod);
            f_t[i] = ScalarField(g, curl_om_t[i].values() + 2.0 * emrho * mod_t);
        }
        transported = VectorField(std::move(f[0]), std::move(f[1]), std::move(f[2]));
        transported_t = VectorField(std::move(f_t[0]), std::move(f_t[1]), std::move(f_t[2]));
    }

    // box = -TT + cs2 Lap, expanded on shell
    const ScalarField cs2_t(g, (eos.gamma - 1.0) * cs2.values() * rho_t.values());
    {
        std::array<ScalarField, 3> tv, tv_t, bx;
        for (int i = 0; i < 3; ++i) {
            tv[i] = ScalarField(g, -cs2.values() * grad_rho[i].values());
            tv_t[i] = ScalarField(g, -cs2_t.values() * grad_rho[i].values() -
                                         cs2.values() * grad_rho_t[i].values());
        }
        VectorField t_v(tv[0], tv[1], tv[2]);
        VectorField t_v_t(tv_t[0], tv_t[1], tv_t[2]);
        const VectorField tt_v = material(t_v, t_v_t);
        for (int i = 0; i < 3; ++i)
            bx[i] = ScalarField(g, -tt_v[i].values() +
                                       cs2.values() * laplacian(v[i]).values());
        box_v = VectorField(std::move(bx[0]), std::move(bx[1]), std::move(bx[2]));
    }
    {
        const ScalarField t_rho(g, -divergence(v).values());
        const ScalarField t_rho_t(g, -divergence(v_t).values());
        const ScalarField tt_rho = material(t_rho, t_rho_t);
        box_rho =
            ScalarField(g, -tt_rho.values() + cs2.values() * laplacian(rho).values());
    }
}

ScalarField OnShellOracle::material(const ScalarField& x, const ScalarField& x_t) const {
    return x_t + dot(state.velocity(), gradient(x));
}

VectorField OnShellOracle::material(const VectorField& x, const VectorField& x_t) const {
    return VectorField(material(x[0], x_t[0]), material(x[1], x_t[1]),
                       material(x[2], x_t[2]));
}

}  // namespace test_support
