#include "ewb/vorticity_identities.hpp"

#include <cmath>

namespace ewb {

namespace {

struct EpsEntry {
    int i, j, k;
    double s;
};

// nonzero entries of the volume form
const EpsEntry kEps[6] = {{0, 1, 2, 1.0},  {1, 2, 0, 1.0},  {2, 0, 1, 1.0},
                          {0, 2, 1, -1.0}, {2, 1, 0, -1.0}, {1, 0, 2, -1.0}};

double eps(int i, int j, int k) {
    for (const auto& e : kEps)
        if (e.i == i && e.j == j && e.k == k) return e.s;
    return 0.0;
}

double vec_l2(const std::array<Eigen::ArrayXd, 3>& v, double cell) {
    double acc = 0.0;
    for (const auto& c : v) acc += (c.square() * cell).sum();
    return std::sqrt(acc);
}

double vec_linf(const std::array<Eigen::ArrayXd, 3>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, c.abs().maxCoeff());
    return m;
}

VectorField omega_cap_of(const FluidState& st, const EquationOfState& eos) {
    const ScalarField emrho(st.grid_ptr(), (-st.rho_log().values()).exp());
    return emrho * curl(specific_vorticity(st, eos));
}

}  // namespace

VectorField epsilon_contraction(const VectorField& a, const VectorField& b) {
    return cross(a, b);
}

double epsilon_delta_identity_error() {
    double err = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n) {
                    double lhs = 0.0;
                    for (int k = 0; k < 3; ++k) lhs += eps(i, j, k) * eps(k, m, n);
                    const double rhs = (i == m && j == n ? 1.0 : 0.0) -
                                       (i == n && j == m ? 1.0 : 0.0);
                    err = std::max(err, std::abs(lhs - rhs));
                }
    return err;
}

VectorField w_stretch_term(const FluidState& state, const EquationOfState& eos) {
    const VectorField w = specific_vorticity(state, eos);
    return VectorField(dot(w, gradient(state.velocity()[0])),
                       dot(w, gradient(state.velocity()[1])),
                       dot(w, gradient(state.velocity()[2])));
}

VectorField omega_transport_rhs(const FluidState& state, const EquationOfState& eos) {
    const GridPtr g = state.grid_ptr();
    const VectorField& v = state.velocity();
    const VectorField w = specific_vorticity(state, eos);
    const Eigen::ArrayXd emrho = (-state.rho_log().values()).exp();

    std::array<std::array<ScalarField, 3>, 3> dv, dw;
    for (int a = 0; a < 3; ++a)
        for (int j = 0; j < 3; ++j) {
            dv[a][j] = derivative(v[a], j);
            dw[a][j] = derivative(w[a], j);
        }

    std::array<ScalarField, 3> rhs;
    for (int i = 0; i < 3; ++i) {
        Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(g->size());
        for (const auto& e : kEps) {
            if (e.i == i)  // -2 eps^{imn} e^-rho d_m v^a d_n w_a
                for (int a = 0; a < 3; ++a)
                    acc += -2.0 * e.s * emrho * dv[a][e.j].values() * dw[a][e.k].values();
            // + eps^{amn} e^-rho d_a v^i d_m w_n
            acc += e.s * emrho * dv[i][e.i].values() * dw[e.k][e.j].values();
        }
        rhs[i] = ScalarField(g, std::move(acc));
    }
    return VectorField(std::move(rhs[0]), std::move(rhs[1]), std::move(rhs[2]));
}

VectorField modified_curl_omega_transported(const FluidState& state,
                                            const EquationOfState& eos) {
    const GridPtr g = state.grid_ptr();
    const VectorField w = specific_vorticity(state, eos);
    const VectorField curl_om = curl(omega_cap_of(state, eos));
    const VectorField grad_rho = gradient(state.rho_log());
    const Eigen::ArrayXd emrho = (-state.rho_log().values()).exp();

    std::array<ScalarField, 3> comps;
    for (int i = 0; i < 3; ++i) {
        Eigen::ArrayXd mod = Eigen::ArrayXd::Zero(g->size());
        for (int a = 0; a < 3; ++a)
            mod += grad_rho[a].values() * derivative(w[a], i).values();
        comps[i] = ScalarField(g, curl_om[i].values() + 2.0 * emrho * mod);
    }
    return VectorField(std::move(comps[0]), std::move(comps[1]), std::move(comps[2]));
}

ModifiedCurlOmegaTerms modified_curl_omega_terms(const FluidState& state,
                                                 const EquationOfState& eos) {
    const GridPtr g = state.grid_ptr();
    const std::int64_t npts = g->size();
    const VectorField& v = state.velocity();
    const VectorField w = specific_vorticity(state, eos);
    const VectorField om = omega_cap_of(state, eos);
    const Eigen::ArrayXd emrho = (-state.rho_log().values()).exp();
    const Eigen::ArrayXd erho = state.rho_log().values().exp();
    const VectorField grad_rho = gradient(state.rho_log());

    std::array<Eigen::ArrayXd, 3> gr;
    for (int a = 0; a < 3; ++a) gr[a] = grad_rho[a].values();

    std::array<std::array<ScalarField, 3>, 3> dv, dw, dom;
    for (int a = 0; a < 3; ++a)
        for (int j = 0; j < 3; ++j) {
            dv[a][j] = derivative(v[a], j);
            dw[a][j] = derivative(w[a], j);
            dom[a][j] = derivative(om[a], j);
        }
    std::array<std::array<std::array<ScalarField, 3>, 3>, 3> d2w, d2v;  // [a][m][j]
    for (int a = 0; a < 3; ++a)
        for (int m = 0; m < 3; ++m)
            for (int j = 0; j < 3; ++j) {
                d2w[a][m][j] = derivative(dw[a][m], j);
                d2v[a][m][j] = derivative(dv[a][m], j);
            }

    const Eigen::ArrayXd div_v =
        dv[0][0].values() + dv[1][1].values() + dv[2][2].values();

    Eigen::ArrayXd pair_sum = Eigen::ArrayXd::Zero(npts);
    for (int a = 0; a < 3; ++a)
        for (int n = 0; n < 3; ++n) pair_sum += dv[a][n].values() * dw[a][n].values();

    ModifiedCurlOmegaTerms out;
    out.main_grad = gradient(ScalarField(g, 2.0 * emrho * pair_sum));

    {
        const VectorField curl_om = curl(om);
        std::array<ScalarField, 3> comps;
        for (int i = 0; i < 3; ++i) {
            Eigen::ArrayXd mod = Eigen::ArrayXd::Zero(npts);
            for (int a = 0; a < 3; ++a) mod += gr[a] * dw[a][i].values();
            comps[i] = ScalarField(g, curl_om[i].values() + 2.0 * emrho * mod);
        }
        out.transported =
            VectorField(std::move(comps[0]), std::move(comps[1]), std::move(comps[2]));
    }

    std::array<std::array<Eigen::ArrayXd, 3>, 6> r;
    for (auto& fam : r)
        for (auto& c : fam) c = Eigen::ArrayXd::Zero(npts);

    for (int i = 0; i < 3; ++i) {
        for (const auto& ei : kEps) {
            if (ei.i != i) continue;
            const int j = ei.j, k = ei.k;
            for (const auto& em : kEps) {
                if (em.i == k) {  // eps_{kmn}: m = em.j, n = em.k
                    for (int a = 0; a < 3; ++a) {
                        r[0][i] += -2.0 * ei.s * em.s * emrho * dv[a][em.j].values() *
                                   d2w[a][em.k][j].values();
                        r[1][i] += 2.0 * ei.s * em.s * emrho * dv[a][em.j].values() *
                                   dw[a][em.k].values() * gr[j];
                    }
                }
                // eps^{amn}: a = em.i, m = em.j, n = em.k
                r[0][i] += ei.s * em.s * emrho * dv[k][em.i].values() *
                           d2w[em.k][em.j][j].values();
                r[1][i] += -ei.s * em.s * emrho * dv[k][em.i].values() *
                           dw[em.k][em.j].values() * gr[j];
            }
            for (int m = 0; m < 3; ++m)
                r[0][i] += -ei.s * dv[m][j].values() * dom[k][m].values();
        }
        for (int a = 0; a < 3; ++a)
            for (int j = 0; j < 3; ++j)
                r[0][i] += 2.0 * emrho * dv[a][j].values() * d2w[a][j][i].values();

        for (int a = 0; a < 3; ++a) {
            for (int k = 0; k < 3; ++k) {
                r[1][i] += -2.0 * emrho * dv[k][a].values() * gr[k] * dw[a][i].values();
                r[4][i] += -2.0 * emrho * gr[a] * dv[k][i].values() * dw[a][k].values();
            }
            r[1][i] += 2.0 * emrho * div_v * gr[a] * dw[a][i].values();
            for (int m = 0; m < 3; ++m) {
                r[1][i] += 2.0 * emrho * gr[a] * dw[m][i].values() * dv[a][m].values();
                r[5][i] += 2.0 * emrho * gr[a] * w[m].values() * d2v[a][m][i].values();
            }
        }
        r[1][i] += -2.0 * emrho * gr[i] * pair_sum;

        for (const auto& ea : kEps) {  // eps^{amn}: a = ea.i, m = ea.j, n = ea.k
            const int a = ea.i, m = ea.j, n = ea.k;
            r[2][i] += ea.s * w[i].values() * gr[a] * dw[n][m].values();
            r[2][i] += -2.0 * ea.s * gr[m] * w[n].values() * dw[a][i].values();
            r[3][i] += ea.s * dw[i][a].values() * dw[n][m].values();
        }
        for (int a = 0; a < 3; ++a)
            r[3][i] += -2.0 * erho * om[a].values() * dw[a][i].values();
    }

    for (int fam = 0; fam < 6; ++fam)
        out.remainders[fam] =
            VectorField(ScalarField(g, std::move(r[fam][0])),
                        ScalarField(g, std::move(r[fam][1])),
                        ScalarField(g, std::move(r[fam][2])));
    return out;
}

ResidualReport residual_divergence_law(const FluidState& state,
                                       const EquationOfState& eos) {
    ResidualReport rep;
    rep.identity_id = "div_law";
    rep.time = state.time();

    const VectorField w = specific_vorticity(state, eos);
    const ScalarField div_w = divergence(w);
    const ScalarField stretch = dot(w, gradient(state.rho_log()));
    const ScalarField resid = div_w + stretch;

    rep.l2_residual = resid.l2_norm();
    rep.linf_residual = resid.max_abs();
    rep.per_term_norms = {{"div_w", div_w.l2_norm()}, {"w_grad_rho", stretch.l2_norm()}};
    rep.reference_scale = std::max(div_w.l2_norm(), stretch.l2_norm());
    rep.finalize();
    return rep;
}

ResidualReport residual_w_transport(const SnapshotStack& stack, std::size_t t_index,
                                    int stride) {
    ResidualReport rep;
    rep.identity_id = "w_transport";
    rep.stencil_order = 4;
    const FluidState& center = stack.at(t_index);
    rep.time = center.time();

    auto w_at = [&](std::size_t i) { return specific_vorticity(stack.at(i), stack.eos()); };
    const VectorField w = w_at(t_index);
    const VectorField& v = center.velocity();
    const VectorField stretch = w_stretch_term(center, stack.eos());

    double ref = 0.0;
    std::array<Eigen::ArrayXd, 3> resid;
    for (int c = 0; c < 3; ++c) {
        const ScalarField dwdt = time_derivative_o4(
            stack, [&](std::size_t i) { return w_at(i)[c]; }, t_index, stride);
        const ScalarField advect = dot(v, gradient(w[c]));
        resid[c] = dwdt.values() + advect.values() - stretch[c].values();
        ref = std::max({ref, dwdt.l2_norm(), advect.l2_norm(), stretch[c].l2_norm()});
    }
    const double cell = std::pow(center.grid().dx(), 3);
    rep.l2_residual = vec_l2(resid, cell);
    rep.linf_residual = vec_linf(resid);
    rep.reference_scale = ref;
    rep.finalize();
    return rep;
}

ResidualReport residual_omega_transport(const SnapshotStack& stack, std::size_t t_index,
                                        int stride) {
    ResidualReport rep;
    rep.identity_id = "omega_transport";
    rep.stencil_order = 4;
    const FluidState& center = stack.at(t_index);
    rep.time = center.time();

    const VectorField om = omega_cap_of(center, stack.eos());
    const VectorField& v = center.velocity();
    const VectorField rhs = omega_transport_rhs(center, stack.eos());

    std::array<Eigen::ArrayXd, 3> resid;
    double ref = 0.0;
    const double cell = std::pow(center.grid().dx(), 3);
    for (int i = 0; i < 3; ++i) {
        const ScalarField domdt = time_derivative_o4(
            stack,
            [&](std::size_t s) { return omega_cap_of(stack.at(s), stack.eos())[i]; },
            t_index, stride);
        const ScalarField advect = dot(v, gradient(om[i]));
        resid[i] = domdt.values() + advect.values() - rhs[i].values();
        ref = std::max({ref, domdt.l2_norm(), advect.l2_norm(), rhs[i].l2_norm()});
    }
    rep.l2_residual = vec_l2(resid, cell);
    rep.linf_residual = vec_linf(resid);
    rep.reference_scale = ref;
    rep.finalize();
    return rep;
}

ResidualReport residual_modified_curl_omega(const SnapshotStack& stack,
                                            std::size_t t_index, int stride) {
    ResidualReport rep;
    rep.identity_id = "curl_omega_transport";
    rep.stencil_order = 4;
    const FluidState& center = stack.at(t_index);
    rep.time = center.time();
    const double cell = std::pow(center.grid().dx(), 3);

    const ModifiedCurlOmegaTerms terms = modified_curl_omega_terms(center, stack.eos());
    const VectorField& v = center.velocity();

    std::array<Eigen::ArrayXd, 3> resid;
    double lhs_sq = 0.0;
    for (int i = 0; i < 3; ++i) {
        const ScalarField dfdt = time_derivative_o4(
            stack,
            [&](std::size_t s) {
                return modified_curl_omega_transported(stack.at(s), stack.eos())[i];
            },
            t_index, stride);
        const Eigen::ArrayXd lhs =
            dfdt.values() + dot(v, gradient(terms.transported[i])).values();
        Eigen::ArrayXd rhs = -terms.main_grad[i].values();
        for (int fam = 0; fam < 6; ++fam) rhs += terms.remainders[fam][i].values();
        resid[i] = lhs - rhs;
        lhs_sq += (lhs.square() * cell).sum();
    }

    rep.per_term_norms.emplace_back("T_modified_curl_omega", std::sqrt(lhs_sq));
    rep.per_term_norms.emplace_back("main_gradient", terms.main_grad.l2_norm());
    static const char* fam_names[6] = {"R1", "R2", "R3", "R4", "R5", "R6"};
    for (int fam = 0; fam < 6; ++fam)
        rep.per_term_norms.emplace_back(fam_names[fam], terms.remainders[fam].l2_norm());

    double ref = 0.0;
    for (const auto& [name, norm] : rep.per_term_norms) ref = std::max(ref, norm);
    rep.l2_residual = vec_l2(resid, cell);
    rep.linf_residual = vec_linf(resid);
    rep.reference_scale = ref;
    rep.finalize();
    return rep;
}

}  // namespace ewb
