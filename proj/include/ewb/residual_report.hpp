#ifndef EWB_RESIDUAL_REPORT_HPP
#define EWB_RESIDUAL_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace ewb {

/// Numerical verdict for one identity at one time: L2/Linf residual,
/// the L2 norm of the largest constituent term as reference scale, and
/// per-term magnitudes for localizing a sign or index discrepancy.
struct ResidualReport {
    std::string identity_id;
    double time = 0.0;
    double l2_residual = 0.0;
    double linf_residual = 0.0;
    double reference_scale = 0.0;
    double relative = 0.0;
    bool degenerate = false;  // 0 = 0 case; relative reported as 0
    int stencil_order = 0;    // 0 when no time stencil is involved
    std::vector<std::pair<std::string, double>> per_term_norms;

    void finalize() {
        // references at or below L2-units roundoff mean a 0 = 0 identity
        if (reference_scale > 1e-12) {
            relative = l2_residual / reference_scale;
        } else {
            relative = 0.0;
            degenerate = true;
        }
    }
};

}  // namespace ewb

#endif
