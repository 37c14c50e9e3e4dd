#ifndef EWB_INEQUALITIES_HPP
#define EWB_INEQUALITIES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ewb/norms.hpp"

namespace ewb {

/// Empirical stress test of one product/commutator estimate: the ratio
/// LHS / RHS (RHS without its implicit constant) over seeded random
/// band-limited samples. A zero RHS with a nonzero LHS is a failure.
struct RatioReport {
    std::string inequality_id;
    int samples = 0;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    std::uint64_t worst_sample_seed = 0;
    bool fail = false;
    std::vector<double> ratios;
};

struct SampleParams {
    int n_samples = 100;
    std::uint64_t seed = 1;
    int band = 4;
    double amplitude = 1.0;
    int grid_n = 32;
    bool constant_v = false;  // degenerate commutator cases (ce, ceR)
    std::map<std::string, double> lemma_params;
};

/// Supported ids: jh, cj, jh0, ps, lpe, wql, LPE, ceR, YR, ce.
const std::vector<std::string>& inequality_ids();

/// LHS and RHS of one sampled instance; `f_scale` rescales the f-side
/// field (for scale-invariance checks of the bilinear ratios).
std::pair<double, double> inequality_instance(const std::string& id,
                                              const SampleParams& params,
                                              int sample_index, double f_scale = 1.0);

RatioReport inequality_sample(const std::string& id, const SampleParams& params);

}  // namespace ewb

#endif
