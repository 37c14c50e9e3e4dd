#include <doctest.h>

#include <cmath>

#include "ewb/inequalities.hpp"
#include "ewb/initial_data.hpp"

using namespace ewb;

TEST_CASE("every sampled lemma yields finite stable ratios") {
    SampleParams p;
    p.n_samples = 8;
    p.grid_n = 24;
    p.band = 3;
    for (const auto& id : inequality_ids()) {
        RatioReport rep = inequality_sample(id, p);
        CAPTURE(id);
        CHECK(!rep.fail);
        CHECK(std::isfinite(rep.max_ratio));
        CHECK(rep.max_ratio > 0.0);
        CHECK(rep.median_ratio <= rep.max_ratio);
        CHECK(rep.ratios.size() == std::size_t(p.n_samples));
    }
}

TEST_CASE("commutators with constant coefficients vanish") {
    SampleParams p;
    p.n_samples = 4;
    p.grid_n = 24;
    p.band = 3;
    p.constant_v = true;
    for (const std::string id : {"ce", "ceR"}) {
        RatioReport rep = inequality_sample(id, p);
        CAPTURE(id);
        CHECK(!rep.fail);
        CHECK(rep.max_ratio < 1e-12);
    }
}

TEST_CASE("bilinear commutator ratios are exactly scale invariant") {
    SampleParams p;
    p.grid_n = 24;
    p.band = 3;
    for (const std::string id : {"ce", "ceR"}) {
        const auto [l1, r1] = inequality_instance(id, p, 0, 1.0);
        const auto [l2, r2] = inequality_instance(id, p, 0, 10.0);
        const double ratio1 = l1 / r1;
        const double ratio2 = l2 / r2;
        CAPTURE(id);
        CHECK(std::abs(ratio1 - ratio2) / ratio1 < 1e-12);
    }
}

TEST_CASE("product estimate with unit h gives ratio at most one") {
    // cj with h = 1: ||f||_{H^a} <= ||f||_{H^a} + ||f||_inf ||1||_{H^a}
    GridPtr g = make_grid(24);
    ScalarField f = random_band_limited(g, 12, 3, 1.0);
    const double a = 1.5;
    const double lhs = sobolev_norm(f, a).value;
    const double rhs = sobolev_norm(f, a).value +
                       f.max_abs() * sobolev_norm(ScalarField::constant(g, 1.0), a).value;
    CHECK(lhs / rhs <= 1.0);
    CHECK(lhs / rhs > 0.0);
}

TEST_CASE("hypothesis ranges are enforced") {
    SampleParams p;
    p.grid_n = 16;
    p.lemma_params["alpha"] = 1.5;
    CHECK_THROWS_AS(inequality_instance("ce", p, 0), HypothesisViolation);
    p.lemma_params.clear();
    p.lemma_params["s1"] = 1.0;
    CHECK_THROWS_AS(inequality_instance("YR", p, 0), HypothesisViolation);
    p.lemma_params.clear();
    p.lemma_params["r"] = 0.5;
    p.lemma_params["rp"] = 0.5;
    CHECK_THROWS_AS(inequality_instance("ps", p, 0), HypothesisViolation);
    CHECK_THROWS_AS(inequality_instance("nonsense", p, 0), HypothesisViolation);
}

TEST_CASE("seed determinism") {
    SampleParams p;
    p.n_samples = 3;
    p.grid_n = 16;
    RatioReport a = inequality_sample("lpe", p);
    RatioReport b = inequality_sample("lpe", p);
    for (std::size_t i = 0; i < a.ratios.size(); ++i)
        CHECK(a.ratios[i] == b.ratios[i]);
}
