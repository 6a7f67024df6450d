#include "doctest.h"

#include <cmath>

#include "cfx/analysis.hpp"
#include "oracle.hpp"
#include "test_helpers.hpp"

using namespace cfx;
using testutil::close;

TEST_CASE("entropy estimates: conjugacy, doubling, entropy x area (coarse)") {
    const GroupContext ctx = make_context(8);
    const std::size_t n = 400000;
    const EntropyEstimate hh = entropy_estimate(ctx, MapId::RosenSym, M_PI / 10.0, n);
    const EntropyEstimate hk = entropy_estimate(ctx, MapId::ConjRosen, M_PI / 11.0, n);
    const EntropyEstimate hr = entropy_estimate(ctx, MapId::DoubledRosen, M_PI / 10.0, n);
    const EntropyEstimate hv = entropy_estimate(ctx, MapId::VeechMultiplicative, M_PI / 10.0, n);

    CHECK(hh.steps == n);
    CHECK(hh.stderr_batch > 0.0);
    CHECK(hh.stderr_batch < 0.05);

    // Conjugate maps share entropy.
    CHECK(close(hk.h, hh.h, 0.05));
    // Doubling doubles entropy.
    CHECK(close(hr.h / hk.h, 2.0, 0.05));
    // Both products estimate the same volume.
    const double pv = hv.h * area_closed_form(ctx, DomainId::OmegaVeech);
    const double pr = hr.h * area_closed_form(ctx, DomainId::OmegaR);
    CHECK(std::abs(pv - pr) / pv < 0.03);
    // And the Hecke-side product is half of it.
    const double ph = hh.h * area_analytic(build_domain(ctx, DomainId::ERosenSym));
    CHECK(std::abs(pr - 2.0 * ph) / pr < 0.04);

    CHECK_THROWS_AS(entropy_estimate(ctx, MapId::RosenSym, 0.3, 100), Error);
}

TEST_CASE("first returns of r and v to the intersection agree") {
    const GroupContext ctx = make_context(8);
    const Domain bar = build_domain(ctx, DomainId::OmegaBar);
    const DomainSampler sampler(bar);
    std::vector<PlanarPoint> starts;
    for (int i = 0; i < 200; ++i) {
        SplitMix64 rng(mix_seed(71, static_cast<std::uint64_t>(i)));
        starts.push_back(sampler.sample(rng));
    }
    const ComparisonReport rep = compare_first_returns(ctx, starts);
    CHECK(rep.agreements + rep.disagreements + rep.shell_or_failed == starts.size());
    CHECK(rep.agreement_rate() >= 0.999);
    CHECK(rep.shell_or_failed <= 5);
    for (const ReturnRecord& r : rep.records) {
        if (r.r_ok) CHECK(r.r_steps >= 1);
        if (r.v_ok) CHECK(r.v_steps >= 1);
    }
}

TEST_CASE("single-step agreement regions") {
    const GroupContext ctx = make_context(8);
    const Domain bar = build_domain(ctx, DomainId::OmegaBar);
    const double r_half = act(ctx.R, ctx.mu / 2.0).finite();
    SplitMix64 rng(72);

    // On [R.mu/2, alpha) the two extensions take the same value and both
    // induction indices are 1.
    for (int i = 0; i < 300; ++i) {
        const double x = rng.uniform(r_half + 1e-6, ctx.alpha - 1e-6);
        const double y = rng.uniform(bar.lower_at(x) + 1e-6, bar.upper_at(x) - 1e-6);
        const PlanarPoint p{x, y};
        if (contains(bar, p, 1e-9) != Membership::Inside) continue;
        const PlanarPoint pr = planar_step(ctx, MapId::DoubledRosen, p);
        const PlanarPoint pv = planar_step(ctx, MapId::VeechMultiplicative, p);
        CHECK(close(pr.x, pv.x, 1e-7));
        CHECK(close(pr.y, pv.y, 1e-7));
        CHECK(induction_index(ctx, MapId::DoubledRosen, p) == 1);
        CHECK(induction_index(ctx, MapId::VeechMultiplicative, p) == 1);
    }

    // On (RP^-1)^m([-mu/2, R.0)) the one-step images also coincide.
    const double r_zero = act(ctx.R, 0.0).finite();
    const MoebiusMap rpi = ctx.R * ctx.P.inverse();
    for (int m = 1; m <= 2; ++m) {
        const MoebiusMap w = mpow(rpi, m);
        double a = act(w, -ctx.mu / 2.0).finite();
        double b = act(w, r_zero).finite();
        if (a > b) std::swap(a, b);
        for (int i = 0; i < 200; ++i) {
            const double x = rng.uniform(a + 1e-9, b - 1e-9);
            const double y = rng.uniform(bar.lower_at(x) + 1e-6, bar.upper_at(x) - 1e-6);
            const PlanarPoint p{x, y};
            if (contains(bar, p, 1e-9) != Membership::Inside) continue;
            PlanarPoint pr, pv;
            try {
                pr = planar_step(ctx, MapId::DoubledRosen, p);
                pv = planar_step(ctx, MapId::VeechMultiplicative, p);
            } catch (const Error&) {
                continue;
            }
            CHECK(close(pr.x, pv.x, 1e-7));
            CHECK(close(pr.y, pv.y, 1e-7));
        }
    }
}

TEST_CASE("induction index basics and errors") {
    const GroupContext ctx = make_context(8);
    CHECK_THROWS_AS(induction_index(ctx, MapId::VeechMultiplicative, PlanarPoint{100.0, 0.0}, 10),
                    Error);
}

TEST_CASE("slow return experiment at q = 8") {
    const GroupContext ctx = make_context(8);
    const auto rows = slow_return_experiment(ctx, 3, 40, 73);
    REQUIRE(rows.size() == 2);
    for (const SlowReturnRow& r : rows) {
        CHECK(r.samples == 40);
        CHECK(r.pass);
        CHECK(r.min_index >= static_cast<std::size_t>(r.k));
    }

    // Deeper powers sample deeper preimages: the fiber interval shrinks toward 0.
    CHECK(rows[1].x_hi - rows[1].x_lo < rows[0].x_hi - rows[0].x_lo);

    const GroupContext ten = make_context(10);
    CHECK_THROWS_AS(slow_return_experiment(ten, 3), Error);
    CHECK_THROWS_AS(slow_return_experiment(ctx, 1), Error);
}

TEST_CASE("index histogram: deeper preimage fibers take larger indices") {
    const GroupContext ctx = make_context(8);
    const Domain bar = build_domain(ctx, DomainId::OmegaBar);
    const MoebiusMap w1 = mpow(ctx.R, 2) * ctx.P.inverse();  // R^{q/4} P^-1 at q = 8
    std::size_t prev_min = 1;
    for (int k = 2; k <= 4; ++k) {
        const MoebiusMap wk = mpow(w1, k);
        double a = act(wk, ctx.I.lo).finite(), b = act(wk, ctx.I.hi).finite();
        if (a > b) std::swap(a, b);
        SplitMix64 rng(74 + static_cast<std::uint64_t>(k));
        std::size_t min_index = 1000000;
        int got = 0;
        while (got < 25) {
            const double x = rng.uniform(a, b);
            const double y = rng.uniform(bar.lower_at(x) + 1e-9, bar.upper_at(x) - 1e-9);
            if (contains(bar, {x, y}, 1e-9) != Membership::Inside) continue;
            try {
                min_index =
                    std::min(min_index, induction_index(ctx, MapId::VeechMultiplicative, {x, y}, bar, 100000));
            } catch (const Error&) {
                continue;
            }
            ++got;
        }
        CHECK(min_index >= static_cast<std::size_t>(k));
        CHECK(min_index >= prev_min);
        prev_min = min_index;
    }
}
