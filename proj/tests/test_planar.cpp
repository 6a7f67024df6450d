#include "doctest.h"

#include <cmath>

#include "cfx/domains.hpp"
#include "oracle.hpp"
#include "test_helpers.hpp"

using namespace cfx;
using testutil::close;

TEST_CASE("planar apply formula") {
    const GroupContext ctx = make_context(8);
    const PlanarPoint p = planar_apply(ctx.T, PlanarPoint{2.0, 0.0});
    CHECK(close(p.x, -0.5, 1e-15));
    CHECK(close(p.y, -2.0, 1e-15));

    const PlanarPoint q = planar_apply(ctx.S, PlanarPoint{0.25, 0.75});
    CHECK(close(q.x, 0.25 + ctx.lambda, 1e-15));
    CHECK(close(q.y, 0.75, 1e-15));

    CHECK_THROWS_AS(planar_apply(ctx.T, PlanarPoint{0.0, 1.0}), Error);
    CHECK_THROWS_AS(planar_apply(MoebiusMap::reflecting(1, 0, 0, -1), PlanarPoint{1.0, 1.0}),
                    Error);
}

TEST_CASE("planar apply round trip and cocycle") {
    const GroupContext ctx = make_context(8);
    SplitMix64 rng(41);
    const std::vector<MoebiusMap> gens = {ctx.S, ctx.T, ctx.P, ctx.U};
    int done = 0;
    for (int i = 0; i < 2000 && done < 500; ++i) {
        const MoebiusMap m = testutil::random_word(gens, rng, 4);
        const PlanarPoint p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        try {
            const PlanarPoint fwd = planar_apply(m, p);
            const PlanarPoint back = planar_apply(m.inverse(), fwd);
            if (std::abs(fwd.x) > 1e3 || std::abs(fwd.y) > 1e3) continue;
            CHECK(close(back.x, p.x, 1e-8));
            CHECK(close(back.y, p.y, 1e-8));

            const MoebiusMap n = testutil::random_word(gens, rng, 3);
            const PlanarPoint in = planar_apply(n, p);
            if (std::abs(in.x) > 1e3 || std::abs(in.y) > 1e3) continue;
            const PlanarPoint two = planar_apply(m, in);
            const PlanarPoint one = planar_apply(m * n, p);
            CHECK(close(one.x, two.x, 1e-7 * (1.0 + std::abs(one.x))));
            CHECK(close(one.y, two.y, 1e-7 * (1.0 + std::abs(one.y))));
            ++done;
        } catch (const Error&) {
            continue;
        }
    }
    CHECK(done == 500);
}

TEST_CASE("boundary transport is the action on poles") {
    const GroupContext ctx = make_context(8);
    CHECK(transport_delta(ctx.T, ExtendedReal::infinity()).finite() == 0.0);

    SplitMix64 rng(42);
    const std::vector<MoebiusMap> gens = {ctx.S, ctx.T, ctx.P, ctx.U};
    int done = 0;
    for (int i = 0; i < 3000 && done < 300; ++i) {
        const MoebiusMap m = testutil::random_word(gens, rng, 4);
        const double delta = rng.uniform(-4.0, 4.0);
        const double x = rng.uniform(-2.0, 2.0);
        if (std::abs(x - delta) < 1e-2) continue;
        const ExtendedReal md = transport_delta(m, delta);
        const ExtendedReal mx = act(m, x);
        if (md.is_inf() || mx.is_inf()) continue;
        if (std::abs(mx.value - md.value) < 1e-3) continue;
        try {
            const PlanarPoint img = planar_apply(m, PlanarPoint{x, 1.0 / (x - delta)});
            CHECK(close(img.y, 1.0 / (mx.value - md.value), 1e-6 * (1 + std::abs(img.y))));
            CHECK(close(md.value, act(m, delta).finite(), 1e-12));
            ++done;
        } catch (const Error&) {
            continue;
        }
    }
    CHECK(done == 300);

    // S^-j T moves the E boundary poles: delta = +1 to -(j lambda + 1),
    // delta = -1/(lambda-1) to -((j-1) lambda + 1).
    for (int j = 2; j <= 6; ++j) {
        const MoebiusMap m = mpow(ctx.S, -j) * ctx.T;
        CHECK(close(transport_delta(m, ExtendedReal(1.0)).finite(), -(j * ctx.lambda + 1.0), 1e-9));
        CHECK(close(transport_delta(m, ExtendedReal(-1.0 / (ctx.lambda - 1.0))).finite(),
                    -((j - 1) * ctx.lambda + 1.0), 1e-9));
    }

    // P R^-1 sends the lower additive boundary pole -mu/2 to the image pole
    // of the rightmost additive cylinder.
    const MoebiusMap pri = ctx.P * ctx.R.inverse();
    const double img_pole = transport_delta(pri, ExtendedReal(-ctx.mu / 2.0)).finite();
    CHECK(close(img_pole, ctx.mu + act(ctx.R.inverse(), -ctx.mu / 2.0).finite(), 1e-9));
}

TEST_CASE("transversal correspondence") {
    const GroupContext ctx = make_context(8);
    const MoebiusMap t0 = to_transversal(PlanarPoint{0.0, 0.0});
    CHECK(projective_equal(t0, ctx.T, 1e-14));
    CHECK(close(t0.det(), 1.0, 1e-15));

    SplitMix64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const PlanarPoint p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const MoebiusMap a = to_transversal(p);
        CHECK(close(a.a, p.x, 1e-12));
        CHECK(close(a.d, p.y, 1e-12));
        CHECK(close(a.det(), 1.0, 1e-12));

        // M A g_{t0} lands back on the transversal at the planar image.
        MoebiusMap m = mpow(ctx.S, -2) * ctx.T;
        if (m.c * p.x + m.d < 0.0) m = MoebiusMap(-m.a, -m.b, -m.c, -m.d);
        const double den = m.c * p.x + m.d;
        if (std::abs(den) < 1e-3) continue;
        const double t = -2.0 * std::log(den);
        const MoebiusMap moved = m * a * geodesic_flow(t);
        const PlanarPoint img = planar_apply(m, p);
        CHECK(close(moved.c, 1.0, 1e-9));
        CHECK(close(moved.a, img.x, 1e-8 * (1 + std::abs(img.x))));
        CHECK(close(moved.d, img.y, 1e-8 * (1 + std::abs(img.y))));
    }
}

TEST_CASE("planar orbit projects to the interval orbit") {
    const GroupContext ctx = make_context(8);
    const PlanarOrbitResult po = planar_orbit(ctx, MapId::RosenSym, {M_PI / 10.0, 0.0}, 500);
    const OrbitResult io = orbit(ctx, MapId::RosenSym, M_PI / 10.0, 500);
    REQUIRE(po.points.size() == io.steps.size() + 1);
    for (std::size_t i = 0; i < io.steps.size(); ++i)
        CHECK(po.points[i + 1].x == io.steps[i].image);

    CHECK_THROWS_AS(planar_step(ctx, MapId::RosenOriginal, PlanarPoint{0.3, 0.0}), Error);
}

TEST_CASE("planar orbit of v lands in Omega_v after burn-in") {
    const GroupContext ctx = make_context(8);
    const Domain ov = build_domain(ctx, DomainId::OmegaVeech);
    const PlanarOrbitResult po =
        planar_orbit(ctx, MapId::VeechMultiplicative, {M_PI / 10.0, 0.0}, 3000);
    REQUIRE(po.points.size() > 100);
    std::size_t outside = 0;
    for (std::size_t i = 11; i < po.points.size(); ++i)
        if (contains(ov, po.points[i], 1e-9) == Membership::Outside) ++outside;
    CHECK(outside == 0);
}

TEST_CASE("Jacobian determinant is one (finite differences)") {
    const GroupContext ctx = make_context(8);
    SplitMix64 rng(44);
    const std::vector<MoebiusMap> gens = {ctx.S, ctx.T, ctx.P, ctx.U, ctx.Q};
    const double h = 1e-6;
    int words = 0;
    while (words < 20) {
        const MoebiusMap m = testutil::random_word(gens, rng, 4);
        int pts = 0;
        for (int i = 0; i < 200 && pts < 100; ++i) {
            const PlanarPoint p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            if (std::abs(m.c * p.x + m.d) < 5e-2) continue;
            const PlanarPoint xp = planar_apply(m, {p.x + h, p.y});
            const PlanarPoint xm = planar_apply(m, {p.x - h, p.y});
            const PlanarPoint yp = planar_apply(m, {p.x, p.y + h});
            const PlanarPoint ym = planar_apply(m, {p.x, p.y - h});
            const double j11 = (xp.x - xm.x) / (2 * h), j12 = (yp.x - ym.x) / (2 * h);
            const double j21 = (xp.y - xm.y) / (2 * h), j22 = (yp.y - ym.y) / (2 * h);
            const double det = j11 * j22 - j12 * j21;
            CHECK(close(det, 1.0, 1e-5));
            ++pts;
        }
        if (pts == 100) ++words;
    }
}
