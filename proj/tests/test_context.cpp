#include "doctest.h"

#include <cmath>

#include "cfx/context.hpp"
#include "cfx/domains.hpp"
#include "oracle.hpp"
#include "test_helpers.hpp"

using namespace cfx;
using testutil::close;

TEST_CASE("make_context rejects bad q") {
    CHECK_THROWS_AS(make_context(7), Error);
    CHECK_THROWS_AS(make_context(4), Error);
    CHECK_THROWS_AS(make_context(0), Error);
    CHECK_THROWS_AS(make_context(-8), Error);
    CHECK_NOTHROW(make_context(6));
    CHECK_NOTHROW(make_context(100));
}

TEST_CASE("q=8 constants against the high-precision oracle") {
    const GroupContext ctx = make_context(8);
    CHECK(close(ctx.lambda, oracle::kLambda8, 1e-15));
    CHECK(close(ctx.mu, oracle::kMu8, 1e-14));
    CHECK(close(ctx.mu, 2.0 * (1.0 + std::sqrt(2.0)), 1e-13));
    CHECK(close(ctx.q1, oracle::kQ18, 1e-13));
    CHECK(close(ctx.q1, 1.0 / std::tan(M_PI / 16.0), 1e-12));
    CHECK(close(ctx.alpha, oracle::kAlpha8, 1e-13));
    CHECK(close(ctx.gamma, oracle::kGamma8, 1e-13));
    for (int j = 0; j < 4; ++j) CHECK(close(ctx.phi[j], oracle::kPhi8[j], 1e-14));
    for (int j = 0; j < 3; ++j) CHECK(close(ctx.delta[j], oracle::kDelta8[j], 1e-13));
    for (int j = 0; j < 4; ++j) CHECK(close(ctx.d[j], oracle::kD8[j], 1e-12));
    for (int j = 0; j < 3; ++j) CHECK(close(ctx.c[j], oracle::kC8[j], 1e-12));
}

TEST_CASE("partition points match the trigonometric forms") {
    for (int q : {6, 8, 12, 16}) {
        const GroupContext ctx = make_context(q);
        for (int j = 1; j <= ctx.n; ++j)
            CHECK(close(ctx.d[j - 1], -1.0 / std::tan((2 * j - 1) * ctx.theta), 1e-10));
        for (int j = 1; j <= ctx.n - 1; ++j)
            CHECK(close(ctx.c[j - 1], -1.0 / std::tan(2 * j * ctx.theta), 1e-10));
    }
}

TEST_CASE("alpha gamma product is exactly (mu/2)^2") {
    for (int q : {6, 8, 10, 12, 16, 24, 100}) {
        const GroupContext ctx = make_context(q);
        CHECK(close(ctx.alpha * ctx.gamma, (ctx.mu / 2.0) * (ctx.mu / 2.0),
                    1e-12 * ctx.mu * ctx.mu));
    }
}

TEST_CASE("Q.1 vs gamma across q, reported at q=6") {
    // The intersection construction relies on Q.1 > gamma for q >= 8.
    for (int q : {8, 10, 12, 16, 24, 48, 100}) {
        const GroupContext ctx = make_context(q);
        CHECK(ctx.q1 > ctx.gamma);
    }
    const GroupContext six = make_context(6);
    const double margin = six.q1 - six.gamma;
    MESSAGE("q=6: Q.1 - gamma = ", margin, " (relative ", margin / six.q1, ")");
    // Smallest relative margin of the family; the q >= 8 guard stays in place.
    const GroupContext eight = make_context(8);
    CHECK(margin / six.q1 < (eight.q1 - eight.gamma) / eight.q1);
}

TEST_CASE("rho diagnostic: positive and U.(Q.1) = mu/2 - rho") {
    for (int q : {6, 8, 12, 16, 100}) {
        const GroupContext ctx = make_context(q);
        const double r = rho(ctx);
        CHECK(r > 0.0);
        const double uq1 = act(ctx.U, ctx.q1).finite();
        CHECK(close(uq1, ctx.mu / 2.0 - r, 1e-9));
        CHECK(uq1 < ctx.mu / 2.0);
    }
    const GroupContext ctx = make_context(8);
    CHECK(close(rho(ctx), oracle::kRho8, 1e-13));
    CHECK(close(act(ctx.U, ctx.q1).finite(), oracle::kUQ18, 1e-12));
}
