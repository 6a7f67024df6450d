#include "cfx/context.hpp"

#include <cmath>
#include <string>

namespace cfx {

namespace {

void verify(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("context self-check failed: " + what);
}

bool close(double a, double b, double tol = kIdentityTol) { return std::abs(a - b) <= tol; }

}  // namespace

GroupContext make_context(int q) {
    if (q < 6 || q % 2 != 0)
        fail(ErrorKind::Parameter, "q must be an even integer >= 6, got " + std::to_string(q));

    GroupContext ctx;
    ctx.q = q;
    ctx.n = q / 2;
    ctx.theta = M_PI / q;
    const double s = std::sin(ctx.theta), c = std::cos(ctx.theta);
    ctx.lambda = 2.0 * c;
    ctx.mu = 2.0 * c / s;
    const double mu2 = ctx.mu * ctx.mu;
    ctx.alpha = (ctx.mu / 2.0) * (3.0 * mu2 - 4.0) / (5.0 * mu2 + 4.0);
    ctx.gamma = (ctx.mu / 2.0) * (5.0 * mu2 + 4.0) / (3.0 * mu2 - 4.0);
    ctx.q1 = (1.0 + c) / s;

    ctx.S = MoebiusMap::translation(ctx.lambda);
    ctx.T = MoebiusMap(0.0, -1.0, 1.0, 0.0);
    ctx.U = MoebiusMap::rotation(ctx.theta);
    ctx.R = ctx.U * ctx.U;
    ctx.P = MoebiusMap::translation(ctx.mu);
    ctx.Q = MoebiusMap(1.0, c, 0.0, s);

    ctx.J = {-ctx.lambda / 2.0, ctx.lambda / 2.0};
    ctx.I = {-ctx.mu / 2.0, ctx.mu / 2.0};

    const int n = ctx.n;
    ctx.phi.resize(n);
    for (int j = 0; j < n; ++j)
        ctx.phi[j] = -std::cos((j + 1) * ctx.theta) / std::cos(j * ctx.theta);

    ctx.delta.resize(n - 1);
    ctx.delta[0] = -ctx.lambda - 1.0;
    for (int j = 0; j + 1 <= n - 2; ++j) ctx.delta[j + 1] = -ctx.lambda - 1.0 / ctx.delta[j];

    ctx.d.resize(n);
    ctx.c.resize(n - 1);
    for (int j = 1; j <= n; ++j) ctx.d[j - 1] = act(mpow(ctx.R, -j), ctx.mu / 2.0).finite();
    for (int j = 1; j <= n - 1; ++j) ctx.c[j - 1] = act(mpow(ctx.R, -j), ExtendedReal::infinity()).finite();

    // Self-checks: the constants and generators must satisfy the defining identities.
    verify(close(ctx.phi[0], -ctx.lambda / 2.0), "phi_0 = -lambda/2");
    verify(close(ctx.phi[n - 1], 0.0), "phi_{n-1} = 0");
    for (int j = 0; j + 1 < n; ++j) verify(ctx.phi[j] < ctx.phi[j + 1], "phi increasing");
    verify(close(ctx.delta[n - 2], -1.0 / (ctx.lambda - 1.0)), "delta_{n-2} = -1/(lambda-1)");
    verify(close(ctx.d[0], -ctx.mu / 2.0), "d_1 = -mu/2");
    verify(close(ctx.d[n - 1], ctx.mu / 2.0), "d_n = mu/2");
    for (int j = 0; j < n - 1; ++j) {
        verify(ctx.d[j] < ctx.c[j], "d_j < c_j");
        verify(ctx.c[j] < ctx.d[j + 1], "c_j < d_{j+1}");
    }
    verify(close(ctx.alpha * ctx.gamma, (ctx.mu / 2.0) * (ctx.mu / 2.0)), "alpha*gamma = (mu/2)^2");
    verify(close(ctx.mu + 1.0 / ctx.q1, ctx.q1), "mu + 1/Q.1 = Q.1");

    const MoebiusMap id;
    verify(projective_equal(ctx.T * ctx.T, id, kIdentityTol), "T^2 = Id");
    verify(projective_equal(mpow(ctx.S * ctx.T, q), id, kIdentityTol), "(ST)^q = Id");
    verify(projective_equal(mpow(ctx.R, n), id, kIdentityTol), "R^n = Id");
    verify(projective_equal(ctx.U * ctx.U, ctx.R, kIdentityTol), "U^2 = R");
    const MoebiusMap qi = ctx.Q.inverse();
    verify(projective_equal(ctx.Q * ctx.S * qi, ctx.P, kIdentityTol), "QSQ^-1 = P");
    verify(projective_equal(ctx.Q * ctx.T * ctx.S * qi, ctx.U, kIdentityTol), "QTSQ^-1 = U");
    verify(projective_equal(ctx.Q * ctx.T * ctx.S * ctx.T * qi, ctx.R * ctx.P.inverse(), kIdentityTol),
           "QTSTQ^-1 = RP^-1");
    verify(close(act(mpow(ctx.S * ctx.T, n), 1.0).finite(), -1.0), "(ST)^n . 1 = -1");
    for (int j = 0; j < n; ++j)
        verify(close(act(ctx.Q, ctx.phi[j]).finite(), std::tan(j * ctx.theta)), "Q.phi_j = tan(j pi/q)");
    for (int j = 0; j <= n - 2; ++j) {
        const double ujq1 = act(mpow(ctx.U, j), ctx.q1).finite();
        verify(close(act(ctx.Q, ctx.delta[j]).finite(), -ujq1), "Q.delta_j = -U^j Q.1");
        verify(close(act(ctx.P.inverse() * ctx.Q, -ctx.delta[j]).finite(), ujq1),
               "P^-1 Q.(-delta_j) = U^j Q.1");
    }

    return ctx;
}

}  // namespace cfx
