#include "cfx/maps.hpp"

#include <cmath>
#include <limits>

namespace cfx {

const char* map_letter(MapId id) {
    switch (id) {
        case MapId::RosenOriginal: return "f";
        case MapId::RosenSym: return "h";
        case MapId::ConjRosen: return "k";
        case MapId::DoubledRosen: return "r";
        case MapId::VeechAdditive: return "a";
        case MapId::VeechMultiplicative: return "v";
    }
    return "?";
}

MapId map_from_letter(const std::string& s) {
    if (s == "f") return MapId::RosenOriginal;
    if (s == "h") return MapId::RosenSym;
    if (s == "k") return MapId::ConjRosen;
    if (s == "r") return MapId::DoubledRosen;
    if (s == "a") return MapId::VeechAdditive;
    if (s == "v") return MapId::VeechMultiplicative;
    fail(ErrorKind::Parameter, "unknown map '" + s + "' (expected one of f h k r a v)");
}

std::string digit_string(const Digit& d) {
    struct V {
        std::string operator()(const RosenOriginalDigit& g) const {
            return "e" + std::to_string(g.eps) + "b" + std::to_string(g.b);
        }
        std::string operator()(const RosenSymDigit& g) const { return "a" + std::to_string(g.a); }
        std::string operator()(const ConjRosenDigit& g) const {
            return "s" + std::to_string(g.side) + "p" + std::to_string(g.p);
        }
        std::string operator()(const VeechAddDigit& g) const {
            return "k" + std::to_string(g.k) + "j" + std::to_string(g.j);
        }
        std::string operator()(const VeechMultDigit& g) const {
            switch (g.regime) {
                case VeechRegime::Right: return "R" + std::to_string(g.ell);
                case VeechRegime::Left: return "L" + std::to_string(g.ell);
                case VeechRegime::Central:
                    return "Ck" + std::to_string(g.kj.k) + "j" + std::to_string(g.kj.j);
            }
            return "?";
        }
    };
    return std::visit(V{}, d);
}

Interval map_interval(const GroupContext& ctx, MapId id) {
    switch (id) {
        case MapId::RosenOriginal:
        case MapId::RosenSym: return ctx.J;
        default: return ctx.I;
    }
}

namespace {

void require_in_interval(const Interval& iv, double x, double tol) {
    if (!iv.contains_closed(x, tol))
        fail(ErrorKind::Parameter, "point " + std::to_string(x) + " outside the map interval");
}

// Translation power bringing y into [-period/2, period/2); at most one +-1 nudge.
long long reduce_power(double y, double period, double lo, double hi, double* image) {
    long long t = -static_cast<long long>(std::floor(y / period + 0.5));
    double img = y + static_cast<double>(t) * period;
    if (img < lo && img + period < hi) {
        ++t;
        img += period;
    } else if (img >= hi && img - period >= lo) {
        --t;
        img -= period;
    }
    *image = img;
    return t;
}

void check_target(double image, double lo, double hi, double slack) {
    if (!(image >= lo - slack && image < hi + slack))
        fail(ErrorKind::DiscontinuityPoint, "step image " + std::to_string(image) +
                                                " missed the target interval");
}

// Estimated absolute error of act(m, x) from cancellation in numerator/denominator.
double act_slack(const MoebiusMap& m, double x, double image) {
    const double den = std::abs(m.c * x + m.d);
    const double mag = std::abs(m.c * x) + std::abs(m.d);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return 8.0 * std::numeric_limits<double>::epsilon() * (mag / den) * (1.0 + std::abs(image));
}

}  // namespace

StepResult rosen_original_step(const GroupContext& ctx, double x, double tol) {
    require_in_interval(ctx.J, x, tol);
    if (std::abs(x) <= tol) fail(ErrorKind::ZeroOrbit, "orbit reached 0");
    const int eps = x > 0 ? 1 : -1;
    const double y = 1.0 / std::abs(x);
    double image = 0.0;
    long long t = reduce_power(y, ctx.lambda, ctx.J.lo, ctx.J.hi, &image);
    const long long b = -t;
    MoebiusMap m = eps < 0
                       ? MoebiusMap::translation(-static_cast<double>(b) * ctx.lambda) * ctx.T
                       : MoebiusMap::reflecting(-static_cast<double>(b) * ctx.lambda, 1.0, 1.0, 0.0);
    image = act(m, x).finite();
    check_target(image, ctx.J.lo, ctx.J.hi, std::max(tol, act_slack(m, x, image)));
    return StepResult{image, m, RosenOriginalDigit{eps, b}, tau(m, x), m.c * x + m.d};
}

StepResult rosen_sym_step(const GroupContext& ctx, double x, double tol) {
    require_in_interval(ctx.J, x, tol);
    if (std::abs(x) <= tol) fail(ErrorKind::ZeroOrbit, "orbit reached 0");
    const double y = -1.0 / x;
    double image = 0.0;
    long long t = reduce_power(y, ctx.lambda, ctx.J.lo, ctx.J.hi, &image);
    const long long a = -t;
    MoebiusMap m = MoebiusMap::translation(-static_cast<double>(a) * ctx.lambda) * ctx.T;
    image = act(m, x).finite();
    check_target(image, ctx.J.lo, ctx.J.hi, std::max(tol, act_slack(m, x, image)));
    return StepResult{image, m, RosenSymDigit{a}, tau(m, x), m.c * x + m.d};
}

StepResult conj_rosen_step(const GroupContext& ctx, double x, double tol) {
    require_in_interval(ctx.I, x, tol);
    if (std::abs(x) <= tol) fail(ErrorKind::ZeroOrbit, "orbit reached the branch point 0");
    const int side = x > 0 ? 1 : -1;
    const MoebiusMap rot = side > 0 ? ctx.U.inverse() : ctx.U;
    const ExtendedReal y = act(rot, x);
    if (y.is_inf()) fail(ErrorKind::Unbounded, "rotation image unbounded");
    double image = 0.0;
    long long p = reduce_power(y.value, ctx.mu, ctx.I.lo, ctx.I.hi, &image);
    MoebiusMap m = MoebiusMap::translation(static_cast<double>(p) * ctx.mu) * rot;
    image = act(m, x).finite();
    check_target(image, ctx.I.lo, ctx.I.hi, std::max(tol, act_slack(m, x, image)));
    return StepResult{image, m, ConjRosenDigit{side, p}, tau(m, x), m.c * x + m.d};
}

StepResult doubled_rosen_step(const GroupContext& ctx, double x, double tol) {
    const StepResult first = conj_rosen_step(ctx, x, tol);
    const StepResult second = conj_rosen_step(ctx, first.image, tol);
    const MoebiusMap m = second.matrix * first.matrix;
    // Image through the composed matrix keeps act(matrix, x) = image exact;
    // the digit reports the first half-step (the second is one k-step away).
    double image = act(m, x).finite();
    if (image < ctx.I.lo || image >= ctx.I.hi) image = second.image;
    return StepResult{image, m, first.digit, first.tau + second.tau,
                      first.denom * second.denom};
}

StepResult veech_additive_step(const GroupContext& ctx, double x, double tol) {
    require_in_interval(ctx.I, x, tol);
    for (double v : ctx.d)
        if (std::abs(x - v) <= tol) fail(ErrorKind::DiscontinuityPoint, "x at a partition point d_j");
    for (double v : ctx.c)
        if (std::abs(x - v) <= tol) fail(ErrorKind::DiscontinuityPoint, "x at a partition point c_j");

    // The rotation exponent is found by scan: the unique j with R^j.x outside I.
    MoebiusMap rj, best_rj;
    int best_j = 0;
    double best_mag = -1.0;
    bool best_inf = false;
    for (int j = 1; j <= ctx.n - 1; ++j) {
        rj = j == 1 ? ctx.R : rj * ctx.R;
        const ExtendedReal y = act(rj, x);
        const double mag = y.is_inf() ? std::numeric_limits<double>::infinity() : std::abs(y.value);
        if (mag > best_mag) {
            best_mag = mag;
            best_j = j;
            best_rj = rj;
            best_inf = y.is_inf();
        }
    }
    if (best_inf) fail(ErrorKind::Unbounded, "rotation image at infinity");
    if (best_mag < ctx.mu / 2.0 - tol)
        fail(ErrorKind::DiscontinuityPoint, "no rotation power leaves the interval");
    const double y = act(best_rj, x).finite();
    double image = 0.0;
    long long k = reduce_power(y, ctx.mu, ctx.I.lo, ctx.I.hi, &image);
    if (k == 0) fail(ErrorKind::DiscontinuityPoint, "translation power collapsed to 0");
    MoebiusMap m = MoebiusMap::translation(static_cast<double>(k) * ctx.mu) * best_rj;
    image = act(m, x).finite();
    check_target(image, ctx.I.lo, ctx.I.hi, std::max(tol, act_slack(m, x, image)));
    return StepResult{image, m, VeechAddDigit{k, best_j}, tau(m, x), m.c * x + m.d};
}

namespace {

// Accelerated branch: power of a parabolic map chosen so that the image exits
// the acceleration window, computed in the translated chart where the action
// is well conditioned arbitrarily close to the fixed point.
StepResult accelerated_step(const GroupContext& ctx, double x, double tol, bool right) {
    const double fix = right ? ctx.mu / 2.0 : -ctx.mu / 2.0;
    const double inc = (right ? 4.0 : -4.0) * ctx.mu / (ctx.mu * ctx.mu + 4.0);
    const double scale = (ctx.mu * ctx.mu + 4.0) / (ctx.mu * (ctx.mu - 2.0 * ctx.alpha));
    const double raw = right ? scale * (x - ctx.alpha) / (ctx.mu - 2.0 * x)
                             : scale * (-ctx.alpha - x) / (2.0 * x + ctx.mu);
    long long ell = static_cast<long long>(std::ceil(raw));
    if (ell < 1) ell = 1;

    // Exit condition in the scalar chart; at most one +-1 nudge.
    const auto exits = [&](long long l) {
        const double img = parabolic_apply(fix, inc, l, x);
        const bool out = right ? img <= ctx.alpha : img >= -ctx.alpha;
        const bool in_interval = img >= ctx.I.lo - tol && img <= ctx.I.hi + tol;
        if (!(out && in_interval)) return false;
        if (l == 1) return true;
        const double prev = parabolic_apply(fix, inc, l - 1, x);
        return right ? prev > ctx.alpha : prev < -ctx.alpha;
    };
    if (!exits(ell)) {
        if (ell > 1 && exits(ell - 1))
            --ell;
        else if (exits(ell + 1))
            ++ell;
        else
            fail(ErrorKind::DiscontinuityPoint, "acceleration exit postcondition failed");
    }

    // The matrix is F (1,0; ell*inc, 1) F^-1 = (1+u*fix, -u*fix^2; u, 1-u*fix)
    // with u = ell*inc; its denominator 1 + u(x - fix) is evaluated in this
    // factored form, which stays accurate arbitrarily close to the fixed point.
    const double u = static_cast<double>(ell) * inc;
    const MoebiusMap f = MoebiusMap::translation(fix);
    const MoebiusMap m = f * MoebiusMap(1.0, 0.0, u, 1.0) * f.inverse();
    const double den = 1.0 + u * (x - fix);
    const double image = fix + (x - fix) / den;
    VeechMultDigit digit{right ? VeechRegime::Right : VeechRegime::Left, ell, {0, 0}};
    return StepResult{image, m, digit, -2.0 * std::log(std::abs(den)), den};
}

}  // namespace

StepResult veech_mult_step(const GroupContext& ctx, double x, double tol) {
    require_in_interval(ctx.I, x, tol);
    if (std::abs(x - ctx.mu / 2.0) <= tol || std::abs(x + ctx.mu / 2.0) <= tol)
        fail(ErrorKind::FixedPoint, "x at a parabolic fixed point");
    if (std::abs(x - ctx.alpha) <= tol || std::abs(x + ctx.alpha) <= tol)
        fail(ErrorKind::DiscontinuityPoint, "x at an acceleration boundary");
    if (x > ctx.alpha) return accelerated_step(ctx, x, tol, true);
    if (x < -ctx.alpha) return accelerated_step(ctx, x, tol, false);
    StepResult s = veech_additive_step(ctx, x, tol);
    const VeechAddDigit kj = std::get<VeechAddDigit>(s.digit);
    s.digit = VeechMultDigit{VeechRegime::Central, 0, kj};
    return s;
}

StepResult step(const GroupContext& ctx, MapId id, double x, double tol) {
    switch (id) {
        case MapId::RosenOriginal: return rosen_original_step(ctx, x, tol);
        case MapId::RosenSym: return rosen_sym_step(ctx, x, tol);
        case MapId::ConjRosen: return conj_rosen_step(ctx, x, tol);
        case MapId::DoubledRosen: return doubled_rosen_step(ctx, x, tol);
        case MapId::VeechAdditive: return veech_additive_step(ctx, x, tol);
        case MapId::VeechMultiplicative: return veech_mult_step(ctx, x, tol);
    }
    fail(ErrorKind::Parameter, "unknown map id");
}

OrbitResult orbit(const GroupContext& ctx, MapId id, double x0, std::size_t n, double tol) {
    OrbitResult out;
    out.last_x = x0;
    out.steps.reserve(std::min<std::size_t>(n, 1 << 20));
    double x = x0;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            StepResult s = step(ctx, id, x, tol);
            x = s.image;
            out.steps.push_back(std::move(s));
            out.last_x = x;
        } catch (const Error& e) {
            out.terminated = true;
            out.cause = e.kind();
            out.message = e.what();
            break;
        }
    }
    return out;
}

}  // namespace cfx
