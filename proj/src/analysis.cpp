#include "cfx/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace cfx {

EntropyEstimate entropy_estimate(const GroupContext& ctx, MapId id, double x0, std::size_t n,
                                 std::size_t batches) {
    if (n < 10000) fail(ErrorKind::Parameter, "entropy estimate needs n >= 1e4");
    if (batches < 2 || batches > n) fail(ErrorKind::Parameter, "bad batch count");
    const Interval iv = map_interval(ctx, id);
    if (!iv.contains_closed(x0)) fail(ErrorKind::Parameter, "start outside the map interval");

    const std::size_t batch_len = n / batches;
    std::vector<double> batch_sums(batches, 0.0);
    std::size_t collected = 0, restarts = 0;
    SplitMix64 rng(0x7a75u);
    double x = x0;
    while (collected < batch_len * batches) {
        try {
            const StepResult s = step(ctx, id, x);
            batch_sums[collected / batch_len] += s.tau;
            ++collected;
            x = s.image;
        } catch (const Error&) {
            ++restarts;
            if (restarts > 64 && collected < n / 2)
                fail(ErrorKind::OrbitTerminated, "orbit keeps dying before n/2 steps");
            x = x0 + (rng.next_double() - 0.5) * 1e-3 * iv.width();
            x = std::clamp(x, iv.lo + 1e-6 * iv.width(), iv.hi - 1e-6 * iv.width());
        }
    }

    EntropyEstimate est;
    est.steps = collected;
    est.restarts = restarts;
    double mean = 0.0;
    for (double s : batch_sums) mean += s;
    mean /= static_cast<double>(collected);
    est.h = mean;
    double var = 0.0;
    for (double s : batch_sums) {
        const double m = s / static_cast<double>(batch_len);
        var += (m - mean) * (m - mean);
    }
    var /= static_cast<double>(batches - 1);
    est.stderr_batch = std::sqrt(var / static_cast<double>(batches));
    return est;
}

namespace {

struct FirstReturn {
    bool ok = false;
    bool shell = false;
    PlanarPoint point{};
    std::size_t steps = 0;
};

FirstReturn first_return(const GroupContext& ctx, MapId id, const Domain& bar, PlanarPoint p,
                         std::size_t max_iters) {
    FirstReturn fr;
    PlanarPoint q = p;
    for (std::size_t m = 1; m <= max_iters; ++m) {
        try {
            q = planar_step(ctx, id, q);
        } catch (const Error&) {
            fr.shell = true;
            return fr;
        }
        switch (contains(bar, q, kDefaultTol)) {
            case Membership::Inside:
                fr.ok = true;
                fr.point = q;
                fr.steps = m;
                return fr;
            case Membership::Boundary:
                fr.shell = true;
                return fr;
            case Membership::Outside: break;
        }
    }
    return fr;  // no return within the bound
}

}  // namespace

ComparisonReport compare_first_returns(const GroupContext& ctx,
                                       const std::vector<PlanarPoint>& starts,
                                       std::size_t max_iters, double tol) {
    const Domain bar = build_domain(ctx, DomainId::OmegaBar);
    ComparisonReport rep;
    rep.tol = tol;
    rep.records.reserve(starts.size());
    for (const PlanarPoint& p : starts) {
        if (contains(bar, p, kDefaultTol) != Membership::Inside)
            fail(ErrorKind::Parameter, "start point not inside the intersection domain");
        ReturnRecord rec;
        rec.start = p;
        const FirstReturn fr = first_return(ctx, MapId::DoubledRosen, bar, p, max_iters);
        const FirstReturn fv = first_return(ctx, MapId::VeechMultiplicative, bar, p, max_iters);
        rec.r_ok = fr.ok;
        rec.v_ok = fv.ok;
        rec.shell = fr.shell || fv.shell;
        if (fr.ok) {
            rec.r_return = fr.point;
            rec.r_steps = fr.steps;
        }
        if (fv.ok) {
            rec.v_return = fv.point;
            rec.v_steps = fv.steps;
        }
        if (fr.ok && fv.ok) {
            rec.agree = std::abs(fr.point.x - fv.point.x) <= tol &&
                        std::abs(fr.point.y - fv.point.y) <= tol;
        }
        if (rec.shell || !rec.r_ok || !rec.v_ok)
            ++rep.shell_or_failed;
        else if (rec.agree)
            ++rep.agreements;
        else
            ++rep.disagreements;
        rep.records.push_back(rec);
    }
    return rep;
}

std::size_t induction_index(const GroupContext& ctx, MapId id, PlanarPoint p,
                            const Domain& omega_bar, std::size_t max_iters) {
    PlanarPoint q = p;
    for (std::size_t m = 1; m <= max_iters; ++m) {
        q = planar_step(ctx, id, q);
        if (contains(omega_bar, q, kDefaultTol) == Membership::Inside) return m;
    }
    fail(ErrorKind::NoReturn, "no return to the intersection within the iteration bound");
}

std::size_t induction_index(const GroupContext& ctx, MapId id, PlanarPoint p,
                            std::size_t max_iters) {
    const Domain bar = build_domain(ctx, DomainId::OmegaBar);
    if (contains(bar, p, kDefaultTol) != Membership::Inside)
        fail(ErrorKind::Parameter, "point not inside the intersection domain");
    return induction_index(ctx, id, p, bar, max_iters);
}

std::vector<SlowReturnRow> slow_return_experiment(const GroupContext& ctx, int k_max,
                                                  std::size_t samples_per_k, std::uint64_t seed) {
    if (ctx.q % 4 != 0)
        fail(ErrorKind::Parameter, "q must be divisible by 4, got " + std::to_string(ctx.q));
    if (k_max < 2) fail(ErrorKind::Parameter, "k_max must be at least 2");

    const Domain bar = build_domain(ctx, DomainId::OmegaBar);
    const MoebiusMap w1 = mpow(ctx.R, ctx.q / 4) * ctx.P.inverse();
    std::vector<SlowReturnRow> rows;
    for (int k = 2; k <= k_max; ++k) {
        const MoebiusMap wk = mpow(w1, k);
        double a = act(wk, ctx.I.lo).finite();
        double b = act(wk, ctx.I.hi).finite();
        if (a > b) std::swap(a, b);
        SlowReturnRow row;
        row.k = k;
        row.x_lo = a;
        row.x_hi = b;
        if (a < ctx.I.lo - kDefaultTol || b > ctx.I.hi + kDefaultTol)
            fail(ErrorKind::EmptyFiber, "power image left the interval; nothing to sample");
        SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
        std::size_t min_index = static_cast<std::size_t>(-1);
        std::size_t got = 0;
        std::size_t attempts = 0;
        while (got < samples_per_k && attempts < samples_per_k * 1000) {
            ++attempts;
            const double x = rng.uniform(a, b);
            const double lo = bar.lower_at(x), hi = bar.upper_at(x);
            const double y = rng.uniform(lo, hi);
            const PlanarPoint p{x, y};
            if (contains(bar, p, kDefaultTol) != Membership::Inside) continue;
            try {
                const std::size_t idx =
                    induction_index(ctx, MapId::VeechMultiplicative, p, bar, 100000);
                min_index = std::min(min_index, idx);
                ++got;
            } catch (const Error&) {
                continue;  // shell contact; resample
            }
        }
        if (got == 0) fail(ErrorKind::EmptyFiber, "could not place samples in the fiber");
        row.samples = got;
        row.min_index = min_index;
        row.pass = min_index >= static_cast<std::size_t>(k);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cfx
