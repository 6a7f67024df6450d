#include "cfx/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <unordered_map>

#include "cfx/csv.hpp"

namespace cfx {

namespace {

std::size_t bin_index(const Interval& iv, std::size_t bins, double x) {
    const double w = iv.width() / static_cast<double>(bins);
    auto i = static_cast<long long>(std::floor((x - iv.lo) / w));
    i = std::clamp<long long>(i, 0, static_cast<long long>(bins) - 1);
    return static_cast<std::size_t>(i);
}

}  // namespace

CloudReport bin_points(const GroupContext& ctx, MapId id, std::vector<PlanarPoint> points,
                       std::size_t bins) {
    CloudReport r;
    r.map = id;
    r.q = ctx.q;
    const Interval iv = map_interval(ctx, id);
    r.bins.resize(bins);
    const double w = iv.width() / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        r.bins[i].x_lo = iv.lo + w * static_cast<double>(i);
        r.bins[i].x_hi = i + 1 == bins ? iv.hi : iv.lo + w * static_cast<double>(i + 1);
    }
    for (const PlanarPoint& p : points) {
        CloudBin& b = r.bins[bin_index(iv, bins, p.x)];
        if (b.count == 0 || p.y < b.min_pt.y) b.min_pt = p;
        if (b.count == 0 || p.y > b.max_pt.y) b.max_pt = p;
        ++b.count;
    }
    for (const CloudBin& b : r.bins)
        if (b.count < 10) ++r.underfilled_bins;
    r.sufficient = r.underfilled_bins == 0;
    r.points = std::move(points);
    return r;
}

CloudReport simulate_cloud(const GroupContext& ctx, MapId id, PlanarPoint p0, std::size_t n,
                           std::size_t bins, std::size_t burn_in, std::uint64_t seed) {
    if (bins == 0 || n < bins) fail(ErrorKind::Parameter, "need n >= bins >= 1");
    const Interval iv = map_interval(ctx, id);
    if (!iv.contains_closed(p0.x)) fail(ErrorKind::Parameter, "start outside the map interval");

    SplitMix64 rng(mix_seed(seed, 0xc10dull));
    std::vector<PlanarPoint> pts;
    pts.reserve(n > burn_in ? n - burn_in : 0);
    std::size_t escaped = 0;
    PlanarPoint p = p0;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            p = planar_step(ctx, id, p);
        } catch (const Error&) {
            ++escaped;
            // Tiny seeded perturbation off the measure-zero bad set.
            double x = p.x + (rng.next_double() - 0.5) * 1e-6 * iv.width();
            x = std::clamp(x, iv.lo + 1e-7 * iv.width(), iv.hi - 1e-7 * iv.width());
            p.x = x;
            continue;
        }
        if (i >= burn_in) pts.push_back(p);
    }
    CloudReport r = bin_points(ctx, id, std::move(pts), bins);
    r.requested = n;
    r.burn_in = burn_in;
    r.escaped = escaped;
    r.seed = seed;
    return r;
}

BoundaryFit fit_boundary_delta(const CloudReport& report, double x_lo, double x_hi, Side side) {
    std::vector<PlanarPoint> extremes;
    for (const CloudBin& b : report.bins) {
        if (b.x_hi <= x_lo || b.x_lo >= x_hi || b.count < 2) continue;
        PlanarPoint e = side == Side::Upper ? b.max_pt : b.min_pt;
        // Uniform order-statistic correction: the extreme of m samples in a fiber
        // of height h sits about h/(m+1) short of the boundary; estimate h by the
        // sample range.
        const double range = b.max_pt.y - b.min_pt.y;
        const double corr = range / static_cast<double>(b.count - 1);
        e.y += side == Side::Upper ? corr : -corr;
        if (std::abs(e.y) < 1e-12) continue;
        extremes.push_back(e);
    }
    if (extremes.size() < 10)
        fail(ErrorKind::InsufficientData,
             "need at least 10 populated bins in the window, have " + std::to_string(extremes.size()));

    double sum = 0.0;
    for (const PlanarPoint& e : extremes) sum += e.x - 1.0 / e.y;
    BoundaryFit fit;
    fit.delta_hat = sum / static_cast<double>(extremes.size());
    fit.bins_used = extremes.size();
    for (const PlanarPoint& e : extremes)
        fit.max_residual = std::max(fit.max_residual, std::abs(e.y - 1.0 / (e.x - fit.delta_hat)));
    return fit;
}

DomainSampler::DomainSampler(const Domain& d, std::size_t bins, double y_clip) : domain_(d) {
    std::set<double> breaks;
    for (const auto* side : {&d.upper, &d.lower})
        for (const auto& a : *side) {
            breaks.insert(a.x_lo);
            breaks.insert(a.x_hi);
        }
    const double w = (d.x_hi - d.x_lo) / static_cast<double>(bins);
    boxes_.reserve(bins);
    cumulative_.reserve(bins);
    double total = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        Box b;
        b.x_lo = d.x_lo + w * static_cast<double>(i);
        b.x_hi = i + 1 == bins ? d.x_hi : d.x_lo + w * static_cast<double>(i + 1);
        std::vector<double> xs = {b.x_lo + 1e-12 * w, b.x_hi - 1e-12 * w};
        for (auto it = breaks.lower_bound(b.x_lo); it != breaks.end() && *it < b.x_hi; ++it)
            if (*it > b.x_lo) xs.push_back(*it + 1e-12 * w);
        b.y_lo = std::numeric_limits<double>::infinity();
        b.y_hi = -std::numeric_limits<double>::infinity();
        for (double x : xs) {
            b.y_lo = std::min(b.y_lo, d.lower_at(x));
            b.y_hi = std::max(b.y_hi, d.upper_at(x));
        }
        b.y_lo = std::max(b.y_lo, -y_clip);
        b.y_hi = std::min(b.y_hi, y_clip);
        if (b.y_hi <= b.y_lo) b.y_hi = b.y_lo;  // degenerate, zero weight
        total += (b.x_hi - b.x_lo) * (b.y_hi - b.y_lo);
        boxes_.push_back(b);
        cumulative_.push_back(total);
    }
    if (total <= 0.0) fail(ErrorKind::Parameter, "domain sampler found no area");
}

PlanarPoint DomainSampler::sample(SplitMix64& rng) const {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const double t = rng.next_double() * cumulative_.back();
        const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), t);
        const Box& b = boxes_[static_cast<std::size_t>(it - cumulative_.begin())];
        PlanarPoint p{rng.uniform(b.x_lo, b.x_hi), rng.uniform(b.y_lo, b.y_hi)};
        if (contains(domain_, p, kDefaultTol) == Membership::Inside) return p;
    }
    throw std::logic_error("rejection sampling failed to hit the domain");
}

namespace {

// Quantized canonical entries; distinct branch matrices are far apart, so this
// keys cylinders reliably.
std::uint64_t branch_key(const MoebiusMap& m) {
    const MoebiusMap c = m.canonical();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (double v : {c.a, c.b, c.c, c.d}) {
        const auto q = static_cast<std::int64_t>(std::llround(v * 1048576.0));
        h ^= static_cast<std::uint64_t>(q);
        h *= 0x100000001b3ull;
    }
    return h;
}

// Candidate branch matrices whose planar image could contain p, keyed off the
// hyperbola pole through p (w = x - 1/y) and the stacking of branch images.
void add_candidate(std::vector<MoebiusMap>& out, const MoebiusMap& m) { out.push_back(m); }

std::vector<MoebiusMap> rosen_sym_candidates(const GroupContext& ctx, PlanarPoint p) {
    std::vector<MoebiusMap> out;
    std::set<long long> digits = {-2, -1, 1, 2};
    if (std::abs(p.y) > 1e-300) {
        const double w = p.x - 1.0 / p.y;
        const double base = (-w - 1.0) / ctx.lambda;
        if (std::abs(base) < 9e15) {
            const auto a0 = static_cast<long long>(std::llround(base));
            for (long long da = -2; da <= 2; ++da)
                if (a0 + da != 0) digits.insert(a0 + da);
        }
    }
    for (long long a : digits)
        add_candidate(out, MoebiusMap::translation(-static_cast<double>(a) * ctx.lambda) * ctx.T);
    return out;
}

std::vector<MoebiusMap> conj_candidates(const GroupContext& ctx, PlanarPoint p) {
    std::vector<MoebiusMap> out;
    std::set<long long> powers = {-1, 0, 1};
    if (std::abs(p.y) > 1e-300) {
        const double w = p.x - 1.0 / p.y;
        if (std::abs(w) < 9e15) {
            const auto lo = static_cast<long long>(std::floor((w - ctx.q1) / ctx.mu)) - 1;
            const auto hi = static_cast<long long>(std::ceil((w + ctx.q1) / ctx.mu)) + 1;
            for (long long t = lo; t <= hi; ++t) powers.insert(t);
        }
    }
    const MoebiusMap ui = ctx.U.inverse();
    for (long long t : powers) {
        const MoebiusMap tr = MoebiusMap::translation(static_cast<double>(t) * ctx.mu);
        add_candidate(out, tr * ui);
        add_candidate(out, tr * ctx.U);
    }
    return out;
}

std::vector<MoebiusMap> additive_candidates(const GroupContext& ctx, PlanarPoint p) {
    std::vector<MoebiusMap> out;
    std::set<long long> ks = {-1, 1};
    if (std::abs(p.y) > 1e-300) {
        const double w = p.x - 1.0 / p.y;
        if (std::abs(w) < 9e15) {
            const auto k0 = static_cast<long long>(std::llround(w / ctx.mu));
            for (long long dk = -2; dk <= 2; ++dk)
                if (k0 + dk != 0) ks.insert(k0 + dk);
        }
    }
    MoebiusMap rj;
    for (int j = 1; j <= ctx.n - 1; ++j) {
        rj = j == 1 ? ctx.R : rj * ctx.R;
        for (long long k : ks)
            add_candidate(out, MoebiusMap::translation(static_cast<double>(k) * ctx.mu) * rj);
    }
    return out;
}

std::vector<MoebiusMap> mult_candidates(const GroupContext& ctx, PlanarPoint p) {
    std::vector<MoebiusMap> out = additive_candidates(ctx, p);
    const double c0 = 4.0 * ctx.mu / (ctx.mu * ctx.mu + 4.0);
    const auto accel = [&](bool right) {
        const double fix = right ? ctx.mu / 2.0 : -ctx.mu / 2.0;
        const double inc = right ? c0 : -c0;
        std::set<long long> ells = {1, 2};
        if (std::abs(p.y) > 1e-300) {
            // p lies in the image strip of the ell-th power iff its hyperbola
            // pole w is the ell-fold transport of a boundary pole: in the chart
            // at the fixed point, 1/(w - fix) = 1/(source - fix) + ell*inc.
            const double w = p.x - 1.0 / p.y;
            for (double source : {-ctx.mu / 2.0, ctx.gamma, ctx.mu / 2.0, -ctx.gamma}) {
                if (source == fix) continue;
                const double est = (1.0 / (w - fix) - 1.0 / (source - fix)) / inc;
                if (!(std::abs(est) < 9e15)) continue;
                const auto l0 = static_cast<long long>(std::llround(est));
                for (long long dl = -1; dl <= 1; ++dl)
                    if (l0 + dl >= 1) ells.insert(l0 + dl);
            }
        }
        const MoebiusMap f = MoebiusMap::translation(fix);
        const MoebiusMap fi = f.inverse();
        for (long long l : ells)
            add_candidate(out, f * MoebiusMap(1.0, 0.0, static_cast<double>(l) * inc, 1.0) * fi);
    };
    accel(true);
    accel(false);
    return out;
}

std::vector<MoebiusMap> inverse_candidates(const GroupContext& ctx, MapId id, PlanarPoint p) {
    switch (id) {
        case MapId::RosenSym: return rosen_sym_candidates(ctx, p);
        case MapId::ConjRosen: return conj_candidates(ctx, p);
        case MapId::VeechAdditive: return additive_candidates(ctx, p);
        case MapId::VeechMultiplicative: return mult_candidates(ctx, p);
        default: return {};
    }
}

// One backward probe: is there a branch inverse taking p inside d?
enum class Pull { Found, Shell, Nothing };

Pull pull_back(const GroupContext& ctx, MapId id, const Domain& d, PlanarPoint p, double tol,
               PlanarPoint* pre) {
    const Interval iv = map_interval(ctx, id);
    bool shell = false;
    for (const MoebiusMap& m : inverse_candidates(ctx, id, p)) {
        const MoebiusMap minv = m.inverse();
        const ExtendedReal xe = act(minv, p.x);
        if (xe.is_inf()) continue;
        const double x = xe.value;
        if (!iv.contains_closed(x)) continue;
        try {
            const StepResult s = step(ctx, id, x, tol);
            if (!projective_equal(s.matrix, m, 1e-6 * std::max(1.0, m.max_entry()))) continue;
            PlanarPoint q = planar_apply(minv, p);
            q.x = x;
            const Membership mem = contains(d, q, tol);
            if (mem == Membership::Inside) {
                if (pre) *pre = q;
                return Pull::Found;
            }
            if (mem == Membership::Boundary) shell = true;
        } catch (const Error&) {
            shell = true;
        }
    }
    return shell ? Pull::Shell : Pull::Nothing;
}

Pull pull_back_map(const GroupContext& ctx, MapId id, const Domain& d, PlanarPoint p, double tol) {
    if (id != MapId::DoubledRosen) return pull_back(ctx, id, d, p, tol, nullptr);
    // r = k^2 over the same domain: invert two k-steps through d.
    bool shell = false;
    PlanarPoint mid;
    switch (pull_back(ctx, MapId::ConjRosen, d, p, tol, &mid)) {
        case Pull::Found: break;
        case Pull::Shell: return Pull::Shell;
        case Pull::Nothing: return Pull::Nothing;
    }
    switch (pull_back(ctx, MapId::ConjRosen, d, mid, tol, nullptr)) {
        case Pull::Found: return Pull::Found;
        case Pull::Shell: shell = true; break;
        case Pull::Nothing: break;
    }
    return shell ? Pull::Shell : Pull::Nothing;
}

}  // namespace

InvarianceReport verify_invariance(const GroupContext& ctx, const Domain& d, MapId id,
                                   std::size_t samples, double tol, std::uint64_t seed) {
    if (samples < 1) fail(ErrorKind::Parameter, "need at least one sample");
    InvarianceReport rep;
    rep.samples = samples;
    rep.seed = seed;
    const DomainSampler sampler(d);

    // Injectivity scan grid over the domain's bounding box.
    double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
    for (const auto& a : d.lower) {
        y_min = std::min(y_min, std::min(a.eval(a.x_lo + 1e-12), a.eval(a.x_hi - 1e-12)));
    }
    for (const auto& a : d.upper) {
        y_max = std::max(y_max, std::max(a.eval(a.x_lo + 1e-12), a.eval(a.x_hi - 1e-12)));
    }
    y_min = std::max(y_min, -1e4);
    y_max = std::min(y_max, 1e4);
    constexpr std::size_t kGrid = 2048;
    struct Slot {
        std::uint64_t key;
        PlanarPoint q;
    };
    std::unordered_map<std::uint64_t, Slot> cells;
    cells.reserve(samples * 2);
    const auto cell_of = [&](PlanarPoint q) -> std::uint64_t {
        const double fx = (q.x - d.x_lo) / (d.x_hi - d.x_lo);
        const double fy = (q.y - y_min) / (y_max - y_min);
        const auto ix = static_cast<std::uint64_t>(
            std::clamp<double>(std::floor(fx * kGrid), 0.0, kGrid - 1));
        const auto iy = static_cast<std::uint64_t>(
            std::clamp<double>(std::floor(fy * kGrid), 0.0, kGrid - 1));
        return ix * kGrid + iy;
    };

    SplitMix64 master(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        SplitMix64 rng(mix_seed(seed, i));
        const PlanarPoint p = sampler.sample(rng);

        // Forward.
        bool stepped = false;
        PlanarPoint q{};
        std::uint64_t key = 0;
        try {
            const StepResult s = step(ctx, id, p.x, tol);
            q = planar_apply(s.matrix, p);
            q.x = s.image;
            key = branch_key(s.matrix);
            stepped = true;
        } catch (const Error&) {
            ++rep.forward_shell;
        }
        if (stepped) {
            ++rep.forward_tested;
            switch (contains(d, q, tol)) {
                case Membership::Inside: break;
                case Membership::Boundary: ++rep.forward_shell; break;
                case Membership::Outside: ++rep.forward_escapes; break;
            }
            const std::uint64_t cell = cell_of(q);
            const auto it = cells.find(cell);
            if (it == cells.end()) {
                cells.emplace(cell, Slot{key, q});
            } else if (it->second.key != key) {
                const double scale = 1.0 + std::abs(q.x) + std::abs(q.y);
                if (std::abs(it->second.q.x - q.x) <= 1e-9 * scale &&
                    std::abs(it->second.q.y - q.y) <= 1e-9 * scale)
                    ++rep.collisions;
            }
        }

        // Backward.
        ++rep.backward_tested;
        switch (pull_back_map(ctx, id, d, p, tol)) {
            case Pull::Found: break;
            case Pull::Shell: ++rep.backward_shell; break;
            case Pull::Nothing: ++rep.backward_escapes; break;
        }
    }
    return rep;
}

void write_cloud_csv(std::ostream& os, const CloudReport& report) {
    os << "step,x,y\n";
    std::size_t i = report.burn_in;
    for (const PlanarPoint& p : report.points)
        os << i++ << "," << fmt17(p.x) << "," << fmt17(p.y) << "\n";
}

}  // namespace cfx
