#include "cfx/domains.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "cfx/csv.hpp"

namespace cfx {

const char* domain_name(DomainId id) {
    switch (id) {
        case DomainId::ERosenSym: return "E";
        case DomainId::OmegaAdd: return "omega_a";
        case DomainId::OmegaVeech: return "omega_v";
        case DomainId::OmegaR: return "omega_r";
        case DomainId::OmegaBar: return "omega_bar";
    }
    return "?";
}

DomainId domain_from_name(const std::string& s) {
    if (s == "E") return DomainId::ERosenSym;
    if (s == "omega_a") return DomainId::OmegaAdd;
    if (s == "omega_v") return DomainId::OmegaVeech;
    if (s == "omega_r") return DomainId::OmegaR;
    if (s == "omega_bar") return DomainId::OmegaBar;
    fail(ErrorKind::Parameter, "unknown domain '" + s + "'");
}

DomainId invariant_domain(MapId id) {
    switch (id) {
        case MapId::RosenSym: return DomainId::ERosenSym;
        case MapId::ConjRosen:
        case MapId::DoubledRosen: return DomainId::OmegaR;
        case MapId::VeechAdditive: return DomainId::OmegaAdd;
        case MapId::VeechMultiplicative: return DomainId::OmegaVeech;
        case MapId::RosenOriginal:
            fail(ErrorKind::Parameter, "the original Rosen map has no planar domain here");
    }
    fail(ErrorKind::Parameter, "unknown map id");
}

namespace {

const HyperbolaArc& arc_at(const std::vector<HyperbolaArc>& arcs, double x) {
    // Arcs tile [x_lo, x_hi); the right edge falls to the last arc.
    std::size_t lo = 0, hi = arcs.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (x < arcs[mid].x_lo)
            hi = mid;
        else
            lo = mid;
    }
    return arcs[lo];
}

// Lower boundary by central symmetry: (x, y) -> (-x, -y).
std::vector<HyperbolaArc> mirror(const std::vector<HyperbolaArc>& upper) {
    std::vector<HyperbolaArc> out;
    out.reserve(upper.size());
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
        HyperbolaArc a;
        a.x_lo = -it->x_hi;
        a.x_hi = -it->x_lo;
        a.delta = it->delta.is_inf() ? ExtendedReal::infinity() : ExtendedReal(-it->delta.value);
        out.push_back(a);
    }
    return out;
}

void validate(const Domain& d) {
    const auto check = [&](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("domain ") + d.name + ": " + what);
    };
    for (const auto* side : {&d.upper, &d.lower}) {
        check(!side->empty(), "empty arc list");
        check(side->front().x_lo == d.x_lo, "arc list must start at the left edge");
        check(side->back().x_hi == d.x_hi, "arc list must end at the right edge");
        for (std::size_t i = 0; i < side->size(); ++i) {
            const auto& a = (*side)[i];
            check(a.x_lo < a.x_hi, "degenerate arc");
            if (i + 1 < side->size())
                check(std::abs(a.x_hi - (*side)[i + 1].x_lo) <= kExactTol, "arc lists must tile exactly");
            if (!a.delta.is_inf())
                check(a.delta.value <= a.x_lo || a.delta.value >= a.x_hi,
                      "pole inside an arc interior");
        }
    }
    const int grid = 10000;
    for (int i = 1; i < grid; ++i) {
        const double x = d.x_lo + (d.x_hi - d.x_lo) * i / grid;
        check(d.lower_at(x) < d.upper_at(x), "boundaries must not cross");
    }
}

}  // namespace

double Domain::upper_at(double x) const { return arc_at(upper, x).eval(x); }
double Domain::lower_at(double x) const { return arc_at(lower, x).eval(x); }

Domain build_domain(const GroupContext& ctx, DomainId which) {
    Domain d;
    d.id = which;
    d.q = ctx.q;
    d.name = domain_name(which);
    const int n = ctx.n;
    const double half_mu = ctx.mu / 2.0;

    switch (which) {
        case DomainId::ERosenSym: {
            d.x_lo = -ctx.lambda / 2.0;
            d.x_hi = ctx.lambda / 2.0;
            for (int j = 0; j + 1 <= n - 2; ++j)
                d.upper.push_back({ctx.phi[j], ctx.phi[j + 1], ExtendedReal(ctx.delta[j])});
            d.upper.push_back({ctx.phi[n - 2], 0.0, ExtendedReal(ctx.delta[n - 2])});
            d.upper.push_back({0.0, d.x_hi, ExtendedReal(-1.0)});
            d.upper.front().x_lo = d.x_lo;
            break;
        }
        case DomainId::OmegaAdd: {
            d.x_lo = -half_mu;
            d.x_hi = half_mu;
            d.upper.push_back({d.x_lo, d.x_hi, ExtendedReal(-half_mu)});
            break;
        }
        case DomainId::OmegaVeech: {
            d.x_lo = -half_mu;
            d.x_hi = half_mu;
            d.upper.push_back({d.x_lo, -ctx.alpha, ExtendedReal(-ctx.gamma)});
            d.upper.push_back({-ctx.alpha, d.x_hi, ExtendedReal(-half_mu)});
            break;
        }
        case DomainId::OmegaR: {
            d.x_lo = -half_mu;
            d.x_hi = half_mu;
            // Poles -U^j.(Q.1) over [tan(j pi/q), tan((j+1) pi/q)); the list closes
            // at mu/2 because tan((n-1) pi/q) = cot(pi/q).
            if (std::abs(std::tan((n - 1) * ctx.theta) - half_mu) > kDefaultTol * ctx.mu)
                throw std::logic_error("omega_r arc list does not close at mu/2");
            double lo = d.x_lo;
            for (int j = 0; j <= n - 2; ++j) {
                const double hi = j == n - 2 ? half_mu : std::tan((j + 1) * ctx.theta);
                const double pole = -act(mpow(ctx.U, j), ctx.q1).finite();
                d.upper.push_back({lo, hi, ExtendedReal(pole)});
                lo = hi;
            }
            break;
        }
        case DomainId::OmegaBar: {
            if (ctx.q < 8)
                fail(ErrorKind::UnsupportedQ,
                     "the intersection domain needs q >= 8 (Q.1 > gamma)");
            d.x_lo = -half_mu;
            d.x_hi = half_mu;
            d.upper.push_back({d.x_lo, std::tan(ctx.theta), ExtendedReal(-ctx.q1)});
            d.upper.push_back({std::tan(ctx.theta), d.x_hi, ExtendedReal(-half_mu)});
            break;
        }
    }

    d.lower = mirror(d.upper);
    validate(d);
    return d;
}

Membership contains(const Domain& d, PlanarPoint p, double tol) {
    if (p.x < d.x_lo - tol || p.x > d.x_hi + tol) return Membership::Outside;
    if (std::abs(p.x - d.x_lo) <= tol || std::abs(p.x - d.x_hi) <= tol) return Membership::Boundary;
    const double up = d.upper_at(p.x);
    const double lo = d.lower_at(p.x);
    if (p.y >= up - tol) return p.y <= up + tol ? Membership::Boundary : Membership::Outside;
    if (p.y <= lo + tol) return p.y >= lo - tol ? Membership::Boundary : Membership::Outside;
    return Membership::Inside;
}

double area_closed_form(const GroupContext& ctx, DomainId which) {
    const double c = std::cos(ctx.theta);
    switch (which) {
        case DomainId::OmegaVeech: return 2.0 * std::log(8.0 * c * c);
        case DomainId::OmegaR: return 2.0 * std::log(ctx.q1);
        case DomainId::OmegaBar:
            if (ctx.q < 8) fail(ErrorKind::UnsupportedQ, "intersection area needs q >= 8");
            return 2.0 * std::log(c * (1.0 + c));
        case DomainId::OmegaAdd:
            fail(ErrorKind::InfiniteArea, "the additive domain has infinite Lebesgue measure");
        case DomainId::ERosenSym:
            fail(ErrorKind::NoClosedForm, "no closed form for E; use area_analytic");
    }
    fail(ErrorKind::Parameter, "unknown domain id");
}

double area_analytic(const Domain& d) {
    for (const auto* side : {&d.upper, &d.lower})
        for (const auto& a : *side)
            if (!a.delta.is_inf() &&
                (std::abs(a.delta.value - a.x_lo) <= kExactTol || std::abs(a.delta.value - a.x_hi) <= kExactTol))
                fail(ErrorKind::InfiniteArea, "boundary pole at an arc endpoint");

    std::set<double> cuts;
    for (const auto* side : {&d.upper, &d.lower})
        for (const auto& a : *side) {
            cuts.insert(a.x_lo);
            cuts.insert(a.x_hi);
        }
    double area = 0.0;
    auto it = cuts.begin();
    double prev = *it++;
    for (; it != cuts.end(); prev = *it++) {
        const double u = prev, v = *it;
        const double xmid = 0.5 * (u + v);
        const auto& up = arc_at(d.upper, xmid);
        const auto& lo = arc_at(d.lower, xmid);
        if (!up.delta.is_inf())
            area += std::log(std::abs(v - up.delta.value)) - std::log(std::abs(u - up.delta.value));
        if (!lo.delta.is_inf())
            area -= std::log(std::abs(v - lo.delta.value)) - std::log(std::abs(u - lo.delta.value));
    }
    return area;
}

void write_arcs(std::ostream& os, const Domain& d) {
    const auto dump = [&](const char* label, const std::vector<HyperbolaArc>& arcs) {
        os << "# " << label << "\n";
        for (const auto& a : arcs) {
            os << fmt17(a.x_lo) << "," << fmt17(a.x_hi) << ","
               << (a.delta.is_inf() ? std::string("inf") : fmt17(a.delta.value)) << "\n";
        }
    };
    os << "# domain " << d.name << " q=" << d.q << "\n";
    dump("upper", d.upper);
    dump("lower", d.lower);
}

double rho(const GroupContext& ctx) { return 1.0 / (std::sin(ctx.theta) * (ctx.lambda + 1.0)); }

}  // namespace cfx
