#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cfx/planar.hpp"

namespace cfx {

/// One boundary piece y = 1/(x - delta) over [x_lo, x_hi); delta = inf encodes y = 0.
struct HyperbolaArc {
    double x_lo = 0.0;
    double x_hi = 0.0;
    ExtendedReal delta;

    double eval(double x) const { return delta.is_inf() ? 0.0 : 1.0 / (x - delta.value); }
};

enum class DomainId { ERosenSym, OmegaAdd, OmegaVeech, OmegaR, OmegaBar };

const char* domain_name(DomainId id);
DomainId domain_from_name(const std::string& s);

/// A region between two piecewise-hyperbola boundaries fibering over [x_lo, x_hi].
struct Domain {
    std::string name;
    DomainId id = DomainId::ERosenSym;
    int q = 0;
    double x_lo = 0.0, x_hi = 0.0;
    std::vector<HyperbolaArc> upper, lower;

    double upper_at(double x) const;
    double lower_at(double x) const;
};

/// Builds the named natural-extension domain; arc lists follow the closed-form
/// boundary descriptions and are validated (exact tiling, ordering, poles
/// outside arcs). OmegaBar requires q >= 8.
Domain build_domain(const GroupContext& ctx, DomainId which);

enum class Membership { Inside, Outside, Boundary };

Membership contains(const Domain& d, PlanarPoint p, double tol = kDefaultTol);

/// Closed-form area; InfiniteArea for OmegaAdd, NoClosedForm for E.
double area_closed_form(const GroupContext& ctx, DomainId which);

/// Exact log-difference integration of the arc lists; InfiniteArea when a pole
/// sits on an arc endpoint.
double area_analytic(const Domain& d);

/// Arc-list text format: '# upper' / '# lower' sections, one arc per line
/// "x_lo,x_hi,delta" with 17 significant digits ('inf' for the y = 0 curve).
void write_arcs(std::ostream& os, const Domain& d);

/// Diagnostic constant 1/((sin pi/q)(lambda+1)); positive, and U.(Q.1) = mu/2 - rho.
double rho(const GroupContext& ctx);

/// The domain on which the map's planar extension is bijective.
DomainId invariant_domain(MapId id);

}  // namespace cfx
