#pragma once

#include "cfx/maps.hpp"

namespace cfx {

struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Pole of a boundary hyperbola y = 1/(x - delta); infinity encodes y = 0.
using BoundaryParam = ExtendedReal;

/// The area-preserving planar transformation (x,y) -> (M.x, (cx+d)^2 y - c(cx+d)).
/// Requires det +1; throws Pole when cx + d vanishes.
PlanarPoint planar_apply(const MoebiusMap& m, PlanarPoint p);

/// Boundary transport: the curve y = 1/(x - delta) maps to y = 1/(x - M.delta).
BoundaryParam transport_delta(const MoebiusMap& m, BoundaryParam delta);

/// The section matrix (x, xy-1; 1, y); determinant exactly 1.
MoebiusMap to_transversal(PlanarPoint p);

/// Geodesic-flow matrix diag(e^{t/2}, e^{-t/2}).
MoebiusMap geodesic_flow(double t);

struct PlanarOrbitResult {
    std::vector<PlanarPoint> points;  // includes the start
    bool terminated = false;
    ErrorKind cause = ErrorKind::Parameter;
    std::string message;
};

/// Iterates the planar extension of the interval map; the x-projection is the
/// interval orbit by construction. Stops early on step errors, recording why.
PlanarOrbitResult planar_orbit(const GroupContext& ctx, MapId id, PlanarPoint p0, std::size_t n,
                               double tol = kDefaultTol);

/// One planar step of the map's extension at p.
PlanarPoint planar_step(const GroupContext& ctx, MapId id, PlanarPoint p, double tol = kDefaultTol);

}  // namespace cfx
