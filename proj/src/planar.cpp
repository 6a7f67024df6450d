#include "cfx/planar.hpp"

#include <cmath>

namespace cfx {

PlanarPoint planar_apply(const MoebiusMap& m, PlanarPoint p) {
    if (m.det() < 0.0)
        fail(ErrorKind::Parameter, "planar extension is undefined for determinant -1 maps");
    const double den = m.c * p.x + m.d;
    const double mag = std::abs(m.c * p.x) + std::abs(m.d);
    if (mag == 0.0 || std::abs(den) <= kExactTol * mag)
        fail(ErrorKind::Pole, "planar image at a pole of the fractional linear action");
    const double nx = (m.a * p.x + m.b) / den;
    const double ny = den * den * p.y - m.c * den;
    return PlanarPoint{nx, ny};
}

BoundaryParam transport_delta(const MoebiusMap& m, BoundaryParam delta) { return act(m, delta); }

MoebiusMap to_transversal(PlanarPoint p) {
    MoebiusMap m;
    m.a = p.x;
    m.b = p.x * p.y - 1.0;
    m.c = 1.0;
    m.d = p.y;
    return m;
}

MoebiusMap geodesic_flow(double t) { return MoebiusMap(std::exp(t / 2.0), 0.0, 0.0, std::exp(-t / 2.0)); }

PlanarPoint planar_step(const GroupContext& ctx, MapId id, PlanarPoint p, double tol) {
    if (id == MapId::RosenOriginal)
        fail(ErrorKind::Parameter, "the original Rosen map has no planar extension here; use h");
    const StepResult s = step(ctx, id, p.x, tol);
    // Same formula as planar_apply, with the step's well-conditioned
    // denominator; the x-projection is exactly the interval orbit.
    return PlanarPoint{s.image, s.denom * s.denom * p.y - s.matrix.c * s.denom};
}

PlanarOrbitResult planar_orbit(const GroupContext& ctx, MapId id, PlanarPoint p0, std::size_t n,
                               double tol) {
    PlanarOrbitResult out;
    out.points.reserve(std::min<std::size_t>(n + 1, 1 << 20));
    out.points.push_back(p0);
    PlanarPoint p = p0;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            p = planar_step(ctx, id, p, tol);
            out.points.push_back(p);
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
