#pragma once

#include <vector>

#include "cfx/moebius.hpp"

namespace cfx {

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool contains_closed(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
    double width() const { return hi - lo; }
};

/// Everything derived from the single even parameter q = 2n >= 6: the group
/// constants, the generator matrices of the Hecke and Veech families, the
/// orbit of -lambda/2 and its boundary poles, and the additive partition points.
struct GroupContext {
    int q = 0;
    int n = 0;
    double theta = 0.0;   // pi/q
    double lambda = 0.0;  // 2 cos(pi/q)
    double mu = 0.0;      // 2 cot(pi/q)
    double alpha = 0.0;   // (mu/2)(3mu^2-4)/(5mu^2+4), left end of the right parabolic cylinder
    double gamma = 0.0;   // (mu/2)(5mu^2+4)/(3mu^2-4)
    double q1 = 0.0;      // Q.1 = (1+cos theta)/sin theta = cot(theta/2)

    MoebiusMap S;  // x -> x + lambda
    MoebiusMap T;  // x -> -1/x
    MoebiusMap U;  // rotation by pi/q
    MoebiusMap R;  // rotation by 2pi/q = U^2
    MoebiusMap P;  // x -> x + mu
    MoebiusMap Q;  // conjugation between the two families

    std::vector<double> phi;    // phi_0 .. phi_{n-1}, orbit of -lambda/2
    std::vector<double> delta;  // delta_0 .. delta_{n-2}, boundary poles over the phi partition
    std::vector<double> d;      // d_1 .. d_n   (d[j-1] = R^-j . mu/2)
    std::vector<double> c;      // c_1 .. c_{n-1} (c[j-1] = R^-j . inf)

    Interval J;  // [-lambda/2, lambda/2]
    Interval I;  // [-mu/2, mu/2]
};

/// Builds and internally validates the context. Rejects odd q and q < 6.
GroupContext make_context(int q);

}  // namespace cfx
