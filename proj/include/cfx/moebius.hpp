#pragma once

#include <cstdint>
#include <iosfwd>

#include "cfx/common.hpp"

namespace cfx {

/// A point of the extended real line R u {inf}.
struct ExtendedReal {
    double value = 0.0;
    bool inf = false;

    ExtendedReal() = default;
    ExtendedReal(double v) : value(v) {}  // NOLINT: implicit by design
    static ExtendedReal infinity() {
        ExtendedReal e;
        e.inf = true;
        return e;
    }
    bool is_inf() const { return inf; }
    /// Finite value; throws on the point at infinity.
    double finite() const {
        if (inf) fail(ErrorKind::Parameter, "expected a finite extended real");
        return value;
    }
};

bool extended_equal(ExtendedReal a, ExtendedReal b, double tol = kDefaultTol);

/// Real 2x2 matrix acting on the extended real line by x -> (ax+b)/(cx+d).
///
/// The default constructor path normalizes to determinant +1 and rejects
/// orientation-reversing input; `reflecting` admits determinant -1 (needed
/// only for the digit bookkeeping of the original Rosen map, which is kept
/// out of the planar machinery).
struct MoebiusMap {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    MoebiusMap() = default;
    MoebiusMap(double a_, double b_, double c_, double d_);
    static MoebiusMap reflecting(double a_, double b_, double c_, double d_);
    static MoebiusMap identity() { return MoebiusMap(); }
    static MoebiusMap translation(double t) { return MoebiusMap(1.0, t, 0.0, 1.0); }
    /// Counter-clockwise rotation by `angle`.
    static MoebiusMap rotation(double angle);

    double det() const { return a * d - b * c; }
    MoebiusMap inverse() const;
    /// Projective sign normal form: c > 0, or (c ~ 0 and d > 0).
    MoebiusMap canonical() const;
    double max_entry() const;
};

MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n);

/// Total Moebius action on the extended reals.
ExtendedReal act(const MoebiusMap& m, ExtendedReal x);

/// Return time -2 log |cx + d| of one map application.
double tau(const MoebiusMap& m, double x);

/// Entrywise equality of canonical representatives.
bool projective_equal(const MoebiusMap& m, const MoebiusMap& n, double tol = kDefaultTol);

/// Integer power by repeated squaring (k may be negative).
MoebiusMap mpow(const MoebiusMap& m, long long k);

/// k-th power of a parabolic map with the given fixed point, in closed form.
/// Exact for any k; `g` must be conjugate to a unipotent lower-triangular map.
MoebiusMap parabolic_power(const MoebiusMap& g, double fixed_point, long long k);

/// Increment of the unipotent conjugate of `g` at `fixed_point`, i.e. the c-entry
/// of T_fix^-1 g T_fix after sign normalization.
double parabolic_increment(const MoebiusMap& g, double fixed_point);

/// Scalar action of parabolic_power(g, fix, k) on x, evaluated in the
/// translated chart where it is well conditioned near the fixed point.
double parabolic_apply(double fixed_point, double increment, long long k, double x);

std::ostream& operator<<(std::ostream& os, const MoebiusMap& m);

}  // namespace cfx
