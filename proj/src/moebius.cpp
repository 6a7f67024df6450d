#include "cfx/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace cfx {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parameter: return "parameter error";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::ZeroOrbit: return "zero orbit";
        case ErrorKind::DiscontinuityPoint: return "discontinuity point";
        case ErrorKind::Unbounded: return "unbounded";
        case ErrorKind::FixedPoint: return "fixed point";
        case ErrorKind::NoReturn: return "no return";
        case ErrorKind::InfiniteArea: return "infinite area";
        case ErrorKind::NoClosedForm: return "no closed form";
        case ErrorKind::UnsupportedQ: return "unsupported q";
        case ErrorKind::InsufficientData: return "insufficient data";
        case ErrorKind::OrbitTerminated: return "orbit terminated";
        case ErrorKind::EmptyFiber: return "empty fiber";
    }
    return "unknown error";
}

bool extended_equal(ExtendedReal a, ExtendedReal b, double tol) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return std::abs(a.value - b.value) <= tol;
}

namespace {

// Scale-relative zero test for the bottom row of a normalized matrix.
bool structural_zero(double v, double scale) { return std::abs(v) <= kExactTol * std::max(1.0, scale); }

}  // namespace

MoebiusMap::MoebiusMap(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
    const double dt = det();
    const double scale = max_entry();
    if (!(dt > kExactTol * scale * scale))
        fail(ErrorKind::Parameter, "matrix determinant must be positive");
    const double s = std::sqrt(dt);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
}

MoebiusMap MoebiusMap::reflecting(double a_, double b_, double c_, double d_) {
    MoebiusMap m;
    const double dt = a_ * d_ - b_ * c_;
    const double scale = std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
    if (std::abs(dt) <= kExactTol * scale * scale)
        fail(ErrorKind::Parameter, "matrix is singular");
    const double s = std::sqrt(std::abs(dt));
    m.a = a_ / s;
    m.b = b_ / s;
    m.c = c_ / s;
    m.d = d_ / s;
    return m;
}

MoebiusMap MoebiusMap::rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return MoebiusMap(c, -s, s, c);
}

MoebiusMap MoebiusMap::inverse() const {
    MoebiusMap m;
    const double dt = det();  // +1 or -1 up to rounding
    m.a = d / dt;
    m.b = -b / dt;
    m.c = -c / dt;
    m.d = a / dt;
    return m;
}

double MoebiusMap::max_entry() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

MoebiusMap MoebiusMap::canonical() const {
    MoebiusMap m = *this;
    const double czero = kDefaultTol * std::max(1.0, max_entry());
    const bool flip = std::abs(c) <= czero ? d < 0.0 : c < 0.0;
    if (flip) {
        m.a = -m.a;
        m.b = -m.b;
        m.c = -m.c;
        m.d = -m.d;
    }
    return m;
}

MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
    MoebiusMap r;
    r.a = m.a * n.a + m.b * n.c;
    r.b = m.a * n.b + m.b * n.d;
    r.c = m.c * n.a + m.d * n.c;
    r.d = m.c * n.b + m.d * n.d;
    // Guard against determinant drift over long products.
    const double dt = r.det();
    const double s = std::sqrt(std::abs(dt));
    r.a /= s;
    r.b /= s;
    r.c /= s;
    r.d /= s;
    return r;
}

ExtendedReal act(const MoebiusMap& m, ExtendedReal x) {
    if (x.inf) {
        if (structural_zero(m.c, m.max_entry())) return ExtendedReal::infinity();
        return ExtendedReal(m.a / m.c);
    }
    const double num = m.a * x.value + m.b;
    const double den = m.c * x.value + m.d;
    const double mag = std::abs(m.c * x.value) + std::abs(m.d);
    if (mag == 0.0 || std::abs(den) <= kExactTol * mag) return ExtendedReal::infinity();
    return ExtendedReal(num / den);
}

double tau(const MoebiusMap& m, double x) {
    const double den = m.c * x + m.d;
    const double mag = std::abs(m.c * x) + std::abs(m.d);
    if (mag == 0.0 || std::abs(den) <= kExactTol * mag)
        fail(ErrorKind::Pole, "tau undefined: cx + d vanishes");
    return -2.0 * std::log(std::abs(den));
}

bool projective_equal(const MoebiusMap& m, const MoebiusMap& n, double tol) {
    // Entrywise agreement of representatives, for either choice of sign; this
    // matches canonical-form equality and stays stable when c sits in the
    // sign-normalization tolerance zone.
    const bool same = std::abs(m.a - n.a) <= tol && std::abs(m.b - n.b) <= tol &&
                      std::abs(m.c - n.c) <= tol && std::abs(m.d - n.d) <= tol;
    if (same) return true;
    return std::abs(m.a + n.a) <= tol && std::abs(m.b + n.b) <= tol &&
           std::abs(m.c + n.c) <= tol && std::abs(m.d + n.d) <= tol;
}

MoebiusMap mpow(const MoebiusMap& m, long long k) {
    MoebiusMap base = k < 0 ? m.inverse() : m;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1ull
                                 : static_cast<unsigned long long>(k);
    MoebiusMap r;
    while (e > 0) {
        if (e & 1ull) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

double parabolic_increment(const MoebiusMap& g, double fixed_point) {
    const MoebiusMap f = MoebiusMap::translation(fixed_point);
    MoebiusMap h = f.inverse() * g * f;
    if (h.a < 0.0) {  // pick the unipotent representative
        h.a = -h.a;
        h.b = -h.b;
        h.c = -h.c;
        h.d = -h.d;
    }
    if (std::abs(h.b) > kDefaultTol || std::abs(h.a - 1.0) > kDefaultTol)
        fail(ErrorKind::Parameter, "map is not parabolic at the given point");
    return h.c;
}

MoebiusMap parabolic_power(const MoebiusMap& g, double fixed_point, long long k) {
    const double inc = parabolic_increment(g, fixed_point);
    const MoebiusMap f = MoebiusMap::translation(fixed_point);
    const MoebiusMap dk(1.0, 0.0, static_cast<double>(k) * inc, 1.0);
    return f * dk * f.inverse();
}

double parabolic_apply(double fixed_point, double increment, long long k, double x) {
    const double w = x - fixed_point;
    return fixed_point + w / (1.0 + static_cast<double>(k) * increment * w);
}

std::ostream& operator<<(std::ostream& os, const MoebiusMap& m) {
    return os << "[" << m.a << " " << m.b << "; " << m.c << " " << m.d << "]";
}

}  // namespace cfx
