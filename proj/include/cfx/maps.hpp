#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "cfx/context.hpp"

namespace cfx {

enum class MapId {
    RosenOriginal,       // f
    RosenSym,            // h
    ConjRosen,           // k
    DoubledRosen,        // r = k^2
    VeechAdditive,       // a
    VeechMultiplicative  // v
};

const char* map_letter(MapId id);
MapId map_from_letter(const std::string& s);

struct RosenOriginalDigit {
    int eps;       // sign of x
    long long b;   // floor(1/(|x| lambda) + 1/2)
};
struct RosenSymDigit {
    long long a;   // floor(-1/(x lambda) + 1/2), never 0
};
struct ConjRosenDigit {
    int side;      // +1 applied U^-1, -1 applied U
    long long p;   // power of the translation P
};
struct VeechAddDigit {
    long long k;   // nonzero translation power
    int j;         // rotation exponent in 1..n-1
};
enum class VeechRegime { Left, Central, Right };
struct VeechMultDigit {
    VeechRegime regime;
    long long ell = 0;    // parabolic power, >= 1 (Left/Right only)
    VeechAddDigit kj{0, 0};  // Central only
};

using Digit = std::variant<RosenOriginalDigit, RosenSymDigit, ConjRosenDigit, VeechAddDigit, VeechMultDigit>;

std::string digit_string(const Digit& d);

/// One application of an interval map.
struct StepResult {
    double image = 0.0;
    MoebiusMap matrix;
    Digit digit;
    double tau = 0.0;
    /// cx + d at the input for the stored representative, evaluated in the
    /// best-conditioned form available (the accelerated branches cancel badly
    /// through the raw entries).
    double denom = 1.0;
};

StepResult rosen_original_step(const GroupContext& ctx, double x, double tol = kDefaultTol);
StepResult rosen_sym_step(const GroupContext& ctx, double x, double tol = kDefaultTol);
StepResult conj_rosen_step(const GroupContext& ctx, double x, double tol = kDefaultTol);
StepResult doubled_rosen_step(const GroupContext& ctx, double x, double tol = kDefaultTol);
StepResult veech_additive_step(const GroupContext& ctx, double x, double tol = kDefaultTol);
StepResult veech_mult_step(const GroupContext& ctx, double x, double tol = kDefaultTol);

StepResult step(const GroupContext& ctx, MapId id, double x, double tol = kDefaultTol);

/// Interval of definition of the map (J for the Rosen pair, I otherwise).
Interval map_interval(const GroupContext& ctx, MapId id);

struct OrbitResult {
    std::vector<StepResult> steps;
    bool terminated = false;  // stopped early on a step error
    ErrorKind cause = ErrorKind::Parameter;
    std::string message;
    double last_x = 0.0;
};

/// Up to n steps from x0; step errors end the orbit and are recorded, not thrown.
OrbitResult orbit(const GroupContext& ctx, MapId id, double x0, std::size_t n, double tol = kDefaultTol);

}  // namespace cfx
