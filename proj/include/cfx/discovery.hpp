#pragma once

#include <cstdint>
#include <iosfwd>

#include "cfx/domains.hpp"
#include "cfx/rng.hpp"

namespace cfx {

struct CloudBin {
    double x_lo = 0.0, x_hi = 0.0;
    std::size_t count = 0;
    PlanarPoint min_pt{0.0, 0.0};  // point realizing the smallest y in the bin
    PlanarPoint max_pt{0.0, 0.0};  // point realizing the largest y
};

/// Orbit cloud of a planar extension, with per-bin y-extremes for boundary fitting.
struct CloudReport {
    MapId map = MapId::RosenSym;
    int q = 0;
    std::size_t requested = 0;
    std::size_t burn_in = 0;
    std::size_t escaped = 0;  // orbit aborts (each triggers a perturbed restart)
    std::uint64_t seed = 0;
    std::vector<PlanarPoint> points;  // points after burn-in
    std::vector<CloudBin> bins;       // uniformly tile the map's x-interval
    std::size_t underfilled_bins = 0;
    bool sufficient = false;
};

/// Iterates the planar orbit from p0 for n steps (restarting with a tiny seeded
/// perturbation when a step error ends the orbit), discards `burn_in` points,
/// and bins y-extremes over `bins` uniform x-bins.
CloudReport simulate_cloud(const GroupContext& ctx, MapId id, PlanarPoint p0, std::size_t n,
                           std::size_t bins, std::size_t burn_in = 100, std::uint64_t seed = 0);

/// Bins an externally produced point list (e.g. parsed from orbit CSV).
CloudReport bin_points(const GroupContext& ctx, MapId id, std::vector<PlanarPoint> points,
                       std::size_t bins);

enum class Side { Upper, Lower };

struct BoundaryFit {
    double delta_hat = 0.0;
    double max_residual = 0.0;  // worst |y - 1/(x - delta_hat)| over the used extremes
    std::size_t bins_used = 0;
};

/// Least-squares fit of delta in y = 1/(x - delta) over bin extremes inside
/// [x_lo, x_hi] (regression of 1/y against x with unit slope), with a uniform
/// order-statistic endpoint correction. Needs >= 10 populated bins.
BoundaryFit fit_boundary_delta(const CloudReport& report, double x_lo, double x_hi, Side side);

/// Uniform rejection sampler inside a domain (per-x-bin bounding boxes).
/// Unbounded fibers (the additive domain) are clipped to |y| <= y_clip.
class DomainSampler {
  public:
    explicit DomainSampler(const Domain& d, std::size_t bins = 256, double y_clip = 1e3);
    PlanarPoint sample(SplitMix64& rng) const;

  private:
    const Domain& domain_;
    struct Box {
        double x_lo, x_hi, y_lo, y_hi;
    };
    std::vector<Box> boxes_;
    std::vector<double> cumulative_;  // cumulative box areas for weighted choice
};

struct InvarianceReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t forward_tested = 0;
    std::size_t forward_escapes = 0;
    std::size_t forward_shell = 0;  // step errors / boundary-shell images
    std::size_t backward_tested = 0;
    std::size_t backward_escapes = 0;  // no branch inverse keeps the point inside
    std::size_t backward_shell = 0;
    std::size_t collisions = 0;  // forward images from distinct cylinders colliding

    double forward_escape_fraction() const {
        return forward_tested ? static_cast<double>(forward_escapes) / forward_tested : 0.0;
    }
    double backward_escape_fraction() const {
        return backward_tested ? static_cast<double>(backward_escapes) / backward_tested : 0.0;
    }
};

/// Samples uniform points of d and reports forward escapes, backward escapes
/// (over branch inverses whose image x lands in the branch cylinder), and an
/// injectivity collision scan of forward images.
InvarianceReport verify_invariance(const GroupContext& ctx, const Domain& d, MapId id,
                                   std::size_t samples, double tol = kDefaultTol,
                                   std::uint64_t seed = 1);

/// CSV export: header "step,x,y", LF newlines, 17 significant digits.
void write_cloud_csv(std::ostream& os, const CloudReport& report);

}  // namespace cfx
