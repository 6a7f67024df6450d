#pragma once

#include <cstdint>

#include "cfx/discovery.hpp"

namespace cfx {

struct EntropyEstimate {
    double h = 0.0;
    double stderr_batch = 0.0;  // batch-means standard error
    std::size_t steps = 0;
    std::size_t restarts = 0;
};

/// Birkhoff average (1/n) sum tau_f(x_i) along the interval orbit; stderr via
/// batch means. Orbit deaths restart from a perturbed point and are counted;
/// OrbitTerminated if fewer than n/2 steps could be collected.
EntropyEstimate entropy_estimate(const GroupContext& ctx, MapId id, double x0, std::size_t n,
                                 std::size_t batches = 100);

struct ReturnRecord {
    PlanarPoint start{};
    bool r_ok = false, v_ok = false;
    PlanarPoint r_return{}, v_return{};
    std::size_t r_steps = 0, v_steps = 0;
    bool agree = false;
    bool shell = false;  // processing touched a tolerance shell; excluded from the rate
};

struct ComparisonReport {
    std::vector<ReturnRecord> records;
    std::size_t agreements = 0;
    std::size_t disagreements = 0;
    std::size_t shell_or_failed = 0;
    double tol = 0.0;
    /// Agreement rate over starts with both returns found and no shell contact.
    double agreement_rate() const {
        const std::size_t n = agreements + disagreements;
        return n ? static_cast<double>(agreements) / static_cast<double>(n) : 0.0;
    }
};

/// First returns to the intersection domain under the planar extensions of r
/// and v from each start, and whether the two return points coincide.
ComparisonReport compare_first_returns(const GroupContext& ctx,
                                       const std::vector<PlanarPoint>& starts,
                                       std::size_t max_iters = 100000, double tol = 1e-7);

/// Smallest m >= 1 with the m-th planar iterate of p back inside the
/// intersection domain. Throws NoReturn past max_iters.
std::size_t induction_index(const GroupContext& ctx, MapId id, PlanarPoint p,
                            std::size_t max_iters = 100000);
std::size_t induction_index(const GroupContext& ctx, MapId id, PlanarPoint p,
                            const Domain& omega_bar, std::size_t max_iters);

struct SlowReturnRow {
    int k = 0;
    double x_lo = 0.0, x_hi = 0.0;  // the sampled fiber interval
    std::size_t samples = 0;
    std::size_t min_index = 0;
    bool pass = false;  // min_index >= k
};

/// For k = 2..k_max, samples fibers of the intersection domain over the
/// interval (R^{q/4} P^-1)^k (I) and records the minimum induction index of
/// the multiplicative Veech extension. Requires q divisible by 4.
std::vector<SlowReturnRow> slow_return_experiment(const GroupContext& ctx, int k_max,
                                                  std::size_t samples_per_k = 100,
                                                  std::uint64_t seed = 2);

}  // namespace cfx
