#pragma once

#include "rotsync/circle.hpp"
#include "rotsync/measure.hpp"
#include "rotsync/system.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rotsync {

/// Parallel kernels are bit-identical to their serial counterparts: every
/// sample owns a derived seed and reductions run in a fixed order.
enum class Execution { Serial, Parallel };

enum class Direction { Forward, Inverse };

struct SyncReport {
    std::size_t n = 0;
    CirclePoint cluster_center;
    double spread = 0.0;
};

/// Smallest arc holding all but one of the given points (m >= 3).
SyncReport spread_of(const std::vector<double>& points);

/// Pushes the m-point grid {i / m} through the composition along w.
SyncReport sync_statistic(const GeneratorSystem& system, const Word& w, int m);

/// Length of the image of the arc [lo, hi] (as a lifted interval) under h.
inline double image_length(const Homeo& h, double lo, double hi)
{
    return h.lift(hi) - h.lift(lo);
}

/// Dyadic arc whose image under the composition is longest, refined one level
/// at a time; returns the center of the level-`depth` arc. Throws
/// NestingViolation when the maximizing arcs stop nesting.
CirclePoint estimate_repeller(const Homeo& composition, int depth);
CirclePoint estimate_repeller(const GeneratorSystem& system, const Word& w, int depth);

/// M endpoints of random walks from `start`, each of n_burn steps (generators
/// for Forward, their inverses for Inverse). Sample s uses derive_seed(seed, s).
EmpiricalMeasure estimate_stationary(const GeneratorSystem& system, Direction direction, std::size_t n_burn,
                                     std::size_t samples, std::uint64_t seed,
                                     Execution execution = Execution::Parallel, double start = 0.0);

/// M consecutive points of one random orbit after n_burn steps.
EmpiricalMeasure birkhoff_orbit(const GeneratorSystem& system, std::size_t n_burn, std::size_t samples,
                                std::uint64_t seed);

/// One step of the averaged push-forward sum_i nu(i) (f_i)_* h; each bin's
/// mass is spread over the image arc in proportion to overlap.
Histogram transfer_apply(const GeneratorSystem& system, const Histogram& h,
                         Execution execution = Execution::Parallel);

/// |sum_i nu(i) mu([f_i(x), f_i(y)]) - mu([x, y])|.
double martingale_residual(const GeneratorSystem& system, const EmpiricalMeasure& mu_minus, CirclePoint x,
                           CirclePoint y);

/// Kolmogorov distance between mu and its one-step average sum_i nu(i) (f_i)_* mu.
double stationarity_defect(const GeneratorSystem& system, const EmpiricalMeasure& mu);

} // namespace rotsync
