#include "rotsync/random_dynamics.hpp"

#include "rotsync/errors.hpp"
#include "rotsync/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rotsync {

SyncReport spread_of(const std::vector<double>& points)
{
    std::size_t m = points.size();
    if (m < 3)
        throw std::invalid_argument("spread needs at least three points");
    std::vector<double> p(points.size());
    std::transform(points.begin(), points.end(), p.begin(), wrap01);
    std::sort(p.begin(), p.end());
    SyncReport report;
    report.spread = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        // Arc from p[i] covering p[i], ..., p[i + m - 2] (cyclically).
        double start = p[i];
        double end = p[(i + m - 2) % m];
        double len = wrap01(end - start);
        if (len < report.spread) {
            report.spread = len;
            report.cluster_center = CirclePoint(start + 0.5 * len);
        }
    }
    return report;
}

SyncReport sync_statistic(const GeneratorSystem& system, const Word& w, int m)
{
    if (m < 3)
        throw std::invalid_argument("sync_statistic needs m >= 3");
    Homeo f = compose(system, w);
    std::vector<double> images(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        images[static_cast<std::size_t>(i)] = f.lift(static_cast<double>(i) / m);
    SyncReport report = spread_of(images);
    report.n = w.size();
    return report;
}

CirclePoint estimate_repeller(const Homeo& f, int depth)
{
    if (depth < 1 || depth > 40)
        throw std::invalid_argument("repeller depth must be in [1, 40]");
    constexpr double tie = 1e-9;
    std::uint64_t chosen = 0; // index of the arc at the current level
    double chosen_len = 1.0;  // image length of that arc
    for (int level = 1; level <= depth; ++level) {
        double width = std::ldexp(1.0, -level);
        std::uint64_t left = 2 * chosen;
        double lo = static_cast<double>(left) * width;
        double l0 = image_length(f, lo, lo + width);
        double l1 = image_length(f, lo + width, lo + 2.0 * width);
        std::uint64_t best = l1 > l0 ? left + 1 : left;
        double best_len = std::max(l0, l1);
        if (best_len >= 1.0 - chosen_len - tie) {
            // Images of disjoint arcs have total length 1, so no arc outside
            // the parent can be longer than this child.
            chosen = best;
            chosen_len = best_len;
            continue;
        }
        // Full scan over the level.
        std::uint64_t count = std::uint64_t{1} << level;
        double global = 0.0;
        std::vector<double> lengths(count);
        double previous = f.lift(0.0);
        for (std::uint64_t j = 0; j < count; ++j) {
            double next = f.lift(static_cast<double>(j + 1) * width);
            lengths[j] = next - previous;
            previous = next;
            global = std::max(global, lengths[j]);
        }
        // Near-maximal arcs must sit inside the parent or next to the chosen
        // child (a repeller on a dyadic point splits its mass between two arcs).
        std::uint64_t pick = lengths[left + 1] > lengths[left] ? left + 1 : left;
        bool nested = lengths[pick] >= global - tie;
        for (std::uint64_t j = 0; nested && j < count; ++j) {
            if (lengths[j] < global - tie || j == left || j == left + 1)
                continue;
            nested = (j + 1) % count == pick || (pick + 1) % count == j;
        }
        if (nested) {
            chosen = pick;
            chosen_len = lengths[pick];
            continue;
        }
        throw NestingViolation("dyadic arcs stop nesting at level " + std::to_string(level));
    }
    return CirclePoint((static_cast<double>(chosen) + 0.5) * std::ldexp(1.0, -depth));
}

CirclePoint estimate_repeller(const GeneratorSystem& system, const Word& w, int depth)
{
    return estimate_repeller(compose(system, w), depth);
}

namespace {

double walk(const GeneratorSystem& system, const LetterSampler& sampler, Direction direction, double start,
            std::size_t steps, std::uint64_t seed)
{
    Rng rng(seed);
    double x = wrap01(start);
    for (std::size_t t = 0; t < steps; ++t) {
        const Homeo& g = system.generator(sampler(rng));
        x = wrap01(direction == Direction::Forward ? g.lift(x) : g.inverse_lift(x));
    }
    return x;
}

} // namespace

EmpiricalMeasure estimate_stationary(const GeneratorSystem& system, Direction direction, std::size_t n_burn,
                                     std::size_t samples, std::uint64_t seed, Execution execution, double start)
{
    if (samples == 0 || n_burn == 0)
        throw std::invalid_argument("estimate_stationary needs n_burn >= 1 and M >= 1");
    LetterSampler sampler(system.nu());
    std::vector<double> out(samples);
    auto n = static_cast<std::ptrdiff_t>(samples);
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t s = 0; s < n; ++s)
            out[static_cast<std::size_t>(s)] =
                walk(system, sampler, direction, start, n_burn, derive_seed(seed, static_cast<std::uint64_t>(s)));
    } else {
        for (std::ptrdiff_t s = 0; s < n; ++s)
            out[static_cast<std::size_t>(s)] =
                walk(system, sampler, direction, start, n_burn, derive_seed(seed, static_cast<std::uint64_t>(s)));
    }
    return EmpiricalMeasure(std::move(out));
}

EmpiricalMeasure birkhoff_orbit(const GeneratorSystem& system, std::size_t n_burn, std::size_t samples,
                                std::uint64_t seed)
{
    if (samples == 0)
        throw std::invalid_argument("birkhoff_orbit needs M >= 1");
    LetterSampler sampler(system.nu());
    Rng rng(seed);
    double x = 0.0;
    for (std::size_t t = 0; t < n_burn; ++t)
        x = wrap01(system.generator(sampler(rng)).lift(x));
    std::vector<double> out(samples);
    for (auto& v : out) {
        x = wrap01(system.generator(sampler(rng)).lift(x));
        v = x;
    }
    return EmpiricalMeasure(std::move(out));
}

namespace {

constexpr std::size_t kTransferChunks = 64;

// Pushes source bins [first, last) into acc.
void transfer_range(const GeneratorSystem& system, const Histogram& h, std::size_t first, std::size_t last,
                    std::vector<double>& acc)
{
    std::size_t bins = h.bins();
    double nb = static_cast<double>(bins);
    for (std::size_t i = 0; i < system.size(); ++i) {
        const Homeo& f = system.generator(i);
        double weight = system.nu()[i];
        double lo = f.lift(static_cast<double>(first) / nb);
        for (std::size_t b = first; b < last; ++b) {
            double hi = f.lift(static_cast<double>(b + 1) / nb);
            double mass = h[b] * weight;
            if (mass > 0.0) {
                double shift = std::floor(lo);
                double a = (lo - shift) * nb; // image in bin units
                double z = (hi - shift) * nb;
                double len = z - a;
                auto j = static_cast<std::size_t>(std::floor(a));
                if (!(len > 0.0)) {
                    acc[j % bins] += mass;
                } else {
                    // Walk the bins covered by [a, z]; the last one takes the remainder
                    // so that the source mass is conserved exactly up to rounding.
                    double placed = 0.0;
                    double left = a;
                    while (true) {
                        double right = static_cast<double>(j + 1);
                        if (right >= z) {
                            acc[j % bins] += mass - placed;
                            break;
                        }
                        double part = mass * (right - left) / len;
                        acc[j % bins] += part;
                        placed += part;
                        left = right;
                        ++j;
                    }
                }
            }
            lo = hi;
        }
    }
}

} // namespace

Histogram transfer_apply(const GeneratorSystem& system, const Histogram& h, Execution execution)
{
    std::size_t bins = h.bins();
    std::vector<double> out(bins, 0.0);
    if (execution == Execution::Serial) {
        transfer_range(system, h, 0, bins, out);
        return Histogram(std::move(out));
    }
    // Fixed chunking, independent of the thread count, then an ordered sum.
    std::size_t chunks = std::min(kTransferChunks, bins);
    std::vector<std::vector<double>> partial(chunks, std::vector<double>(bins, 0.0));
    auto nc = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < nc; ++c) {
        auto cu = static_cast<std::size_t>(c);
        transfer_range(system, h, cu * bins / chunks, (cu + 1) * bins / chunks, partial[cu]);
    }
    for (std::size_t c = 0; c < chunks; ++c)
        for (std::size_t b = 0; b < bins; ++b)
            out[b] += partial[c][b];
    return Histogram(std::move(out));
}

double martingale_residual(const GeneratorSystem& system, const EmpiricalMeasure& mu_minus, CirclePoint x,
                           CirclePoint y)
{
    double expected = 0.0;
    for (std::size_t i = 0; i < system.size(); ++i) {
        const Homeo& f = system.generator(i);
        expected += system.nu()[i] * mu_minus.arc_mass(f(x), f(y));
    }
    return std::abs(expected - mu_minus.arc_mass(x, y));
}

double stationarity_defect(const GeneratorSystem& system, const EmpiricalMeasure& mu)
{
    // The one-step average is a mixture; compare distribution functions on the
    // union of all atoms.
    const auto& s = mu.samples();
    std::size_t k = system.size();
    std::vector<std::vector<double>> images(k);
    for (std::size_t i = 0; i < k; ++i) {
        images[i].reserve(s.size());
        for (double x : s)
            images[i].push_back(wrap01(system.generator(i).lift(x)));
        std::sort(images[i].begin(), images[i].end());
    }
    std::vector<double> points(s);
    for (const auto& im : images)
        points.insert(points.end(), im.begin(), im.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    double n = static_cast<double>(s.size());
    double d = 0.0;
    for (double t : points) {
        double own = static_cast<double>(std::upper_bound(s.begin(), s.end(), t) - s.begin()) / n;
        double avg = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            avg += system.nu()[i] *
                   static_cast<double>(std::upper_bound(images[i].begin(), images[i].end(), t) - images[i].begin()) / n;
        d = std::max(d, std::abs(own - avg));
    }
    return d;
}

} // namespace rotsync
