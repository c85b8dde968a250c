#include "rotsync/classifier.hpp"

#include "rotsync/rng.hpp"
#include "rotsync/rotnum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotsync {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::InvariantMeasure:
        return "InvariantMeasure";
    case Verdict::Synchronizing:
        return "Synchronizing";
    case Verdict::Factorizable:
        return "Factorizable";
    }
    return "?";
}

namespace {

double spectrum_sample(const GeneratorSystem& system, const LetterSampler& sampler, std::size_t N, double tol,
                       const TranslationOptions& options, std::uint64_t seed)
{
    Rng rng(seed);
    std::size_t n = 1 + static_cast<std::size_t>(rng.below(N));
    Word w = sample_word(sampler, n, rng);
    return wrap01(translation_number(compose(system, w), tol, options).value);
}

} // namespace

EmpiricalMeasure rotation_spectrum(const GeneratorSystem& system, std::size_t N, std::size_t M, std::uint64_t seed,
                                   Execution execution, long max_denominator)
{
    if (N == 0 || M == 0)
        throw std::invalid_argument("rotation_spectrum needs N >= 1 and M >= 1");
    LetterSampler sampler(system.nu());
    double tol = 1.0 / (4.0 * static_cast<double>(N));
    TranslationOptions options;
    options.max_denominator = max_denominator;
    std::vector<double> out(M);
    auto m = static_cast<std::ptrdiff_t>(M);
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t s = 0; s < m; ++s)
            out[static_cast<std::size_t>(s)] =
                spectrum_sample(system, sampler, N, tol, options, derive_seed(seed, static_cast<std::uint64_t>(s)));
    } else {
        for (std::ptrdiff_t s = 0; s < m; ++s)
            out[static_cast<std::size_t>(s)] =
                spectrum_sample(system, sampler, N, tol, options, derive_seed(seed, static_cast<std::uint64_t>(s)));
    }
    return EmpiricalMeasure(std::move(out));
}

ClassificationReport classify_spectrum(const EmpiricalMeasure& spectrum, std::size_t N,
                                       const ClassifierThresholds& t)
{
    ClassificationReport report;
    report.N_used = N;
    report.M_used = spectrum.count();
    double window = 1.0 / (2.0 * static_cast<double>(N));
    report.zero_fraction = spectrum.mass_near(CirclePoint(0.0), window);
    report.ks_to_uniform = spectrum.ks_to_uniform();

    for (int l = 2; l <= t.l_max; ++l) {
        std::vector<AtomMass> atoms;
        double total = 0.0;
        bool each = true;
        for (long j = 0; j < l; ++j) {
            double m = spectrum.mass_near(CirclePoint(static_cast<double>(j) / l), window);
            atoms.push_back({j, l, m});
            total += m;
            each = each && m >= t.atom_share / l;
        }
        if (each && total >= t.atom_total) {
            report.verdict = Verdict::Factorizable;
            report.l = l;
            report.atom_masses = std::move(atoms);
            return report;
        }
    }
    if (report.zero_fraction >= t.sync_mass) {
        report.verdict = Verdict::Synchronizing;
        return report;
    }
    if (report.ks_to_uniform <= t.ks_max) {
        report.verdict = Verdict::InvariantMeasure;
        return report;
    }
    throw Inconclusive(report);
}

ClassificationReport classify(const GeneratorSystem& system, std::size_t N, std::size_t M, std::uint64_t seed,
                              const ClassifierThresholds& thresholds, Execution execution)
{
    return classify_spectrum(rotation_spectrum(system, N, M, seed, execution, thresholds.l_max), N, thresholds);
}

namespace {

double table_interpolate(const std::vector<double>& from, const std::vector<double>& to, double u)
{
    auto it = std::upper_bound(from.begin(), from.end(), u);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - from.begin() - 1, 0));
    i = std::min(i, from.size() - 2);
    double t = (u - from[i]) / (from[i + 1] - from[i]);
    return to[i] + t * (to[i + 1] - to[i]);
}

} // namespace

double MapTable::operator()(double t) const
{
    // Close the table with the periodic copy of its first node.
    double x0 = x.front();
    double whole = std::floor(t - x0);
    double u = t - whole;
    if (u >= x.back()) {
        double span = x0 + 1.0 - x.back();
        double s = (u - x.back()) / span;
        return y.back() + s * (y.front() + 1.0 - y.back()) + whole;
    }
    return table_interpolate(x, y, u) + whole;
}

Homeo MapTable::to_homeo() const
{
    std::vector<Breakpoint> bps;
    bps.reserve(x.size());
    for (std::size_t s = 0; s < x.size(); ++s)
        bps.push_back({wrap01(x[s]), wrap01(y[s])});
    std::sort(bps.begin(), bps.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.point < b.point; });
    return Homeo::piecewise_linear(bps);
}

bool MapTable::strictly_increasing() const
{
    for (std::size_t s = 1; s < y.size(); ++s)
        if (!(y[s] > y[s - 1]) || !(x[s] > x[s - 1]))
            return false;
    return y.back() < y.front() + 1.0;
}

double MapTable::degree() const
{
    return (*this)(x.front() + 1.0) - (*this)(x.front());
}

MapTable linearizer(const GeneratorSystem&, const EmpiricalMeasure& mu, std::size_t grid)
{
    if (grid < 2)
        throw std::invalid_argument("linearizer grid needs at least two points");
    if (mu.max_multiplicity() >= 3)
        throw AtomDetected("invariant measure estimate has an atom");
    InterpolatedCdf cdf(mu, CirclePoint(0.0));
    MapTable table;
    for (std::size_t s = 0; s < grid; ++s) {
        double x = static_cast<double>(s) / static_cast<double>(grid);
        table.x.push_back(x);
        table.y.push_back(cdf(x));
    }
    return table;
}

double displacement_oscillation(const Homeo& f, std::size_t grid)
{
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t s = 0; s < grid; ++s) {
        double x = static_cast<double>(s) / static_cast<double>(grid);
        double d = f.lift(x) - x;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return hi - lo;
}

GeneratorSystem lift_cover(const GeneratorSystem& system, int l)
{
    if (l < 2)
        throw std::invalid_argument("cover order must be at least 2");
    std::vector<Homeo> gens;
    for (const auto& g : system.generators())
        gens.push_back(g.cover(l));
    return GeneratorSystem(std::move(gens), system.nu());
}

GeneratorSystem factor_quotient(const GeneratorSystem& system, int l)
{
    if (l < 2)
        throw std::invalid_argument("quotient order must be at least 2");
    constexpr int grid = 1024;
    double step = 1.0 / l;
    for (std::size_t i = 0; i < system.size(); ++i) {
        const Homeo& f = system.generator(i);
        for (int s = 0; s < grid; ++s) {
            double x = static_cast<double>(s) / grid;
            if (!(std::abs(f.lift(x + step) - f.lift(x) - step) <= 1e-9))
                throw NotEquivariant("generator " + std::to_string(i) + " does not commute with x -> x + 1/" +
                                     std::to_string(l));
        }
    }
    std::vector<Homeo> gens;
    for (const auto& f : system.generators())
        gens.push_back(f.quotient(l));
    return GeneratorSystem(std::move(gens), system.nu());
}

} // namespace rotsync
