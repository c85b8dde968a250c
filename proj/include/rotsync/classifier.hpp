#pragma once

#include "rotsync/errors.hpp"
#include "rotsync/measure.hpp"
#include "rotsync/random_dynamics.hpp"
#include "rotsync/system.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rotsync {

/// M rotation numbers (translation numbers mod 1, tolerance 1 / (4N)) of
/// random compositions whose length is uniform on {1, ..., N}. Fractions are
/// detected exactly up to max_denominator; finer ones fall back to the
/// approximation, which is well inside the atom window.
EmpiricalMeasure rotation_spectrum(const GeneratorSystem& system, std::size_t N, std::size_t M, std::uint64_t seed,
                                   Execution execution = Execution::Parallel, long max_denominator = 12);

enum class Verdict { InvariantMeasure, Synchronizing, Factorizable };

std::string to_string(Verdict v);

struct ClassifierThresholds {
    double atom_total = 0.85;    // mass on {j / l} for a finite factor
    double atom_share = 0.5;     // each atom at least atom_share / l
    double sync_mass = 0.85;     // mass at 0 for synchronization
    double ks_max = 0.05;        // distance to uniform for an invariant measure
    int l_max = 12;
};

struct AtomMass {
    long j = 0;
    long l = 1;
    double mass = 0.0;
};

struct ClassificationReport {
    Verdict verdict = Verdict::InvariantMeasure;
    int l = 0; // factor order for Factorizable, 0 otherwise
    double zero_fraction = 0.0;
    double ks_to_uniform = 0.0;
    std::vector<AtomMass> atom_masses;
    std::size_t N_used = 0;
    std::size_t M_used = 0;
};

/// No rule of the decision list fired; the partially filled report is kept.
class Inconclusive : public Error {
public:
    explicit Inconclusive(ClassificationReport report)
        : Error("spectrum matches none of the three cases"), report_(std::move(report))
    {
    }
    const ClassificationReport& report() const { return report_; }

private:
    ClassificationReport report_;
};

/// Decision rule applied to a spectrum. Atoms are the masses within 1 / (2N)
/// of j / l. In order: the smallest l <= l_max whose l atoms together hold
/// atom_total with every atom at least atom_share / l gives Factorizable(l);
/// else an atom at 0 of sync_mass gives Synchronizing; else a Kolmogorov
/// distance to uniform of at most ks_max gives InvariantMeasure. Throws
/// Inconclusive otherwise.
ClassificationReport classify_spectrum(const EmpiricalMeasure& spectrum, std::size_t N,
                                       const ClassifierThresholds& thresholds = {});

ClassificationReport classify(const GeneratorSystem& system, std::size_t N, std::size_t M, std::uint64_t seed,
                              const ClassifierThresholds& thresholds = {},
                              Execution execution = Execution::Parallel);

/// Lifted monotone map tabulated on a uniform grid: y[s] is the lift of x[s].
struct MapTable {
    std::vector<double> x;
    std::vector<double> y;

    /// Linear interpolation, extended with period one.
    double operator()(double t) const;
    /// Piecewise-linear homeomorphism through the table.
    Homeo to_homeo() const;
    bool strictly_increasing() const;
    /// y(x + 1) - y(x) computed from the table ends; 1 for a degree-one map.
    double degree() const;
};

/// x -> mu([0, x]) for a non-atomic estimate of a common invariant measure,
/// tabulated on `grid` points. Throws AtomDetected when a value carries three
/// or more samples.
MapTable linearizer(const GeneratorSystem& system, const EmpiricalMeasure& mu, std::size_t grid = 1024);

/// max - min of f(x) - x over a grid of [0, 1).
double displacement_oscillation(const Homeo& f, std::size_t grid = 1024);

/// Generators replaced by their l-fold covers x -> g(l x) / l.
GeneratorSystem lift_cover(const GeneratorSystem& system, int l);

/// Generators replaced by x -> l f(x / l); throws NotEquivariant unless every
/// generator commutes with x -> x + 1/l to 1e-9 on a 1024-point grid.
GeneratorSystem factor_quotient(const GeneratorSystem& system, int l);

} // namespace rotsync
