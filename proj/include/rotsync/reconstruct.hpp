#pragma once

#include "rotsync/classifier.hpp"
#include "rotsync/errors.hpp"
#include "rotsync/measure.hpp"
#include "rotsync/random_dynamics.hpp"
#include "rotsync/rotnum.hpp"
#include "rotsync/system.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rotsync {

/// Two actions of the same free semigroup: equal generator counts and weights.
class ActionPair {
public:
    /// Throws std::invalid_argument when the counts or weights differ.
    ActionPair(GeneratorSystem first, GeneratorSystem second);

    const GeneratorSystem& first() const { return actions_[0]; }
    const GeneratorSystem& second() const { return actions_[1]; }
    const GeneratorSystem& operator[](std::size_t j) const { return actions_[j]; }
    std::size_t size() const { return actions_[0].size(); }
    const std::vector<double>& nu() const { return actions_[0].nu(); }

private:
    std::array<GeneratorSystem, 2> actions_;
};

struct ReconstructParams {
    double eps_a = 1e-3;
    double eps_r = 1e-3;
    /// Base word lengths tried in turn; geometric from 50, capped at 2000.
    std::vector<std::size_t> schedule = {50, 75, 112, 168, 252, 378, 567, 850, 1275, 2000};
    /// Powers base^1 .. base^powers form the family.
    std::size_t powers = 4;
    int contraction_grid = 64;
    int repeller_depth = 20;
    std::size_t separating_max_length = 6;

    std::size_t grid = 512;          // conjugacy table size G
    std::size_t m_good = 64;         // good words for the translation-number route
    std::size_t good_length = 30;
    std::size_t good_budget = 4000;  // candidate words scanned
    std::size_t delta_samples = 2000;
    std::size_t delta_length = 100;
    double max_degenerate_fraction = 0.2;

    std::size_t mu_samples = 100000;
    std::size_t mu_burn = 1000;

    std::size_t spot_words = 200;
    std::size_t spot_max_length = 8;

    Execution execution = Execution::Parallel;
};

/// Powers of one base word, contracting for both actions, with per-action
/// attractor a and repeller r.
struct MSFamily {
    Word base;
    Word separating;                       // appended after the sampled prefix, possibly empty
    std::size_t prefix_length = 0;
    std::vector<Word> words;               // base^1, ..., base^powers
    std::vector<std::size_t> checkpoints;  // indices into words
    std::array<CirclePoint, 2> a;
    std::array<CirclePoint, 2> r;
    /// One row per tried prefix length: {length, spread action 1, spread action 2}.
    std::vector<std::array<double, 3>> contraction_log;
    /// Cluster centers of base^N per action, N = 1 .. powers.
    std::array<std::vector<double>, 2> centers;
};

MSFamily find_ms_family(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params = {});

/// u and every one-letter extension u + i keep the moved attractor
/// 10 eps_a away from a and r in both actions.
bool is_good(const ActionPair& pair, const MSFamily& ms, const Word& u, const ReconstructParams& params = {});

struct ArcMassEstimate {
    /// Mean of delta over the samples: mu_-([g(a), a]) when a, r, g(a) are in
    /// positive order, -mu_-([a, g(a)]) when a, g(a), r are.
    double value = 0.0;
    std::size_t samples = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    /// Samples with two of a, r, g(a), h^-1(r) within eps_a (diagnostic only).
    std::size_t degenerate = 0;

    /// mu_-([a, g(a)]) recovered from the signed mean.
    double position() const { return value > 0.0 ? 1.0 - value : -value; }
};

/// Evaluates delta for one action and a fixed family; shared across words.
class ArcMassEstimator {
public:
    ArcMassEstimator(const GeneratorSystem& system, const MSFamily& ms, std::size_t action,
                     const ReconstructParams& params = {});

    /// Throws PreconditionViolation unless g(a) is 10 eps_a away from a and r;
    /// throws DegenerateSampling when too many samples are degenerate.
    ArcMassEstimate operator()(const Word& g_word, std::uint64_t seed) const;

private:
    GeneratorSystem system_;
    CirclePoint a_;
    CirclePoint r_;
    DeltaEvaluator evaluator_;
    ReconstructParams params_;
};

ArcMassEstimate arc_mass_via_delta(const GeneratorSystem& system, const MSFamily& ms, std::size_t action,
                                   const Word& g_word, std::uint64_t seed, const ReconstructParams& params = {});

/// Degree-one monotone table x_s = anchor_from + s / G  ->  psi(x_s), with
/// psi(anchor_from) = anchor_to.
struct ConjugacyTable {
    MapTable table;
    CirclePoint anchor_from;
    CirclePoint anchor_to;

    double operator()(double x) const { return table(x); }
    bool monotone_degree_one() const { return table.strictly_increasing(); }
};

/// Table through an arbitrary lifted map.
template <class F>
ConjugacyTable tabulate(F&& psi, CirclePoint from, std::size_t grid)
{
    ConjugacyTable t;
    t.anchor_from = from;
    for (std::size_t s = 0; s < grid; ++s) {
        double x = from.value() + static_cast<double>(s) / static_cast<double>(grid);
        t.table.x.push_back(x);
        t.table.y.push_back(psi(x));
    }
    t.anchor_to = CirclePoint(t.table.y.front());
    return t;
}

/// max over generators i and grid points x of d(psi(f_i^1(x)), f_i^2(psi(x))).
double conjugacy_residual(const ConjugacyTable& psi, const ActionPair& pair, std::size_t grid_size);

/// Compares translation numbers of the pair on random words (every single
/// letter first); throws TranslationMismatch on the first disagreement.
void check_translation_numbers(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params = {});

struct RouteBStats {
    std::vector<Word> words;
    std::array<std::vector<double>, 2> positions;        // from delta means
    std::array<std::vector<double>, 2> direct_positions; // from the Route A measures
    std::array<std::vector<double>, 2> images;           // rho^j(u)(a^j)
    std::size_t excluded_words = 0;                      // candidates that failed is_good
    std::size_t degenerate_samples = 0;
    std::size_t delta_samples = 0;
    double tolerance = 0.0;                              // 2 * 3 / sqrt(M)
    double agreement_fraction = 0.0;                     // |s^1 - s^2| <= tolerance
    double max_difference = 0.0;
    std::array<double, 2> concordance{};                 // pairwise order agreement with Route A
};

struct Reconstruction {
    Verdict type = Verdict::Synchronizing;
    int l = 0;
    ConjugacyTable psi;
    MSFamily family;
    RouteBStats route_b;
    double residual = 0.0;
};

/// Type (2): Route A (CDF transport anchored at the attractors) plus the
/// translation-number cross-check of Route B.
Reconstruction build_conjugacy(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params = {},
                               bool route_b = true);

/// Type (1): psi = L_2^-1 o L_1 for the linearizers of both actions.
Reconstruction build_conjugacy_invariant(const ActionPair& pair, std::uint64_t seed,
                                         const ReconstructParams& params = {});

/// Type (3): quotient by x -> x + 1/l, reconstruct there, lift back.
Reconstruction build_conjugacy_factor(const ActionPair& pair, int l, std::uint64_t seed,
                                      const ReconstructParams& params = {}, bool route_b = true);

/// Classifies the first action and dispatches on its type.
Reconstruction reconstruct(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params = {},
                           std::size_t classify_N = 200, std::size_t classify_M = 10000, bool route_b = true);

/// Fraction of index pairs ordered the same way by both sequences.
double pairwise_concordance(const std::vector<double>& a, const std::vector<double>& b);

} // namespace rotsync
