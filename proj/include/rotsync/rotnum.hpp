#pragma once

#include "rotsync/homeo.hpp"

#include <cstddef>
#include <vector>

namespace rotsync {

enum class TranslationKind { IntegerExact, RationalExact, Approximate };

/// Translation number of a lift with a certified error bound.
/// For the exact kinds value == p / q and error_bound == 0.
struct TranslationResult {
    double value = 0.0;
    double error_bound = 0.0;
    TranslationKind kind = TranslationKind::Approximate;
    long p = 0;
    long q = 1;

    bool exact() const { return kind != TranslationKind::Approximate; }
};

struct TranslationOptions {
    /// Fine sampling grid for sign-change detection.
    int grid = 4096;
    /// Coarse grid tried before the fine one.
    int coarse_grid = 64;
    /// Largest denominator for rational detection.
    long max_denominator = 64;
    /// Skip rational detection (integers are still detected exactly).
    bool detect_rationals = true;
    /// Answer rigid rotations (and compositions of them) from the angle.
    bool use_closed_forms = true;
};

/// Translation number of h's lift. tol in (0, 0.5) sets the fallback iteration
/// count n = ceil(1 / tol), whose error bound is 1 / n.
///
/// Integers are detected first, then fractions p/q with q <= max_denominator by
/// Stern-Brocot descent; a value is reported exact only when lift^q - id - p
/// is shown to change sign (which forces a periodic point). Comparisons against
/// candidates are pruned with the enclosure |lift^n(0) - n tau| < 1.
TranslationResult translation_number(const Homeo& h, double tol, const TranslationOptions& options = {});

/// tau(f o g) - tau(f) - tau(g) for the lifts carried by f and g; the
/// composition's lift is g's lift followed by f's, never renormalized.
struct CocycleValue {
    double value = 0.0;
    double error_bound = 0.0;
    bool exact = false;
};

CocycleValue c_value(const Homeo& f, const Homeo& g, double tol, const TranslationOptions& options = {});

/// Finite-N surrogate of lim_N c(F_N, g F_N h): +1 or -1 when every checkpoint
/// gives that value exactly, 0 otherwise. Evaluation stops at the first
/// checkpoint that rules out a nonzero verdict, so c_values may be shorter
/// than checkpoints.
struct DeltaVerdict {
    int value = 0;
    std::vector<std::size_t> checkpoints;
    std::vector<double> c_values;
};

/// Evaluates delta for a fixed family and checkpoint set, caching tau(F_N).
/// Thread-safe after construction.
class DeltaEvaluator {
public:
    /// Throws std::invalid_argument unless there are >= 3 strictly increasing
    /// checkpoints indexing into family.
    DeltaEvaluator(std::vector<Homeo> family, std::vector<std::size_t> checkpoints, double tol,
                   TranslationOptions options = {});

    DeltaVerdict operator()(const Homeo& g, const Homeo& h) const;

    const std::vector<std::size_t>& checkpoints() const { return checkpoints_; }

private:
    std::vector<Homeo> family_;
    std::vector<std::size_t> checkpoints_;
    std::vector<TranslationResult> family_tau_;
    double tol_;
    TranslationOptions options_;
};

DeltaVerdict delta(const std::vector<Homeo>& family, const Homeo& g, const Homeo& h,
                   const std::vector<std::size_t>& checkpoints, double tol = 1e-3,
                   const TranslationOptions& options = {});

/// Verdict from a list of checkpoint c-values (exactness assumed by the caller).
int delta_from_values(const std::vector<double>& c_values);

} // namespace rotsync
