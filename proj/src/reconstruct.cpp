#include "rotsync/reconstruct.hpp"

#include "rotsync/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rotsync {

ActionPair::ActionPair(GeneratorSystem first, GeneratorSystem second)
    : actions_{std::move(first), std::move(second)}
{
    if (actions_[0].size() != actions_[1].size())
        throw std::invalid_argument("actions have different generator counts");
    if (actions_[0].nu() != actions_[1].nu())
        throw std::invalid_argument("actions have different weights");
}

namespace {

bool separated(CirclePoint x, CirclePoint y, double margin)
{
    return circle_distance(x, y) > margin;
}

// Next word in shortlex order over k letters; false after the last word of
// length max_length.
bool next_word(std::vector<Letter>& w, std::size_t k, std::size_t max_length)
{
    for (std::size_t i = w.size(); i-- > 0;) {
        if (w[i] + 1 < k) {
            ++w[i];
            std::fill(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end(), Letter{0});
            return true;
        }
    }
    if (w.size() >= max_length)
        return false;
    w.assign(w.size() + 1, Letter{0});
    return true;
}

Word find_separating(const ActionPair& pair, const std::array<CirclePoint, 2>& a,
                     const std::array<CirclePoint, 2>& r, const ReconstructParams& params)
{
    double margin = 10.0 * params.eps_a;
    std::vector<Letter> w(1, Letter{0});
    do {
        Word cand(w);
        bool ok = true;
        for (std::size_t j = 0; j < 2 && ok; ++j)
            ok = separated(compose(pair[j], cand)(a[j]), r[j], margin);
        if (ok)
            return cand;
    } while (next_word(w, pair.size(), params.separating_max_length));
    throw NoSeparatingWord("no word of length <= " + std::to_string(params.separating_max_length) +
                           " moves the attractor away from the repeller");
}

} // namespace

MSFamily find_ms_family(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params)
{
    if (params.schedule.empty() || params.powers < 3)
        throw std::invalid_argument("find_ms_family needs a schedule and at least three powers");
    std::vector<std::size_t> schedule = params.schedule;
    std::sort(schedule.begin(), schedule.end());
    Word omega = sample_word(pair.nu(), schedule.back(), derive_seed(seed, 0));
    double margin = 10.0 * params.eps_a;

    MSFamily ms;
    for (std::size_t length : schedule) {
        Word base = omega.prefix(length);
        std::array<SyncReport, 2> rep;
        for (std::size_t j = 0; j < 2; ++j)
            rep[j] = sync_statistic(pair[j], base, params.contraction_grid);
        ms.contraction_log.push_back({static_cast<double>(length), rep[0].spread, rep[1].spread});
        if (rep[0].spread > params.eps_a || rep[1].spread > params.eps_a)
            continue;

        std::array<CirclePoint, 2> a{rep[0].cluster_center, rep[1].cluster_center};
        std::array<CirclePoint, 2> r;
        try {
            for (std::size_t j = 0; j < 2; ++j)
                r[j] = estimate_repeller(pair[j], base, params.repeller_depth);
        } catch (const NestingViolation&) {
            continue;
        }
        Word sep;
        if (!separated(a[0], r[0], margin) || !separated(a[1], r[1], margin)) {
            sep = find_separating(pair, a, r, params);
            base = base + sep;
        }

        std::vector<Word> words;
        std::array<std::vector<double>, 2> centers;
        bool stable = true;
        for (std::size_t n = 1; n <= params.powers && stable; ++n) {
            words.push_back(base.repeated(n));
            for (std::size_t j = 0; j < 2; ++j) {
                SyncReport s = sync_statistic(pair[j], words.back(), params.contraction_grid);
                if (s.spread > params.eps_a ||
                    (!centers[j].empty() && circle_distance(s.cluster_center.value(), centers[j].back()) > params.eps_a / 2))
                    stable = false;
                centers[j].push_back(s.cluster_center.value());
            }
        }
        if (!stable)
            continue;
        try {
            for (std::size_t j = 0; j < 2; ++j) {
                a[j] = CirclePoint(centers[j].back());
                r[j] = estimate_repeller(pair[j], words.back(), params.repeller_depth);
            }
        } catch (const NestingViolation&) {
            continue;
        }
        if (!separated(a[0], r[0], margin) || !separated(a[1], r[1], margin))
            continue;

        ms.base = base;
        ms.separating = sep;
        ms.prefix_length = length;
        ms.words = std::move(words);
        for (std::size_t i = ms.words.size() - 3; i < ms.words.size(); ++i)
            ms.checkpoints.push_back(i);
        ms.a = a;
        ms.r = r;
        ms.centers = std::move(centers);
        return ms;
    }
    throw NoConvergentSubsequence("no prefix length in the schedule gives a stable contracting family");
}

bool is_good(const ActionPair& pair, const MSFamily& ms, const Word& u, const ReconstructParams& params)
{
    double margin = 10.0 * params.eps_a;
    auto admissible = [&](const Word& w) {
        for (std::size_t j = 0; j < 2; ++j) {
            CirclePoint ga = compose(pair[j], w)(ms.a[j]);
            if (!separated(ga, ms.a[j], margin) || !separated(ga, ms.r[j], margin))
                return false;
        }
        return true;
    };
    if (!admissible(u))
        return false;
    for (std::size_t i = 0; i < pair.size(); ++i)
        if (!admissible(u + Word{static_cast<Letter>(i)}))
            return false;
    return true;
}

namespace {

std::vector<Homeo> family_maps(const GeneratorSystem& system, const MSFamily& ms)
{
    std::vector<Homeo> maps;
    for (const auto& w : ms.words)
        maps.push_back(compose(system, w));
    return maps;
}

TranslationOptions integer_options()
{
    // Delta only needs integer values: non-degenerate configurations give
    // maps with a fixed point, anything else yields the verdict 0.
    TranslationOptions o;
    o.detect_rationals = false;
    return o;
}

} // namespace

ArcMassEstimator::ArcMassEstimator(const GeneratorSystem& system, const MSFamily& ms, std::size_t action,
                                   const ReconstructParams& params)
    : system_(system), a_(ms.a.at(action)), r_(ms.r.at(action)),
      evaluator_(family_maps(system, ms), ms.checkpoints, 0.25, integer_options()), params_(params)
{
}

ArcMassEstimate ArcMassEstimator::operator()(const Word& g_word, std::uint64_t seed) const
{
    Homeo g = compose(system_, g_word);
    CirclePoint ga = g(a_);
    double margin = 10.0 * params_.eps_a;
    if (!separated(ga, a_, margin) || !separated(ga, r_, margin))
        throw PreconditionViolation("g(a) must stay away from a and r");

    std::size_t m = params_.delta_samples;
    std::vector<int> verdicts(m);
    std::vector<unsigned char> degenerate(m);
    LetterSampler sampler(system_.nu());
    auto body = [&](std::size_t s) {
        Rng rng(derive_seed(seed, s));
        Homeo h = compose(system_, sample_word(sampler, params_.delta_length, rng));
        verdicts[s] = evaluator_(g, h).value;
        CirclePoint hr(h.inverse_lift(r_.value()));
        CirclePoint pts[] = {a_, r_, ga, hr};
        bool close = false;
        for (int i = 0; i < 4; ++i)
            for (int k = i + 1; k < 4; ++k)
                close = close || circle_distance(pts[i], pts[k]) <= params_.eps_a;
        degenerate[s] = close;
    };
    auto n = static_cast<std::ptrdiff_t>(m);
    if (params_.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t s = 0; s < n; ++s)
            body(static_cast<std::size_t>(s));
    } else {
        for (std::ptrdiff_t s = 0; s < n; ++s)
            body(static_cast<std::size_t>(s));
    }

    ArcMassEstimate est;
    est.samples = m;
    long sum = 0;
    for (std::size_t s = 0; s < m; ++s) {
        sum += verdicts[s];
        est.positive += verdicts[s] > 0;
        est.negative += verdicts[s] < 0;
        est.degenerate += degenerate[s];
    }
    est.value = static_cast<double>(sum) / static_cast<double>(m);
    if (static_cast<double>(est.degenerate) > params_.max_degenerate_fraction * static_cast<double>(m))
        throw DegenerateSampling(std::to_string(est.degenerate) + " of " + std::to_string(m) +
                                 " delta samples are degenerate");
    return est;
}

ArcMassEstimate arc_mass_via_delta(const GeneratorSystem& system, const MSFamily& ms, std::size_t action,
                                   const Word& g_word, std::uint64_t seed, const ReconstructParams& params)
{
    return ArcMassEstimator(system, ms, action, params)(g_word, seed);
}

double conjugacy_residual(const ConjugacyTable& psi, const ActionPair& pair, std::size_t grid_size)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        const Homeo& f1 = pair.first().generator(i);
        const Homeo& f2 = pair.second().generator(i);
        for (std::size_t s = 0; s < grid_size; ++s) {
            double x = static_cast<double>(s) / static_cast<double>(grid_size);
            worst = std::max(worst, circle_distance(psi(f1.lift(x)), f2.lift(psi(x))));
        }
    }
    return worst;
}

void check_translation_numbers(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params)
{
    constexpr double tol = 1e-3;
    LetterSampler sampler(pair.nu());
    Rng rng(derive_seed(seed, 1));
    for (std::size_t t = 0; t < params.spot_words; ++t) {
        Word w;
        if (t < pair.size()) {
            w = Word{static_cast<Letter>(t)};
        } else {
            std::size_t n = 1 + static_cast<std::size_t>(rng.below(params.spot_max_length));
            w = sample_word(sampler, n, rng);
        }
        TranslationResult t1 = translation_number(compose(pair.first(), w), tol);
        TranslationResult t2 = translation_number(compose(pair.second(), w), tol);
        bool same = t1.exact() && t2.exact() ? (t1.p == t2.p && t1.q == t2.q)
                                             : std::abs(t1.value - t2.value) <= t1.error_bound + t2.error_bound;
        if (!same)
            throw TranslationMismatch("translation numbers differ on a word of length " + std::to_string(w.size()) +
                                      ": " + std::to_string(t1.value) + " vs " + std::to_string(t2.value));
    }
}

double pairwise_concordance(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("concordance needs sequences of equal length");
    std::size_t agree = 0, total = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = i + 1; k < a.size(); ++k) {
            ++total;
            agree += (a[i] < a[k]) == (b[i] < b[k]);
        }
    return total == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(total);
}

namespace {

RouteBStats route_b(const ActionPair& pair, const MSFamily& ms, const std::array<InterpolatedCdf, 2>& cdf,
                    std::uint64_t seed, const ReconstructParams& params)
{
    RouteBStats stats;
    std::array<ArcMassEstimator, 2> estimators{ArcMassEstimator(pair.first(), ms, 0, params),
                                               ArcMassEstimator(pair.second(), ms, 1, params)};
    LetterSampler sampler(pair.nu());
    Rng rng(derive_seed(seed, 2));
    std::size_t tried = 0;
    while (stats.words.size() < params.m_good) {
        if (tried++ >= params.good_budget)
            throw InsufficientGoodWords("found " + std::to_string(stats.words.size()) + " of " +
                                        std::to_string(params.m_good) + " good words");
        Word u = sample_word(sampler, params.good_length, rng);
        if (!is_good(pair, ms, u, params)) {
            ++stats.excluded_words;
            continue;
        }
        std::uint64_t word_seed = derive_seed(seed, 1000 + stats.words.size());
        for (std::size_t j = 0; j < 2; ++j) {
            // Same seed for both actions: common random numbers.
            ArcMassEstimate e = estimators[j](u, word_seed);
            stats.positions[j].push_back(e.position());
            stats.degenerate_samples += e.degenerate;
            stats.delta_samples += e.samples;
            double image = compose(pair[j], u)(ms.a[j]).value();
            stats.images[j].push_back(image);
            double lifted = ms.a[j].value() + forward_distance(ms.a[j], CirclePoint(image));
            stats.direct_positions[j].push_back(cdf[j](lifted));
        }
        stats.words.push_back(u);
    }
    stats.tolerance = 2.0 * 3.0 / std::sqrt(static_cast<double>(params.delta_samples));
    std::size_t agree = 0;
    for (std::size_t i = 0; i < stats.words.size(); ++i) {
        double d = std::abs(stats.positions[0][i] - stats.positions[1][i]);
        stats.max_difference = std::max(stats.max_difference, d);
        agree += d <= stats.tolerance;
    }
    stats.agreement_fraction = static_cast<double>(agree) / static_cast<double>(stats.words.size());
    for (std::size_t j = 0; j < 2; ++j)
        stats.concordance[j] = pairwise_concordance(stats.positions[j], stats.direct_positions[j]);
    return stats;
}

Reconstruction build_type2(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params, bool with_b)
{
    Reconstruction rec;
    rec.type = Verdict::Synchronizing;
    rec.family = find_ms_family(pair, seed, params);
    // Common random numbers: both measures use the same walks.
    std::uint64_t mu_seed = derive_seed(seed, 3);
    std::array<InterpolatedCdf, 2> cdf{
        InterpolatedCdf(estimate_stationary(pair.first(), Direction::Inverse, params.mu_burn, params.mu_samples,
                                            mu_seed, params.execution),
                        rec.family.a[0]),
        InterpolatedCdf(estimate_stationary(pair.second(), Direction::Inverse, params.mu_burn, params.mu_samples,
                                            mu_seed, params.execution),
                        rec.family.a[1])};
    rec.psi = tabulate([&](double x) { return cdf[1].inverse(cdf[0](x)); }, rec.family.a[0], params.grid);
    rec.residual = conjugacy_residual(rec.psi, pair, params.grid);
    if (with_b)
        rec.route_b = route_b(pair, rec.family, cdf, seed, params);
    return rec;
}

} // namespace

Reconstruction build_conjugacy(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params,
                               bool with_b)
{
    check_translation_numbers(pair, seed, params);
    return build_type2(pair, seed, params, with_b);
}

Reconstruction build_conjugacy_invariant(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params)
{
    check_translation_numbers(pair, seed, params);
    Reconstruction rec;
    rec.type = Verdict::InvariantMeasure;
    std::uint64_t mu_seed = derive_seed(seed, 4);
    std::array<MapTable, 2> lin;
    for (std::size_t j = 0; j < 2; ++j)
        lin[j] = linearizer(pair[j], birkhoff_orbit(pair[j], params.mu_burn, params.mu_samples, mu_seed), params.grid);
    Homeo second = lin[1].to_homeo();
    rec.psi = tabulate([&](double x) { return second.inverse_lift(lin[0](x)); }, CirclePoint(0.0), params.grid);
    rec.residual = conjugacy_residual(rec.psi, pair, params.grid);
    return rec;
}

Reconstruction build_conjugacy_factor(const ActionPair& pair, int l, std::uint64_t seed,
                                      const ReconstructParams& params, bool with_b)
{
    check_translation_numbers(pair, seed, params);
    ActionPair quotient(factor_quotient(pair.first(), l), factor_quotient(pair.second(), l));
    Reconstruction inner = build_type2(quotient, seed, params, with_b);
    Reconstruction rec;
    rec.type = Verdict::Factorizable;
    rec.l = l;
    rec.family = inner.family;
    rec.route_b = inner.route_b;
    double dl = static_cast<double>(l);
    // Any branch (psi_q(l x) + k) / l conjugates the covers; k = 0 keeps the
    // anchor pair a_q^1 / l -> a_q^2 / l.
    rec.psi = tabulate([&](double x) { return inner.psi(dl * x) / dl; }, CirclePoint(inner.psi.anchor_from.value() / dl),
                       params.grid);
    rec.residual = conjugacy_residual(rec.psi, pair, params.grid);
    return rec;
}

Reconstruction reconstruct(const ActionPair& pair, std::uint64_t seed, const ReconstructParams& params,
                           std::size_t classify_N, std::size_t classify_M, bool with_b)
{
    ClassificationReport report = classify(pair.first(), classify_N, classify_M, derive_seed(seed, 5), {},
                                           params.execution);
    switch (report.verdict) {
    case Verdict::InvariantMeasure:
        return build_conjugacy_invariant(pair, seed, params);
    case Verdict::Synchronizing:
        return build_conjugacy(pair, seed, params, with_b);
    case Verdict::Factorizable:
        return build_conjugacy_factor(pair, report.l, seed, params, with_b);
    }
    throw std::logic_error("unknown verdict");
}

} // namespace rotsync
