#include "rotsync/rotnum.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace rotsync {

namespace {

enum class Comparison { Less, Equal, Greater };

constexpr std::size_t kInitialOrbit = 8;
constexpr double kRigidTolerance = 1e-12;

TranslationResult exact_result(long p, long q)
{
    TranslationResult r;
    r.p = p;
    r.q = q;
    r.value = static_cast<double>(p) / static_cast<double>(q);
    r.error_bound = 0.0;
    r.kind = q == 1 ? TranslationKind::IntegerExact : TranslationKind::RationalExact;
    return r;
}

long fallback_iterations(double tol)
{
    if (!(tol > 0.0 && tol < 0.5))
        throw std::invalid_argument("translation_number tolerance must lie in (0, 0.5)");
    return static_cast<long>(std::ceil(1.0 / tol));
}

TranslationResult rigid_translation(double angle, double tol, const TranslationOptions& options)
{
    long n = fallback_iterations(tol);
    long m = std::lround(angle);
    if (std::abs(angle - static_cast<double>(m)) <= kRigidTolerance)
        return exact_result(m, 1);
    if (options.detect_rationals) {
        for (long q = 2; q <= options.max_denominator; ++q) {
            double scaled = angle * static_cast<double>(q);
            long p = std::lround(scaled);
            if (std::abs(scaled - static_cast<double>(p)) <= kRigidTolerance * static_cast<double>(q))
                return exact_result(p, q);
        }
    }
    TranslationResult r;
    r.value = angle;
    r.error_bound = 1.0 / static_cast<double>(n);
    r.kind = TranslationKind::Approximate;
    return r;
}

class Solver {
public:
    Solver(const Homeo& h, const TranslationOptions& options) : h_(h), options_(options)
    {
        orbit_.push_back(0.0);
    }

    void extend(std::size_t k)
    {
        while (orbit_.size() <= k)
            orbit_.push_back(h_.lift(orbit_.back()));
    }

    std::size_t orbit_length() const { return orbit_.size() - 1; }
    double orbit_point(std::size_t k) const { return orbit_[k]; }

    // Rigorous bracket for tau from |lift^K(0) - K tau| < 1, padded for rounding.
    std::pair<double, double> enclosure() const
    {
        double k = static_cast<double>(orbit_length());
        double d = orbit_.back();
        double slack = 1e-9 * (1.0 + std::abs(d)) / k;
        return {(d - 1.0) / k - slack, (d + 1.0) / k + slack};
    }

    Comparison compare(long p, long q)
    {
        double target = static_cast<double>(p) / static_cast<double>(q);
        if (auto c = from_enclosure(target))
            return *c;
        if (probe(p, q))
            return Comparison::Equal;
        auto uq = static_cast<std::size_t>(q);
        extend(std::max(orbit_length(), 64 * uq));
        if (auto c = from_enclosure(target))
            return *c;
        int sign = 0;
        if (grid_has_root(p, q, options_.coarse_grid, sign))
            return Comparison::Equal;
        // A longer orbit usually separates an irrational value from p/q for a
        // fraction of the cost of the fine grid.
        std::size_t budget = static_cast<std::size_t>(options_.grid) * uq / 4;
        while (orbit_length() < budget) {
            extend(std::min(budget, 2 * orbit_length()));
            if (auto c = from_enclosure(target))
                return *c;
        }
        if (grid_has_root(p, q, options_.grid, sign))
            return Comparison::Equal;
        return sign > 0 ? Comparison::Greater : Comparison::Less;
    }

private:
    std::optional<Comparison> from_enclosure(double target) const
    {
        auto [lo, hi] = enclosure();
        if (target < lo)
            return Comparison::Greater;
        if (target > hi)
            return Comparison::Less;
        return std::nullopt;
    }

    double iterate(double x, long q) const
    {
        for (long i = 0; i < q; ++i)
            x = h_.lift(x);
        return x;
    }

    double residual(double x, long p, long q) const
    {
        return iterate(x, q) - x - static_cast<double>(p);
    }

    // Bisection on a sign change of lift^q - id - p; a continuous function
    // with a sign change has a root, so this only narrows the witness.
    void confirm_root(double lo, double hi, long p, long q) const
    {
        double glo = residual(lo, p, q);
        for (int i = 0; i < 40 && hi - lo > 1e-13; ++i) {
            double mid = 0.5 * (lo + hi);
            double gm = residual(mid, p, q);
            if (gm == 0.0)
                return;
            if ((gm < 0.0) == (glo < 0.0)) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
    }

    // Follow the orbit towards an attracting periodic point and look for a
    // sign change around it.
    bool probe(long p, long q) const
    {
        double y = orbit_.back();
        for (int i = 0; i < 8; ++i) {
            double next = iterate(y, q) - static_cast<double>(p);
            if (next == y)
                break;
            y = next;
        }
        double g0 = residual(y, p, q);
        if (g0 == 0.0)
            return true;
        double scale = std::max(1.0, std::abs(y));
        for (double step = 1e-12 * scale; step < 0.5; step *= 8.0) {
            double gl = residual(y - step, p, q);
            double gr = residual(y + step, p, q);
            if (gl == 0.0 || gr == 0.0)
                return true;
            if ((gl < 0.0) != (gr < 0.0)) {
                confirm_root(y - step, y + step, p, q);
                return true;
            }
            if ((gl < 0.0) != (g0 < 0.0)) {
                confirm_root(y - step, y, p, q);
                return true;
            }
        }
        return false;
    }

    // lift^q - id - p is 1-periodic, so scanning one period of the grid is enough.
    bool grid_has_root(long p, long q, int n, int& sign) const
    {
        double step = 1.0 / static_cast<double>(n);
        double first = residual(0.0, p, q);
        if (first == 0.0)
            return true;
        double previous = first;
        for (int j = 1; j < n; ++j) {
            double x = static_cast<double>(j) * step;
            double g = residual(x, p, q);
            if (g == 0.0)
                return true;
            if ((g < 0.0) != (previous < 0.0)) {
                confirm_root(x - step, x, p, q);
                return true;
            }
            previous = g;
        }
        sign = first > 0.0 ? 1 : -1;
        return false;
    }

    const Homeo& h_;
    const TranslationOptions& options_;
    std::vector<double> orbit_;
};

struct Rational {
    long long p;
    long long q;
};

Rational subtract(Rational a, Rational b)
{
    long long l = std::lcm(a.q, b.q);
    Rational r{a.p * (l / a.q) - b.p * (l / b.q), l};
    long long g = std::gcd(r.p, r.q);
    if (g > 1) {
        r.p /= g;
        r.q /= g;
    }
    return r;
}

} // namespace

TranslationResult translation_number(const Homeo& h, double tol, const TranslationOptions& options)
{
    long n = fallback_iterations(tol);
    if (options.use_closed_forms) {
        if (auto angle = h.rigid_angle())
            return rigid_translation(*angle, tol, options);
    }

    Solver solver(h, options);
    solver.extend(kInitialOrbit);

    // Integer stage. The enclosure has width below one, so it holds at most
    // two candidate integers.
    auto [lo, hi] = solver.enclosure();
    long left = static_cast<long>(std::floor(lo));
    for (long m = static_cast<long>(std::ceil(lo)); static_cast<double>(m) <= hi; ++m) {
        Comparison c = solver.compare(m, 1);
        if (c == Comparison::Equal)
            return exact_result(m, 1);
        if (c == Comparison::Greater)
            left = m;
        else
            break;
    }

    // Stern-Brocot descent between left and left + 1.
    if (options.detect_rationals) {
        long lp = left, lq = 1, rp = left + 1, rq = 1;
        while (lq + rq <= options.max_denominator) {
            long mp = lp + rp, mq = lq + rq;
            Comparison c = solver.compare(mp, mq);
            if (c == Comparison::Equal)
                return exact_result(mp, mq);
            if (c == Comparison::Greater) {
                lp = mp;
                lq = mq;
            } else {
                rp = mp;
                rq = mq;
            }
        }
    }

    solver.extend(static_cast<std::size_t>(n));
    TranslationResult r;
    r.value = solver.orbit_point(static_cast<std::size_t>(n)) / static_cast<double>(n);
    r.error_bound = 1.0 / static_cast<double>(n);
    r.kind = TranslationKind::Approximate;
    return r;
}

CocycleValue c_value(const Homeo& f, const Homeo& g, double tol, const TranslationOptions& options)
{
    if (options.use_closed_forms && f.rigid_angle() && g.rigid_angle()) {
        // Rigid lifts add, so tau is additive and c vanishes identically.
        return CocycleValue{0.0, 0.0, true};
    }
    TranslationResult tf = translation_number(f, tol, options);
    TranslationResult tg = translation_number(g, tol, options);
    TranslationResult tfg = translation_number(g.then(f), tol, options);
    CocycleValue c;
    if (tf.exact() && tg.exact() && tfg.exact()) {
        Rational r = subtract(subtract({tfg.p, tfg.q}, {tf.p, tf.q}), {tg.p, tg.q});
        c.value = static_cast<double>(r.p) / static_cast<double>(r.q);
        c.exact = true;
        return c;
    }
    c.value = tfg.value - tf.value - tg.value;
    c.error_bound = tfg.error_bound + tf.error_bound + tg.error_bound;
    return c;
}

int delta_from_values(const std::vector<double>& c_values)
{
    if (c_values.empty())
        return 0;
    for (int target : {1, -1}) {
        bool all = true;
        for (double c : c_values)
            all = all && std::abs(c - target) <= 1e-9;
        if (all)
            return target;
    }
    return 0;
}

DeltaEvaluator::DeltaEvaluator(std::vector<Homeo> family, std::vector<std::size_t> checkpoints, double tol,
                               TranslationOptions options)
    : family_(std::move(family)), checkpoints_(std::move(checkpoints)), tol_(tol), options_(options)
{
    if (checkpoints_.size() < 3)
        throw std::invalid_argument("delta needs at least three checkpoints");
    for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
        if (checkpoints_[i] >= family_.size())
            throw std::invalid_argument("delta checkpoint outside the family");
        if (i > 0 && checkpoints_[i] <= checkpoints_[i - 1])
            throw std::invalid_argument("delta checkpoints must be strictly increasing");
    }
    for (std::size_t n : checkpoints_)
        family_tau_.push_back(translation_number(family_[n], tol_, options_));
}

DeltaVerdict DeltaEvaluator::operator()(const Homeo& g, const Homeo& h) const
{
    DeltaVerdict verdict;
    verdict.checkpoints = checkpoints_;
    bool exact = true;
    for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
        const Homeo& f = family_[checkpoints_[i]];
        Homeo gfh = Homeo::chain({h, f, g});
        TranslationResult t_gfh = translation_number(gfh, tol_, options_);
        TranslationResult t_both = translation_number(Homeo::chain({h, f, g, f}), tol_, options_);
        const TranslationResult& t_f = family_tau_[i];
        if (t_f.exact() && t_gfh.exact() && t_both.exact()) {
            Rational r = subtract(subtract({t_both.p, t_both.q}, {t_f.p, t_f.q}), {t_gfh.p, t_gfh.q});
            verdict.c_values.push_back(static_cast<double>(r.p) / static_cast<double>(r.q));
        } else {
            exact = false;
            verdict.c_values.push_back(t_both.value - t_f.value - t_gfh.value);
        }
        // Once the checkpoints cannot agree on +1 or -1 the verdict is 0.
        double c = verdict.c_values.back();
        if (!exact || std::abs(std::abs(c) - 1.0) > 1e-9 || std::abs(c - verdict.c_values.front()) > 1e-9)
            break;
    }
    verdict.value = exact ? delta_from_values(verdict.c_values) : 0;
    return verdict;
}

DeltaVerdict delta(const std::vector<Homeo>& family, const Homeo& g, const Homeo& h,
                   const std::vector<std::size_t>& checkpoints, double tol, const TranslationOptions& options)
{
    return DeltaEvaluator(family, checkpoints, tol, options)(g, h);
}

} // namespace rotsync
