#include "rotsync/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rotsync {

namespace {

std::string format17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double interpolate(const std::vector<double>& from, const std::vector<double>& to, double u)
{
    auto it = std::upper_bound(from.begin(), from.end(), u);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - from.begin() - 1, 0));
    i = std::min(i, from.size() - 2);
    double span = from[i + 1] - from[i];
    double t = span > 0.0 ? (u - from[i]) / span : 0.0;
    return to[i] + t * (to[i + 1] - to[i]);
}

} // namespace

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> samples) : samples_(std::move(samples))
{
    if (samples_.empty())
        throw std::invalid_argument("empirical measure needs at least one sample");
    for (double& x : samples_)
        x = wrap01(x);
    std::sort(samples_.begin(), samples_.end());
}

std::size_t EmpiricalMeasure::count_in(double lo, double hi) const
{
    auto first = std::lower_bound(samples_.begin(), samples_.end(), lo);
    auto last = std::upper_bound(samples_.begin(), samples_.end(), hi);
    return last > first ? static_cast<std::size_t>(last - first) : 0;
}

double EmpiricalMeasure::arc_mass(CirclePoint from, CirclePoint to) const
{
    double a = from.value(), b = to.value();
    std::size_t n;
    if (a <= b)
        n = count_in(a, b);
    else
        n = count_in(a, 1.0) + count_in(0.0, b);
    return static_cast<double>(n) / static_cast<double>(count());
}

double EmpiricalMeasure::fraction_below(double x) const
{
    auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(count());
}

double EmpiricalMeasure::mass_near(CirclePoint p, double radius) const
{
    if (radius >= 0.5)
        return 1.0;
    return arc_mass(CirclePoint(p.value() - radius), CirclePoint(p.value() + radius));
}

double EmpiricalMeasure::ks_to_uniform() const
{
    double n = static_cast<double>(count());
    double d = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        double x = samples_[i];
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - x));
        d = std::max(d, std::abs(x - static_cast<double>(i) / n));
    }
    return d;
}

std::size_t EmpiricalMeasure::max_multiplicity() const
{
    std::size_t best = 1, run = 1;
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        run = samples_[i] == samples_[i - 1] ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

void EmpiricalMeasure::write_csv(std::ostream& out) const
{
    out << "sample\n";
    for (double x : samples_)
        out << format17(x) << '\n';
}

double ks_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b)
{
    const auto& xs = a.samples();
    const auto& ys = b.samples();
    double na = static_cast<double>(xs.size()), nb = static_cast<double>(ys.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xs.size() || j < ys.size()) {
        double t = j == ys.size() || (i < xs.size() && xs[i] <= ys[j]) ? xs[i] : ys[j];
        while (i < xs.size() && xs[i] == t)
            ++i;
        while (j < ys.size() && ys[j] == t)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

InterpolatedCdf::InterpolatedCdf(const EmpiricalMeasure& mu, CirclePoint anchor)
{
    const auto& s = mu.samples();
    double a = anchor.value();
    double n = static_cast<double>(s.size());
    // Samples in positive order starting just after the anchor, lifted into (a, a + 1).
    std::size_t start = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), a) - s.begin());
    xs_.push_back(a);
    us_.push_back(0.0);
    std::size_t k = 0;
    while (k < s.size()) {
        std::size_t idx = (start + k) % s.size();
        double x = s[idx] + (idx < start ? 1.0 : 0.0);
        // Repeated values become one knot at their mean rank.
        std::size_t run = 1;
        while (k + run < s.size() && s[(start + k + run) % s.size()] == s[idx])
            ++run;
        double u = (static_cast<double>(k) + 0.5 * static_cast<double>(run)) / n;
        k += run;
        if (x <= a || x >= a + 1.0)
            continue; // on the anchor itself
        xs_.push_back(x);
        us_.push_back(u);
    }
    xs_.push_back(a + 1.0);
    us_.push_back(1.0);
}

double InterpolatedCdf::operator()(double x) const
{
    double a = xs_.front();
    double whole = std::floor(x - a);
    return interpolate(xs_, us_, x - whole) + whole;
}

double InterpolatedCdf::inverse(double u) const
{
    double whole = std::floor(u);
    return interpolate(us_, xs_, u - whole) + whole;
}

Histogram::Histogram(std::vector<double> mass) : mass_(std::move(mass))
{
    if (mass_.empty())
        throw std::invalid_argument("histogram needs at least one bin");
    for (double m : mass_)
        if (!(m >= 0.0))
            throw std::invalid_argument("histogram masses must be nonnegative");
    if (!(std::abs(total() - 1.0) <= 1e-9))
        throw std::invalid_argument("histogram masses must sum to 1");
}

Histogram Histogram::uniform(std::size_t bins)
{
    return Histogram(std::vector<double>(bins, 1.0 / static_cast<double>(bins)));
}

Histogram Histogram::from_measure(const EmpiricalMeasure& mu, std::size_t bins)
{
    std::vector<double> mass(bins, 0.0);
    double w = 1.0 / static_cast<double>(mu.count());
    for (double x : mu.samples()) {
        auto b = static_cast<std::size_t>(x * static_cast<double>(bins));
        mass[std::min(b, bins - 1)] += w;
    }
    return Histogram(std::move(mass));
}

double Histogram::total() const
{
    return std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

Histogram Histogram::coarsened(std::size_t bins) const
{
    if (bins == 0 || mass_.size() % bins != 0)
        throw std::invalid_argument("coarse bin count must divide the bin count");
    std::size_t group = mass_.size() / bins;
    std::vector<double> out(bins, 0.0);
    for (std::size_t b = 0; b < mass_.size(); ++b)
        out[b / group] += mass_[b];
    return Histogram(std::move(out));
}

void Histogram::write_csv(std::ostream& out) const
{
    out << "bin_start,mass\n";
    double n = static_cast<double>(bins());
    for (std::size_t b = 0; b < bins(); ++b)
        out << format17(static_cast<double>(b) / n) << ',' << format17(mass_[b]) << '\n';
}

double l1_distance(const Histogram& a, const Histogram& b)
{
    if (a.bins() != b.bins())
        throw std::invalid_argument("histograms differ in bin count");
    double d = 0.0;
    for (std::size_t i = 0; i < a.bins(); ++i)
        d += std::abs(a[i] - b[i]);
    return d;
}

} // namespace rotsync
