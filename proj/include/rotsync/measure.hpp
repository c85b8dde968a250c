#pragma once

#include "rotsync/circle.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace rotsync {

/// Uniformly weighted samples on the circle, kept sorted in [0, 1).
class EmpiricalMeasure {
public:
    /// Throws std::invalid_argument when samples is empty.
    explicit EmpiricalMeasure(std::vector<double> samples);

    std::size_t count() const { return samples_.size(); }
    const std::vector<double>& samples() const { return samples_; }

    /// Fraction of samples in the closed arc from `from` to `to`.
    double arc_mass(CirclePoint from, CirclePoint to) const;
    /// Same as arc_mass(base, x): nondecreasing from base, reaching 1.
    double cdf(CirclePoint base, CirclePoint x) const { return arc_mass(base, x); }
    /// Fraction of samples in the half-open [0, x), x in [0, 1].
    double fraction_below(double x) const;
    /// Fraction of samples within `radius` of p (circle distance).
    double mass_near(CirclePoint p, double radius) const;

    /// Sup distance between the distribution function and x on [0, 1].
    double ks_to_uniform() const;

    /// Largest number of samples sharing one value.
    std::size_t max_multiplicity() const;

    void write_csv(std::ostream& out) const;

private:
    std::size_t count_in(double lo, double hi) const; // samples in [lo, hi], 0 <= lo <= hi < 1
    std::vector<double> samples_;
};

/// Kolmogorov distance between the distribution functions on [0, 1).
double ks_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// Degree-one monotone map given by the anchored, linearly interpolated
/// distribution function of an empirical measure: cdf(anchor) = 0 and
/// cdf(x + 1) = cdf(x) + 1. Repeated sample values are merged.
class InterpolatedCdf {
public:
    InterpolatedCdf(const EmpiricalMeasure& mu, CirclePoint anchor);

    /// Lifted value at any real x.
    double operator()(double x) const;
    /// Lifted inverse at any real u, with inverse(0) = anchor lift.
    double inverse(double u) const;

    double anchor() const { return xs_.front(); }

private:
    std::vector<double> xs_; // lifted knots in [anchor, anchor + 1]
    std::vector<double> us_; // values in [0, 1]
};

/// Mass vector over B equal bins [b / B, (b + 1) / B).
class Histogram {
public:
    explicit Histogram(std::vector<double> mass);

    static Histogram uniform(std::size_t bins);
    static Histogram from_measure(const EmpiricalMeasure& mu, std::size_t bins);

    std::size_t bins() const { return mass_.size(); }
    const std::vector<double>& mass() const { return mass_; }
    double operator[](std::size_t b) const { return mass_[b]; }
    double total() const;
    /// Merges groups of adjacent bins; `bins` must divide the bin count.
    Histogram coarsened(std::size_t bins) const;

    void write_csv(std::ostream& out) const;

private:
    std::vector<double> mass_;
};

double l1_distance(const Histogram& a, const Histogram& b);

} // namespace rotsync
