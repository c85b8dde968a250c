#pragma once

#include <cmath>

namespace rotsync {

/// Reduce a real number to [0, 1).
inline double wrap01(double x)
{
    double r = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.0
    return r >= 1.0 ? 0.0 : r;
}

/// A point of the circle R/Z, stored as its representative in [0, 1).
class CirclePoint {
public:
    constexpr CirclePoint() = default;
    explicit CirclePoint(double x) : x_(wrap01(x)) {}

    double value() const { return x_; }

    friend bool operator==(CirclePoint, CirclePoint) = default;

private:
    double x_ = 0.0;
};

/// Length of the positively oriented arc from a to b, in [0, 1).
inline double forward_distance(CirclePoint a, CirclePoint b)
{
    return wrap01(b.value() - a.value());
}

/// Shortest distance on the circle, in [0, 1/2].
inline double circle_distance(CirclePoint a, CirclePoint b)
{
    double d = forward_distance(a, b);
    return d > 0.5 ? 1.0 - d : d;
}

inline double circle_distance(double a, double b)
{
    return circle_distance(CirclePoint(a), CirclePoint(b));
}

/// Closed, positively oriented arc [start, end]. The full circle is not an Arc.
class Arc {
public:
    Arc(CirclePoint start, CirclePoint end) : start_(start), end_(end) {}

    CirclePoint start() const { return start_; }
    CirclePoint end() const { return end_; }
    double length() const { return forward_distance(start_, end_); }
    bool contains(CirclePoint p) const { return forward_distance(start_, p) <= length(); }
    CirclePoint midpoint() const { return CirclePoint(start_.value() + 0.5 * length()); }

private:
    CirclePoint start_;
    CirclePoint end_;
};

enum class CyclicOrder { Positive, Negative, Degenerate };

inline constexpr double kDefaultCyclicEps = 1e-9;

/// Orientation of the triple (a, b, c): Positive iff b lies on the open arc (a, c).
/// Degenerate when any two points are within eps of each other.
CyclicOrder cyclic_order(CirclePoint a, CirclePoint b, CirclePoint c, double eps = kDefaultCyclicEps);

/// True iff the points p[0], ..., p[n-1] are met in this order when going
/// once around the circle in the positive direction starting from p[0], with
/// all pairwise distances greater than eps.
bool in_cyclic_order(const CirclePoint* points, int n, double eps = kDefaultCyclicEps);

} // namespace rotsync
