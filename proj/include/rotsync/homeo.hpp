#pragma once

#include "rotsync/circle.hpp"
#include "rotsync/word.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace rotsync {

/// Real 2x2 matrix [[a, b], [c, d]].
struct Matrix2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Matrix2 inverse() const
    {
        double k = 1.0 / det();
        return {d * k, -b * k, -c * k, a * k};
    }
    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// One node of a piecewise-linear circle map: point -> image, both on [0, 1).
struct Breakpoint {
    double point;
    double image;
};

namespace detail {
struct Node;
}

/// An orientation-preserving circle homeomorphism together with a fixed lift.
///
/// Values are immutable and cheap to copy (the representation is shared).
/// Primitive constructors produce the canonical lift with lift(0) in [0, 1);
/// derived maps (compositions, covers, quotients) carry the lift obtained by
/// composing or rescaling the lifts they were built from, never renormalized.
class Homeo {
public:
    enum class Kind { Rotation, PiecewiseLinear, Moebius, Word, Chain, Inverse, Cover, Quotient };

    /// Identity.
    Homeo();

    static Homeo identity() { return Homeo(); }

    /// Rigid rotation x -> x + alpha; the stored angle is reduced to [0, 1).
    static Homeo rotation(double alpha);

    /// Piecewise-linear map through the given breakpoints, extended periodically.
    /// Points must be strictly increasing in [0, 1); images in [0, 1) must be
    /// strictly increasing in cyclic order with total winding one.
    /// Throws std::invalid_argument otherwise.
    static Homeo piecewise_linear(const std::vector<Breakpoint>& breakpoints);

    /// Projective action of an SL(2, R) matrix in the chart t = tan(pi x).
    /// Throws std::invalid_argument unless |det - 1| <= 1e-12.
    static Homeo moebius(const Matrix2& m);

    /// Lazy composition of a shared generator list along a word.
    static Homeo word(std::shared_ptr<const std::vector<Homeo>> generators, Word w);

    /// Composition in application order: maps[0] first.
    static Homeo chain(std::vector<Homeo> maps);

    /// Evaluate the lift at any real x.
    double lift(double x) const;
    /// Evaluate the inverse of the lift.
    double inverse_lift(double y) const;

    CirclePoint operator()(CirclePoint p) const { return CirclePoint(lift(p.value())); }

    Homeo inverse() const;
    /// The same circle map with the lift shifted by the integer m.
    Homeo shifted(long m) const;
    /// g o this.
    Homeo then(const Homeo& g) const;
    /// h o this o h^{-1}.
    Homeo conjugated_by(const Homeo& h) const;
    /// Lift to the l-fold cover: x -> lift(l x) / l. Commutes with x -> x + 1/l.
    Homeo cover(int l) const;
    /// Quotient by x -> x + 1/l: x -> l * lift(x / l).
    Homeo quotient(int l) const;

    /// Translation amount if the lift is a rigid translation x -> x + angle.
    std::optional<double> rigid_angle() const;

    Kind kind() const;
    long lift_shift() const { return shift_; }
    const detail::Node& node() const { return *node_; }

private:
    Homeo(std::shared_ptr<const detail::Node> node, long shift) : node_(std::move(node)), shift_(shift) {}

    std::shared_ptr<const detail::Node> node_;
    long shift_ = 0;
};

namespace detail {

struct RotationMap {
    double alpha;
};

struct PiecewiseLinearMap {
    // Knots of the lift on one period, padded with the neighbouring periodic
    // copies so that any u in [0, 1) and any y in [lift(0), lift(0) + 1) fall
    // inside the tables.
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<Breakpoint> breakpoints; // as given, for serialization
    double at_zero = 0.0;
};

struct MoebiusMap {
    Matrix2 m;
    Matrix2 inv;
    double base = 0.0;     // lift(0), in [0, 1)
    double inv_base = 0.0; // inverse lift(0) on its own canonical branch
    long inv_shift = 0;    // integer correction making the two lifts mutually inverse
};

struct WordMap {
    std::shared_ptr<const std::vector<Homeo>> generators;
    Word word;
};

struct ChainMap {
    std::vector<Homeo> maps;
};

struct InverseMap {
    Homeo of;
};

struct CoverMap {
    Homeo base;
    int l;
};

struct QuotientMap {
    Homeo base;
    int l;
};

struct Node {
    std::variant<RotationMap, PiecewiseLinearMap, MoebiusMap, WordMap, ChainMap, InverseMap, CoverMap, QuotientMap> map;
};

double moebius_lift(const Matrix2& m, double base, double x);

} // namespace detail

/// Root of f(x) = target for a nondecreasing f on [lo, hi] by bisection.
/// Used as an independent inversion route for checking closed forms.
double invert_by_bisection(const Homeo& h, double y, int iterations = 200);

} // namespace rotsync
