#include "rotsync/homeo.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rotsync {

namespace detail {

namespace {

// Position in [0, 1) of the projective point spanned by (p, q), t = p / q.
double chart_position(double p, double q)
{
    return wrap01(std::atan2(p, q) / std::numbers::pi);
}

double interpolate(const std::vector<double>& from, const std::vector<double>& to, double u)
{
    auto it = std::upper_bound(from.begin(), from.end(), u);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - from.begin() - 1, 0));
    i = std::min(i, from.size() - 2);
    double t = (u - from[i]) / (from[i + 1] - from[i]);
    return to[i] + t * (to[i + 1] - to[i]);
}

} // namespace

double moebius_lift(const Matrix2& m, double base, double x)
{
    double whole = std::floor(x);
    double theta = std::numbers::pi * (x - whole);
    double s = std::sin(theta);
    double c = std::cos(theta);
    double p = m.a * s + m.b * c;
    double q = m.c * s + m.d * c;
    // Angle swept by the image direction since x = 0; its sine is det * sin(theta) >= 0,
    // so the result stays on the continuous branch in [0, pi].
    double swept = std::atan2(m.det() * s, m.b * p + m.d * q);
    return base + swept / std::numbers::pi + whole;
}

namespace {

struct LiftVisitor {
    double x;

    double operator()(const RotationMap& r) const { return x + r.alpha; }

    double operator()(const PiecewiseLinearMap& pl) const
    {
        double whole = std::floor(x);
        return interpolate(pl.xs, pl.ys, x - whole) + whole;
    }

    double operator()(const MoebiusMap& mm) const { return moebius_lift(mm.m, mm.base, x); }

    double operator()(const WordMap& w) const
    {
        const auto& gens = *w.generators;
        double y = x;
        for (Letter l : w.word)
            y = gens[l].lift(y);
        return y;
    }

    double operator()(const ChainMap& c) const
    {
        double y = x;
        for (const auto& h : c.maps)
            y = h.lift(y);
        return y;
    }

    double operator()(const InverseMap& inv) const { return inv.of.inverse_lift(x); }
    double operator()(const CoverMap& cv) const { return cv.base.lift(cv.l * x) / cv.l; }
    double operator()(const QuotientMap& qt) const { return qt.l * qt.base.lift(x / qt.l); }
};

struct InverseLiftVisitor {
    double y;

    double operator()(const RotationMap& r) const { return y - r.alpha; }

    double operator()(const PiecewiseLinearMap& pl) const
    {
        double k = std::floor(y - pl.at_zero);
        return interpolate(pl.ys, pl.xs, y - k) + k;
    }

    double operator()(const MoebiusMap& mm) const
    {
        return moebius_lift(mm.inv, mm.inv_base, y) + static_cast<double>(mm.inv_shift);
    }

    double operator()(const WordMap& w) const
    {
        const auto& gens = *w.generators;
        double x = y;
        for (auto it = w.word.letters().rbegin(); it != w.word.letters().rend(); ++it)
            x = gens[*it].inverse_lift(x);
        return x;
    }

    double operator()(const ChainMap& c) const
    {
        double x = y;
        for (auto it = c.maps.rbegin(); it != c.maps.rend(); ++it)
            x = it->inverse_lift(x);
        return x;
    }

    double operator()(const InverseMap& inv) const { return inv.of.lift(y); }
    double operator()(const CoverMap& cv) const { return cv.base.inverse_lift(cv.l * y) / cv.l; }
    double operator()(const QuotientMap& qt) const { return qt.l * qt.base.inverse_lift(y / qt.l); }
};

} // namespace
} // namespace detail

namespace {

std::shared_ptr<const detail::Node> make_node(auto map)
{
    return std::make_shared<const detail::Node>(detail::Node{std::move(map)});
}

const std::shared_ptr<const detail::Node>& identity_node()
{
    static const auto node = make_node(detail::RotationMap{0.0});
    return node;
}

} // namespace

Homeo::Homeo() : node_(identity_node()) {}

Homeo Homeo::rotation(double alpha)
{
    double whole = std::floor(alpha);
    double frac = alpha - whole;
    if (frac >= 1.0) {
        frac = 0.0;
        whole += 1.0;
    }
    return Homeo(make_node(detail::RotationMap{frac}), static_cast<long>(whole));
}

Homeo Homeo::piecewise_linear(const std::vector<Breakpoint>& breakpoints)
{
    if (breakpoints.empty())
        throw std::invalid_argument("piecewise-linear map needs at least one breakpoint");
    std::size_t n = breakpoints.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& bp = breakpoints[i];
        if (!(bp.point >= 0.0 && bp.point < 1.0) || !(bp.image >= 0.0 && bp.image < 1.0))
            throw std::invalid_argument("piecewise-linear breakpoint outside [0, 1)");
        if (i > 0 && !(bp.point > breakpoints[i - 1].point))
            throw std::invalid_argument("piecewise-linear points must be strictly increasing");
    }
    // Unwrap the images into lift values with the smallest positive increments.
    std::vector<double> ys(n);
    ys[0] = breakpoints[0].image;
    for (std::size_t i = 1; i < n; ++i) {
        double step = breakpoints[i].image - breakpoints[i - 1].image;
        if (step == 0.0)
            throw std::invalid_argument("piecewise-linear map is not injective");
        if (step < 0.0)
            step += 1.0;
        ys[i] = ys[i - 1] + step;
    }
    if (!(ys[n - 1] < ys[0] + 1.0))
        throw std::invalid_argument("piecewise-linear map is not monotone (winding exceeds one turn)");

    detail::PiecewiseLinearMap pl;
    pl.breakpoints = breakpoints;
    pl.xs.reserve(n + 2);
    pl.ys.reserve(n + 2);
    pl.xs.push_back(breakpoints[n - 1].point - 1.0);
    pl.ys.push_back(ys[n - 1] - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        pl.xs.push_back(breakpoints[i].point);
        pl.ys.push_back(ys[i]);
    }
    pl.xs.push_back(breakpoints[0].point + 1.0);
    pl.ys.push_back(ys[0] + 1.0);

    double at_zero = detail::interpolate(pl.xs, pl.ys, 0.0);
    double shift = std::floor(at_zero);
    for (double& y : pl.ys)
        y -= shift;
    pl.at_zero = at_zero - shift;
    return Homeo(make_node(std::move(pl)), 0);
}

Homeo Homeo::moebius(const Matrix2& m)
{
    if (!(std::abs(m.det() - 1.0) <= 1e-12))
        throw std::invalid_argument("Moebius matrix must have determinant 1");
    detail::MoebiusMap mm;
    mm.m = m;
    mm.inv = m.inverse();
    mm.base = detail::chart_position(m.b, m.d);
    mm.inv_base = detail::chart_position(mm.inv.b, mm.inv.d);
    double back = detail::moebius_lift(mm.inv, mm.inv_base, mm.base);
    mm.inv_shift = -std::lround(back);
    return Homeo(make_node(mm), 0);
}

Homeo Homeo::word(std::shared_ptr<const std::vector<Homeo>> generators, Word w)
{
    for (Letter l : w)
        if (l >= generators->size())
            throw std::out_of_range("word letter " + std::to_string(l) + " out of range");
    return Homeo(make_node(detail::WordMap{std::move(generators), std::move(w)}), 0);
}

Homeo Homeo::chain(std::vector<Homeo> maps)
{
    if (maps.empty())
        return Homeo();
    if (maps.size() == 1)
        return maps.front();
    return Homeo(make_node(detail::ChainMap{std::move(maps)}), 0);
}

double Homeo::lift(double x) const
{
    return std::visit(detail::LiftVisitor{x}, node_->map) + static_cast<double>(shift_);
}

double Homeo::inverse_lift(double y) const
{
    return std::visit(detail::InverseLiftVisitor{y - static_cast<double>(shift_)}, node_->map);
}

Homeo Homeo::inverse() const
{
    if (const auto* inv = std::get_if<detail::InverseMap>(&node_->map))
        return inv->of.shifted(-shift_);
    if (const auto* rot = std::get_if<detail::RotationMap>(&node_->map))
        return Homeo::rotation(-(rot->alpha + static_cast<double>(shift_)));
    return Homeo(make_node(detail::InverseMap{*this}), 0);
}

Homeo Homeo::shifted(long m) const
{
    return Homeo(node_, shift_ + m);
}

Homeo Homeo::then(const Homeo& g) const
{
    return chain({*this, g});
}

Homeo Homeo::conjugated_by(const Homeo& h) const
{
    return chain({h.inverse(), *this, h});
}

Homeo Homeo::cover(int l) const
{
    if (l < 1)
        throw std::invalid_argument("cover degree must be positive");
    if (const auto* rot = std::get_if<detail::RotationMap>(&node_->map))
        return Homeo::rotation((rot->alpha + static_cast<double>(shift_)) / l);
    return Homeo(make_node(detail::CoverMap{*this, l}), 0);
}

Homeo Homeo::quotient(int l) const
{
    if (l < 1)
        throw std::invalid_argument("quotient degree must be positive");
    return Homeo(make_node(detail::QuotientMap{*this, l}), 0);
}

std::optional<double> Homeo::rigid_angle() const
{
    struct Visitor {
        std::optional<double> operator()(const detail::RotationMap& r) const { return r.alpha; }
        std::optional<double> operator()(const detail::PiecewiseLinearMap&) const { return std::nullopt; }
        std::optional<double> operator()(const detail::MoebiusMap&) const { return std::nullopt; }
        std::optional<double> operator()(const detail::WordMap& w) const
        {
            std::vector<std::optional<double>> angles;
            angles.reserve(w.generators->size());
            for (const auto& g : *w.generators)
                angles.push_back(g.rigid_angle());
            double total = 0.0;
            for (Letter l : w.word) {
                if (!angles[l])
                    return std::nullopt;
                total += *angles[l];
            }
            return total;
        }
        std::optional<double> operator()(const detail::ChainMap& c) const
        {
            double total = 0.0;
            for (const auto& h : c.maps) {
                auto a = h.rigid_angle();
                if (!a)
                    return std::nullopt;
                total += *a;
            }
            return total;
        }
        std::optional<double> operator()(const detail::InverseMap& inv) const
        {
            auto a = inv.of.rigid_angle();
            return a ? std::optional<double>(-*a) : std::nullopt;
        }
        std::optional<double> operator()(const detail::CoverMap& cv) const
        {
            auto a = cv.base.rigid_angle();
            return a ? std::optional<double>(*a / cv.l) : std::nullopt;
        }
        std::optional<double> operator()(const detail::QuotientMap& qt) const
        {
            auto a = qt.base.rigid_angle();
            return a ? std::optional<double>(*a * qt.l) : std::nullopt;
        }
    };
    auto a = std::visit(Visitor{}, node_->map);
    if (a)
        *a += static_cast<double>(shift_);
    return a;
}

Homeo::Kind Homeo::kind() const
{
    return static_cast<Kind>(node_->map.index());
}

double invert_by_bisection(const Homeo& h, double y, int iterations)
{
    // lift(x) - x is 1-periodic with oscillation below 1, so the root lies
    // within one unit of y - (lift(0) - 0).
    double guess = y - h.lift(0.0);
    double lo = guess - 1.0;
    double hi = guess + 1.0;
    for (int i = 0; i < iterations && hi - lo > 0.0; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        if (h.lift(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace rotsync
