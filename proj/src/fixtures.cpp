#include "rotsync/fixtures.hpp"

#include "rotsync/circle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace rotsync::fixtures {

Homeo morse_smale(double a, double r, double delta)
{
    if (!(delta > 0.0) || !(circle_distance(a, r) > 2.0 * delta))
        throw std::invalid_argument("morse_smale: attractor and repeller arcs overlap");
    r = wrap01(r);
    // Lift a into (r + delta, r + 1 - delta).
    double al = r + forward_distance(CirclePoint(r), CirclePoint(a));
    std::vector<Breakpoint> bps = {
        {wrap01(r - delta), wrap01(al + delta)},
        {r, r},
        {wrap01(r + delta), wrap01(al - delta)},
        {wrap01(al), wrap01(al)},
    };
    std::sort(bps.begin(), bps.end(), [](const Breakpoint& x, const Breakpoint& y) { return x.point < y.point; });
    return Homeo::piecewise_linear(bps);
}

Homeo bundled_conjugator()
{
    return Homeo::piecewise_linear({{0.0, 0.03},
                                    {0.15, 0.22},
                                    {0.33, 0.37},
                                    {0.5, 0.49},
                                    {0.7, 0.61},
                                    {0.85, 0.8}});
}

GeneratorSystem rotation_pair()
{
    return GeneratorSystem({Homeo::rotation(std::sqrt(2.0) - 1.0), Homeo::rotation(std::sqrt(3.0) - 1.0)});
}

GeneratorSystem parabolic_pair()
{
    return GeneratorSystem({Homeo::moebius({1.0, 2.0, 0.0, 1.0}), Homeo::moebius({1.0, 0.0, 2.0, 1.0})});
}

GeneratorSystem generic_pair()
{
    return GeneratorSystem({Homeo::rotation(std::sqrt(2.0) - 1.0), Homeo::moebius({2.0, 0.0, 0.0, 0.5})});
}

GeneratorSystem generic_cover(int l)
{
    GeneratorSystem base = generic_pair();
    std::vector<Homeo> gens;
    for (const auto& g : base.generators())
        gens.push_back(g.cover(l));
    return GeneratorSystem(std::move(gens), base.nu());
}

GeneratorSystem morse_smale_quadruple()
{
    constexpr double d = 0.03;
    return GeneratorSystem({morse_smale(0.05, 0.6, d), morse_smale(0.75, 0.9, d), morse_smale(0.4, 0.2, d),
                            morse_smale(0.95, 0.3, d)});
}

int expected_cocycle(ArarOrder order)
{
    switch (order) {
    case ArarOrder::Positive:
        return 1;
    case ArarOrder::Negative:
        return -1;
    case ArarOrder::Adjacent:
        return 0;
    }
    return 0;
}

std::pair<Homeo, Homeo> random_arar_pair(ArarOrder order, Rng& rng)
{
    constexpr double min_gap = 0.1;
    constexpr double half_width = 0.02;
    // Four gaps >= min_gap summing to 1.
    std::array<double, 4> gaps{};
    double total = 0.0;
    for (double& g : gaps) {
        g = -std::log(1.0 - rng.uniform());
        total += g;
    }
    double spare = 1.0 - 4.0 * min_gap;
    std::array<double, 4> pos{};
    double x = rng.uniform();
    for (int i = 0; i < 4; ++i) {
        pos[i] = wrap01(x);
        x += min_gap + spare * gaps[i] / total;
    }
    // pos[0..3] are in positive cyclic order.
    switch (order) {
    case ArarOrder::Positive:
        return {morse_smale(pos[0], pos[1], half_width), morse_smale(pos[2], pos[3], half_width)};
    case ArarOrder::Negative:
        return {morse_smale(pos[1], pos[0], half_width), morse_smale(pos[3], pos[2], half_width)};
    case ArarOrder::Adjacent:
        // A_f, R_f, R_g, A_g: A_g and A_f are neighbours across the wrap.
        if (rng.below(2) == 0)
            return {morse_smale(pos[0], pos[1], half_width), morse_smale(pos[3], pos[2], half_width)};
        return {morse_smale(pos[0], pos[2], half_width), morse_smale(pos[3], pos[1], half_width)};
    }
    throw std::invalid_argument("unknown arrangement");
}

std::vector<std::pair<std::string, GeneratorSystem>> bundled()
{
    return {
        {"rotations", rotation_pair()},
        {"parabolic", parabolic_pair()},
        {"generic", generic_pair()},
        {"morse_smale", morse_smale_quadruple()},
        {"generic_cover2", generic_cover(2)},
        {"generic_cover3", generic_cover(3)},
    };
}

} // namespace rotsync::fixtures
