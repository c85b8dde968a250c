#pragma once

// Random instances for property tests.

#include "rotsync/homeo.hpp"
#include "rotsync/rng.hpp"
#include "rotsync/system.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rotsync::testing {

inline Homeo random_rotation(Rng& rng)
{
    return Homeo::rotation(rng.uniform());
}

inline Homeo random_pl(Rng& rng, int nodes = 5)
{
    std::vector<double> xs(nodes), ys(nodes);
    for (int i = 0; i < nodes; ++i) {
        xs[i] = rng.uniform();
        ys[i] = rng.uniform();
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    // Rotate the image list so the map is not close to the identity.
    std::size_t k = rng.below(nodes);
    std::rotate(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(k), ys.end());
    std::vector<Breakpoint> bps;
    for (int i = 0; i < nodes; ++i)
        bps.push_back({xs[i], ys[i]});
    return Homeo::piecewise_linear(bps);
}

inline Homeo random_moebius(Rng& rng)
{
    // Product of a rotation and a hyperbolic diagonal matrix in SL(2, R).
    double lambda = std::exp(2.0 * rng.uniform() - 1.0);
    double t = 3.141592653589793 * rng.uniform();
    double c = std::cos(t), s = std::sin(t);
    Matrix2 m{c * lambda, -s / lambda, s * lambda, c / lambda};
    return Homeo::moebius(m);
}

inline Homeo random_primitive(Rng& rng)
{
    switch (rng.below(3)) {
    case 0:
        return random_rotation(rng);
    case 1:
        return random_pl(rng, 2 + static_cast<int>(rng.below(6)));
    default:
        return random_moebius(rng);
    }
}

/// Any representation: primitives, words, inverses, conjugates, covers.
inline Homeo random_homeo(Rng& rng, int depth = 2)
{
    if (depth == 0)
        return random_primitive(rng);
    switch (rng.below(6)) {
    case 0: {
        std::vector<Homeo> gens = {random_primitive(rng), random_primitive(rng)};
        GeneratorSystem sys(gens);
        std::vector<Letter> letters(1 + rng.below(6));
        for (auto& l : letters)
            l = static_cast<Letter>(rng.below(2));
        return compose(sys, Word(letters));
    }
    case 1:
        return random_homeo(rng, depth - 1).inverse();
    case 2:
        return random_homeo(rng, depth - 1).conjugated_by(random_primitive(rng));
    case 3:
        return random_homeo(rng, depth - 1).cover(2 + static_cast<int>(rng.below(3)));
    case 4:
        return random_homeo(rng, depth - 1).shifted(static_cast<long>(rng.below(5)) - 2);
    default:
        return random_primitive(rng);
    }
}

} // namespace rotsync::testing
