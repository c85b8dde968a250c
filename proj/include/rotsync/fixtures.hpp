#pragma once

#include "rotsync/rng.hpp"
#include "rotsync/system.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rotsync::fixtures {

/// Piecewise-linear Morse-Smale map: the arc of half-width delta around r is
/// stretched over everything but the arc of half-width delta around a, and
/// the complement is squeezed into the latter. Fixes a (attracting) and r
/// (repelling). Needs circle_distance(a, r) > 2 * delta.
Homeo morse_smale(double a, double r, double delta);

/// Bundled six-breakpoint piecewise-linear homeomorphism used as a
/// conjugating map.
Homeo bundled_conjugator();

/// {R_{sqrt2 - 1}, R_{sqrt3 - 1}}, uniform weights.
GeneratorSystem rotation_pair();
/// Parabolic pair [[1,2],[0,1]], [[1,0],[2,1]].
GeneratorSystem parabolic_pair();
/// {R_{sqrt2 - 1}, t -> 4t}, uniform weights.
GeneratorSystem generic_pair();
/// l-fold cover of generic_pair().
GeneratorSystem generic_cover(int l);
/// Four Morse-Smale maps; (0, 1) are in order A_f, R_f, A_g, R_g, (0, 2) in
/// order R_f, A_f, R_g, A_g, and (0, 3) have adjacent attractors.
GeneratorSystem morse_smale_quadruple();

/// Cyclic arrangement of the attracting and repelling arcs of two
/// Morse-Smale maps f, g.
enum class ArarOrder {
    Positive, // A_f, R_f, A_g, R_g
    Negative, // R_f, A_f, R_g, A_g
    Adjacent  // A_f and A_g adjacent in an arc that contains no repeller
};

/// The value of c(f, g) the arrangement forces.
int expected_cocycle(ArarOrder order);

/// Random pair of Morse-Smale maps in the given arrangement: four centers on
/// the circle at random rotation, gaps at least 0.1, arc half-width 0.02.
std::pair<Homeo, Homeo> random_arar_pair(ArarOrder order, Rng& rng);

/// Named fixtures for the command line and the fixture files.
std::vector<std::pair<std::string, GeneratorSystem>> bundled();

} // namespace rotsync::fixtures
