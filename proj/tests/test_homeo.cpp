#include "doctest.h"

#include "rotsync/fixtures.hpp"
#include "rotsync/homeo.hpp"
#include "rotsync/system.hpp"
#include "support/generators.hpp"

#include <cmath>

using namespace rotsync;
using rotsync::testing::random_homeo;

TEST_CASE("rotation lift")
{
    Homeo r = Homeo::rotation(0.25);
    CHECK(r.lift(0.5) == 0.75);
    CHECK(r.inverse_lift(0.75) == 0.5);
}

TEST_CASE("parabolic matrix fixes the point at infinity")
{
    // In the chart t = tan(pi x) the point at infinity is x = 1/2. The canonical
    // lift sends 0 (t = 0) to the chart position of t = 2.
    Homeo p = Homeo::moebius({1.0, 2.0, 0.0, 1.0});
    CHECK(p.lift(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.lift(0.0) >= 0.0);
    CHECK(p.lift(0.0) < 1.0);
    CHECK(p.lift(0.0) == doctest::Approx(std::atan(2.0) / 3.141592653589793));
}

TEST_CASE("two-segment piecewise-linear map")
{
    Homeo f = Homeo::piecewise_linear({{0.0, 0.2}, {0.5, 0.9}});
    CHECK(f.lift(0.25) == doctest::Approx(0.55).epsilon(1e-15));
    CHECK(f.lift(0.0) == doctest::Approx(0.2));
    // Second segment maps [0.5, 1] onto [0.9, 1.2].
    CHECK(f.lift(0.75) == doctest::Approx(1.05));
}

TEST_CASE("piecewise-linear validation")
{
    CHECK_THROWS_AS(Homeo::piecewise_linear({}), std::invalid_argument);
    CHECK_THROWS_AS(Homeo::piecewise_linear({{0.5, 0.1}, {0.2, 0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(Homeo::piecewise_linear({{0.1, 0.3}, {0.2, 0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(Homeo::piecewise_linear({{0.1, 0.3}, {1.2, 0.4}}), std::invalid_argument);
    // Images that wind more than once are not a homeomorphism.
    CHECK_THROWS_AS(Homeo::piecewise_linear({{0.0, 0.1}, {0.3, 0.6}, {0.6, 0.05}, {0.9, 0.5}}), std::invalid_argument);
}

TEST_CASE("moebius validation")
{
    CHECK_THROWS_AS(Homeo::moebius({2.0, 0.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("moebius inverse round trip for t -> 4t")
{
    Homeo f = Homeo::moebius({2.0, 0.0, 0.0, 0.5});
    double y = f.lift(0.1);
    CHECK(std::abs(f.inverse_lift(y) - 0.1) <= 1e-12);
    // Fixed points 0 (repelling) and 1/2 (attracting).
    CHECK(f.lift(0.0) == 0.0);
    CHECK(f.lift(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f.lift(0.4) > 0.4);
}

TEST_CASE("compose")
{
    GeneratorSystem rot({Homeo::rotation(0.3), Homeo::rotation(0.45)});
    CHECK(compose(rot, Word{0, 1}).lift(0.1) == doctest::Approx(0.85));
    CHECK(compose(rot, Word{}).lift(0.37) == 0.37);
    CHECK_THROWS_AS(compose(rot, Word{0, 2}).lift(0.0), std::out_of_range);

    Homeo f1 = Homeo::moebius({2.0, 0.0, 0.0, 0.5});
    Homeo f2 = Homeo::rotation(0.3);
    GeneratorSystem mixed({f1, f2});
    CHECK(compose(mixed, Word{0, 1}).lift(0.0) == f2.lift(f1.lift(0.0)));
    CHECK(compose(mixed, Word{0, 1}).lift(0.2) == f2.lift(f1.lift(0.2)));
}

TEST_CASE("lift properties on random maps")
{
    Rng rng(20240601);
    for (int trial = 0; trial < 300; ++trial) {
        Homeo h = random_homeo(rng);
        for (int k = 0; k < 20; ++k) {
            double x = rng.uniform();
            double fx = h.lift(x);
            CHECK(std::abs(h.lift(x + 1.0) - fx - 1.0) <= 1e-12);

            double y = x + 1e-3 + (1.0 - 2e-3) * rng.uniform();
            double fy = h.lift(y);
            CHECK(fx < fy);
            CHECK(fy < fx + 1.0);

            double back = h.inverse_lift(fx);
            CHECK(std::abs(back - x) <= 1e-10);
        }
    }
}

TEST_CASE("primitive lifts are periodic up to the final rounding")
{
    Rng rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        Homeo h = rotsync::testing::random_primitive(rng);
        for (int k = 0; k < 20; ++k) {
            // Dyadic x, so x + m is exact and only the integer add rounds.
            double x = std::ldexp(static_cast<double>(rng.below(1u << 20)), -20);
            double m = static_cast<double>(rng.below(5)) - 2.0;
            CHECK(std::abs(h.lift(x + m) - h.lift(x) - m) <= 0x1.0p-50);
        }
    }
}

TEST_CASE("closed-form inverses are accurate to 1e-12")
{
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Homeo h = rotsync::testing::random_primitive(rng);
        for (int k = 0; k < 10; ++k) {
            double x = 4.0 * rng.uniform() - 2.0;
            CHECK(std::abs(h.inverse_lift(h.lift(x)) - x) <= 1e-12);
            CHECK(std::abs(h.lift(h.inverse_lift(x)) - x) <= 1e-12);
        }
    }
}

TEST_CASE("inverse agrees with bisection")
{
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        Homeo h = random_homeo(rng);
        double y = 3.0 * rng.uniform() - 1.0;
        CHECK(std::abs(h.inverse_lift(y) - invert_by_bisection(h, y)) <= 1e-10);
    }
}

TEST_CASE("canonical normalization of primitive lifts")
{
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        Homeo h = rotsync::testing::random_primitive(rng);
        double f0 = h.lift(0.0);
        CHECK(f0 >= 0.0);
        CHECK(f0 < 1.0);
    }
}

TEST_CASE("composition is associative")
{
    Rng rng(3);
    std::vector<Homeo> gens;
    for (int i = 0; i < 3; ++i)
        gens.push_back(rotsync::testing::random_primitive(rng));
    GeneratorSystem sys(gens);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Letter> a(rng.below(8)), b(rng.below(8));
        for (auto& l : a)
            l = static_cast<Letter>(rng.below(3));
        for (auto& l : b)
            l = static_cast<Letter>(rng.below(3));
        Word u(a), v(b);
        double x = rng.uniform();
        CHECK(std::abs(compose(sys, u + v).lift(x) - compose(sys, v).lift(compose(sys, u).lift(x))) <= 1e-12);
    }
}

TEST_CASE("conjugation, shift, cover and quotient")
{
    Homeo f = Homeo::moebius({2.0, 0.0, 0.0, 0.5});
    Homeo h = fixtures::bundled_conjugator();
    Homeo g = f.conjugated_by(h);
    for (double x : {0.1, 0.37, 0.8}) {
        CHECK(g.lift(h.lift(x)) == doctest::Approx(h.lift(f.lift(x))).epsilon(1e-12));
        CHECK(f.shifted(3).lift(x) == f.lift(x) + 3.0);
    }
    Homeo c = f.cover(3);
    for (double x : {0.05, 0.41, 0.93}) {
        CHECK(std::abs(c.lift(x + 1.0 / 3) - c.lift(x) - 1.0 / 3) <= 1e-15);
        CHECK(std::abs(c.quotient(3).lift(x) - f.lift(x)) <= 1e-12);
    }
    CHECK(Homeo::rotation(0.3).cover(2).kind() == Homeo::Kind::Rotation);
    CHECK(Homeo::rotation(0.3).cover(2).lift(0.0) == doctest::Approx(0.15));
}

TEST_CASE("rigid angle")
{
    GeneratorSystem rot({Homeo::rotation(0.3), Homeo::rotation(0.45)});
    auto angle = compose(rot, Word{0, 1, 1}).rigid_angle();
    REQUIRE(angle.has_value());
    CHECK(*angle == doctest::Approx(1.2));
    CHECK_FALSE(fixtures::generic_pair().generator(1).rigid_angle().has_value());
}

TEST_CASE("morse-smale fixture has the prescribed fixed points")
{
    Homeo f = fixtures::morse_smale(0.05, 0.6, 0.03);
    CHECK(f.lift(0.05) == doctest::Approx(0.05));
    CHECK(CirclePoint(f.lift(0.6)).value() == doctest::Approx(0.6));
    // Complement of the repelling arc lands in the attracting arc.
    for (double x = 0.64; x < 1.56; x += 0.01) {
        CHECK(circle_distance(f.lift(x), 0.05) <= 0.03 + 1e-12);
    }
}
