#include "doctest.h"

#include "rotsync/classifier.hpp"
#include "rotsync/fixtures.hpp"
#include "rotsync/rotnum.hpp"
#include "support/generators.hpp"

#include <cmath>
#include <numeric>
#include <omp.h>

using namespace rotsync;

namespace {

constexpr std::size_t kN = 200;
constexpr std::size_t kM = 10000;
constexpr double kWindow = 1.0 / (2.0 * kN);

} // namespace

TEST_CASE("spectrum of the rotation pair is equidistributed")
{
    auto sp = rotation_spectrum(fixtures::rotation_pair(), kN, kM, 1);
    CHECK(sp.count() == kM);
    CHECK(sp.ks_to_uniform() <= 0.05);
}

TEST_CASE("spectrum of the generic pair concentrates at 0")
{
    auto sp = rotation_spectrum(fixtures::generic_pair(), kN, kM, 2);
    CHECK(sp.mass_near(CirclePoint(0.0), kWindow) >= 0.9);
}

TEST_CASE("spectrum of the double cover splits between 0 and 1/2")
{
    auto sp = rotation_spectrum(fixtures::generic_cover(2), kN, kM, 3);
    double m0 = sp.mass_near(CirclePoint(0.0), kWindow);
    double m1 = sp.mass_near(CirclePoint(0.5), kWindow);
    CHECK(m0 >= 0.45);
    CHECK(m0 <= 0.55);
    CHECK(m1 >= 0.45);
    CHECK(m1 <= 0.55);
}

TEST_CASE("spectrum is deterministic across execution modes")
{
    auto sys = fixtures::generic_cover(3);
    auto serial = rotation_spectrum(sys, 50, 500, 9, Execution::Serial);
    omp_set_num_threads(3);
    auto parallel = rotation_spectrum(sys, 50, 500, 9, Execution::Parallel);
    CHECK(serial.samples() == parallel.samples());
    CHECK_FALSE(rotation_spectrum(sys, 50, 500, 10).samples() == serial.samples());
}

TEST_CASE("classification of the canonical fixtures")
{
    auto rot = classify(fixtures::rotation_pair(), kN, kM, 11);
    CHECK(rot.verdict == Verdict::InvariantMeasure);
    CHECK(rot.atom_masses.empty());
    CHECK(rot.N_used == kN);
    CHECK(rot.M_used == kM);

    auto gen = classify(fixtures::generic_pair(), kN, kM, 12);
    CHECK(gen.verdict == Verdict::Synchronizing);
    CHECK(gen.zero_fraction >= 0.9);

    auto c2 = classify(fixtures::generic_cover(2), kN, kM, 13);
    CHECK(c2.verdict == Verdict::Factorizable);
    CHECK(c2.l == 2);
    REQUIRE(c2.atom_masses.size() == 2);

    auto c3 = classify(lift_cover(fixtures::generic_pair(), 3), kN, kM, 14);
    CHECK(c3.verdict == Verdict::Factorizable);
    CHECK(c3.l == 3);
    for (const auto& a : c3.atom_masses)
        CHECK(std::abs(a.mass - 1.0 / 3) <= 0.05);
}

TEST_CASE("decision rule on synthetic spectra")
{
    std::size_t N = 100;
    // All mass at 0: synchronizing, not a factor (other atoms are empty).
    auto sync = classify_spectrum(EmpiricalMeasure(std::vector<double>(100, 0.0)), N);
    CHECK(sync.verdict == Verdict::Synchronizing);
    CHECK(sync.zero_fraction == 1.0);

    // Equal atoms at multiples of 1/4: the smallest matching l is 4 (l = 2 has
    // only half the mass).
    std::vector<double> quarters;
    for (int i = 0; i < 400; ++i)
        quarters.push_back((i % 4) / 4.0);
    auto f4 = classify_spectrum(EmpiricalMeasure(quarters), N);
    CHECK(f4.verdict == Verdict::Factorizable);
    CHECK(f4.l == 4);

    // Atoms at 0 and 1/2 match l = 2 before l = 4.
    std::vector<double> halves;
    for (int i = 0; i < 400; ++i)
        halves.push_back((i % 2) / 2.0);
    CHECK(classify_spectrum(EmpiricalMeasure(halves), N).l == 2);

    // Lopsided atoms are not a factor: 0.9 at 0 and 0.1 at 1/2.
    std::vector<double> lopsided(90, 0.0);
    lopsided.insert(lopsided.end(), 10, 0.5);
    CHECK(classify_spectrum(EmpiricalMeasure(lopsided), N).verdict == Verdict::Synchronizing);

    // Uniform grid.
    std::vector<double> grid;
    for (int i = 0; i < 1000; ++i)
        grid.push_back((i + 0.5) / 1000);
    CHECK(classify_spectrum(EmpiricalMeasure(grid), N).verdict == Verdict::InvariantMeasure);

    // Neither: everything on one non-rational point.
    std::vector<double> stuck(100, 0.3141);
    try {
        classify_spectrum(EmpiricalMeasure(stuck), N);
        FAIL("expected Inconclusive");
    } catch (const Inconclusive& e) {
        CHECK(e.report().M_used == 100);
        CHECK(e.report().zero_fraction == 0.0);
    }
}

TEST_CASE("linearizer of Lebesgue is the identity")
{
    std::size_t n = 10000;
    std::vector<double> grid;
    for (std::size_t i = 0; i < n; ++i)
        grid.push_back((i + 0.5) / n);
    MapTable t = linearizer(fixtures::rotation_pair(), EmpiricalMeasure(grid));
    CHECK(t.x.size() == 1024);
    CHECK(t.strictly_increasing());
    CHECK(t.degree() == doctest::Approx(1.0));
    for (std::size_t s = 0; s < t.x.size(); ++s)
        CHECK(std::abs(t.y[s] - t.x[s]) <= 2.0 / n);
}

TEST_CASE("linearizer of an irrational rotation orbit")
{
    GeneratorSystem rot({Homeo::rotation(std::sqrt(2.0) - 1.0)});
    auto mu = birkhoff_orbit(rot, 0, 100000, 1);
    MapTable t = linearizer(rot, mu);
    for (std::size_t s = 0; s < t.x.size(); ++s)
        CHECK(std::abs(t.y[s] - t.x[s]) <= 0.01);
}

TEST_CASE("linearizer flattens conjugated rotations")
{
    Homeo h = fixtures::bundled_conjugator();
    auto sys = fixtures::rotation_pair().conjugated_by(h);
    CHECK(displacement_oscillation(sys.generator(0)) > 0.1);
    auto mu = birkhoff_orbit(sys, 1000, 100000, 5);
    MapTable t = linearizer(sys, mu);
    CHECK(t.strictly_increasing());
    CHECK(t.degree() == doctest::Approx(1.0));
    Homeo phi = t.to_homeo();
    for (const auto& g : sys.generators())
        CHECK(displacement_oscillation(g.conjugated_by(phi)) <= 0.02);
}

TEST_CASE("linearizer rejects atoms")
{
    std::vector<double> xs = {0.1, 0.2, 0.2, 0.2, 0.7};
    CHECK_THROWS_AS(linearizer(fixtures::rotation_pair(), EmpiricalMeasure(xs)), AtomDetected);
    xs.pop_back();
    xs.erase(xs.begin() + 1);
    CHECK_NOTHROW(linearizer(fixtures::rotation_pair(), EmpiricalMeasure(xs)));
}

TEST_CASE("cover of a rotation")
{
    auto c = lift_cover(GeneratorSystem({Homeo::rotation(0.3)}), 2);
    CHECK(c.generator(0).kind() == Homeo::Kind::Rotation);
    CHECK(c.generator(0).lift(0.1) == doctest::Approx(0.25));
}

TEST_CASE("covers commute with the deck rotation")
{
    Rng rng(3);
    for (int l : {2, 3, 5}) {
        auto sys = lift_cover(fixtures::generic_pair(), l);
        for (const auto& f : sys.generators())
            for (int i = 0; i < 200; ++i) {
                double x = rng.uniform();
                CHECK(std::abs(f.lift(x + 1.0 / l) - f.lift(x) - 1.0 / l) <= 1e-15);
            }
    }
}

TEST_CASE("quotient undoes the cover")
{
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Homeo> gens = {rotsync::testing::random_homeo(rng), rotsync::testing::random_homeo(rng)};
        GeneratorSystem s(gens);
        int l = 2 + static_cast<int>(rng.below(4));
        auto back = factor_quotient(lift_cover(s, l), l);
        for (std::size_t i = 0; i < s.size(); ++i)
            for (int k = 0; k < 50; ++k) {
                double x = 3.0 * rng.uniform() - 1.0;
                CHECK(std::abs(back.generator(i).lift(x) - s.generator(i).lift(x)) <= 1e-9);
            }
    }
}

TEST_CASE("quotient multiplies translation numbers by l")
{
    auto cover = fixtures::generic_cover(3);
    auto quotient = factor_quotient(cover, 3);
    Rng rng(6);
    int exact = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Word w = sample_word(cover.nu(), 1 + rng.below(12), rng.engine()());
        auto up = translation_number(compose(cover, w), 1e-3);
        auto down = translation_number(compose(quotient, w), 1e-3);
        if (up.exact()) {
            REQUIRE(down.exact());
            // p/q scaled by 3, in lowest terms.
            long g = std::gcd(3 * up.p, up.q);
            CHECK(down.p == 3 * up.p / g);
            CHECK(down.q == up.q / g);
            ++exact;
        } else {
            CHECK(std::abs(down.value - 3.0 * up.value) <= down.error_bound + 3.0 * up.error_bound);
        }
    }
    CHECK(exact > 20);
}

TEST_CASE("quotient of a non-equivariant system")
{
    CHECK_THROWS_AS(factor_quotient(fixtures::generic_pair(), 2), NotEquivariant);
    CHECK_THROWS_AS(factor_quotient(fixtures::generic_cover(2), 3), NotEquivariant);
}
