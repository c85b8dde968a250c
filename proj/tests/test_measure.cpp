#include "doctest.h"

#include "rotsync/measure.hpp"
#include "rotsync/rng.hpp"

#include <cmath>
#include <sstream>

using namespace rotsync;

TEST_CASE("arc mass on closed arcs, including wrap-around")
{
    EmpiricalMeasure mu({0.1, 0.2, 0.2, 0.5, 0.95});
    CHECK(mu.count() == 5);
    CHECK(mu.arc_mass(CirclePoint(0.1), CirclePoint(0.2)) == doctest::Approx(0.6));
    CHECK(mu.arc_mass(CirclePoint(0.9), CirclePoint(0.15)) == doctest::Approx(0.4));
    CHECK(mu.arc_mass(CirclePoint(0.6), CirclePoint(0.9)) == 0.0);
    CHECK(mu.max_multiplicity() == 2);
    CHECK(mu.fraction_below(0.2) == doctest::Approx(0.2));
    CHECK_THROWS_AS(EmpiricalMeasure({}), std::invalid_argument);
}

TEST_CASE("cdf is nondecreasing from its base and reaches 1")
{
    Rng rng(1);
    std::vector<double> xs(500);
    for (auto& x : xs)
        x = rng.uniform();
    EmpiricalMeasure mu(xs);
    double base = 0.37;
    double previous = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        double c = mu.cdf(CirclePoint(base), CirclePoint(base + i / 1000.0 * (1.0 - 1e-12)));
        CHECK(c >= previous);
        previous = c;
    }
    CHECK(previous == 1.0);
}

TEST_CASE("Kolmogorov distance")
{
    std::vector<double> grid;
    for (int i = 0; i < 1000; ++i)
        grid.push_back((i + 0.5) / 1000.0);
    EmpiricalMeasure uniform(grid);
    CHECK(uniform.ks_to_uniform() == doctest::Approx(0.0005));
    EmpiricalMeasure shifted({0.25, 0.75});
    CHECK(shifted.ks_to_uniform() == doctest::Approx(0.25));
    CHECK(ks_distance(uniform, uniform) == 0.0);
    CHECK(ks_distance(EmpiricalMeasure({0.1}), EmpiricalMeasure({0.9})) == 1.0);
}

TEST_CASE("interpolated cdf is a degree-one monotone map")
{
    Rng rng(2);
    std::vector<double> xs(300);
    for (auto& x : xs)
        x = std::pow(rng.uniform(), 2.0);
    xs.push_back(xs[3]); // a repeated value
    EmpiricalMeasure mu(xs);
    InterpolatedCdf c(mu, CirclePoint(0.6));
    CHECK(c(0.6) == 0.0);
    CHECK(c(1.6) == doctest::Approx(1.0));
    double previous = c(0.6);
    for (int i = 1; i <= 2000; ++i) {
        double x = 0.6 + i / 1000.0;
        double v = c(x);
        CHECK(v > previous);
        previous = v;
        CHECK(std::abs(c.inverse(v) - x) <= 1e-9);
    }
    // Within one sample of the empirical distribution function.
    for (int i = 0; i < 100; ++i) {
        double x = 0.6 + i / 100.0;
        CHECK(std::abs(c(x) - mu.cdf(CirclePoint(0.6), CirclePoint(x))) <= 2.0 / mu.count());
    }
}

TEST_CASE("histogram construction and export")
{
    CHECK_THROWS_AS(Histogram({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Histogram({1.5, -0.5}), std::invalid_argument);
    Histogram h = Histogram::from_measure(EmpiricalMeasure({0.1, 0.6, 0.7, 0.99}), 4);
    CHECK(h[0] == 0.25);
    CHECK(h[1] == 0.0);
    CHECK(h[2] == 0.5);
    CHECK(h[3] == 0.25);
    CHECK(l1_distance(h, Histogram::uniform(4)) == doctest::Approx(0.5));
    Histogram c = h.coarsened(2);
    CHECK(c[0] == 0.25);
    CHECK(c[1] == 0.75);
    CHECK_THROWS_AS(h.coarsened(3), std::invalid_argument);
    std::ostringstream out;
    h.write_csv(out);
    CHECK(out.str() == "bin_start,mass\n0,0.25\n0.25,0\n0.5,0.5\n0.75,0.25\n");
}

TEST_CASE("empirical measure export round-trips at 17 digits")
{
    EmpiricalMeasure mu({0.1, 1.0 / 3.0});
    std::ostringstream out;
    mu.write_csv(out);
    std::istringstream in(out.str());
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "sample");
    std::getline(in, line);
    CHECK(std::stod(line) == 0.1);
    std::getline(in, line);
    CHECK(std::stod(line) == 1.0 / 3.0);
}
