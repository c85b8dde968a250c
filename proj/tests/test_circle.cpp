#include "doctest.h"

#include "rotsync/circle.hpp"
#include "rotsync/rng.hpp"

using namespace rotsync;

TEST_CASE("points reduce mod 1")
{
    CHECK(CirclePoint(1.25).value() == doctest::Approx(0.25));
    CHECK(CirclePoint(-0.25).value() == doctest::Approx(0.75));
    CHECK(CirclePoint(3.0).value() == 0.0);
    CHECK(CirclePoint(-1e-18).value() < 1.0);
}

TEST_CASE("arc length and closed containment")
{
    Arc arc(CirclePoint(0.9), CirclePoint(0.1));
    CHECK(arc.length() == doctest::Approx(0.2));
    CHECK(arc.contains(CirclePoint(0.9)));
    CHECK(arc.contains(CirclePoint(0.1)));
    CHECK(arc.contains(CirclePoint(0.0)));
    CHECK_FALSE(arc.contains(CirclePoint(0.5)));
    CHECK(arc.midpoint().value() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("circle distance")
{
    CHECK(circle_distance(0.05, 0.95) == doctest::Approx(0.1));
    CHECK(circle_distance(0.2, 0.7) == doctest::Approx(0.5));
}

TEST_CASE("cyclic order examples")
{
    CHECK(cyclic_order(CirclePoint(0.0), CirclePoint(1.0 / 3), CirclePoint(2.0 / 3), 1e-9) == CyclicOrder::Positive);
    CHECK(cyclic_order(CirclePoint(0.0), CirclePoint(2.0 / 3), CirclePoint(1.0 / 3), 1e-9) == CyclicOrder::Negative);
    CHECK(cyclic_order(CirclePoint(0.0), CirclePoint(1e-12), CirclePoint(0.5), 1e-9) == CyclicOrder::Degenerate);
}

TEST_CASE("cyclic order is rotation invariant and flips under swaps")
{
    Rng rng(11);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        double a = rng.uniform(), b = rng.uniform(), c = rng.uniform(), s = rng.uniform();
        CyclicOrder o = cyclic_order(CirclePoint(a), CirclePoint(b), CirclePoint(c));
        CHECK(cyclic_order(CirclePoint(a + s), CirclePoint(b + s), CirclePoint(c + s)) == o);
        if (o == CyclicOrder::Degenerate)
            continue;
        CyclicOrder flipped = o == CyclicOrder::Positive ? CyclicOrder::Negative : CyclicOrder::Positive;
        CHECK(cyclic_order(CirclePoint(b), CirclePoint(a), CirclePoint(c)) == flipped);
        CHECK(cyclic_order(CirclePoint(a), CirclePoint(c), CirclePoint(b)) == flipped);
        // Cyclic relabelling keeps the order.
        CHECK(cyclic_order(CirclePoint(b), CirclePoint(c), CirclePoint(a)) == o);
        ++checked;
    }
    CHECK(checked > 1900);
}

TEST_CASE("several points in cyclic order")
{
    CirclePoint pts[] = {CirclePoint(0.8), CirclePoint(0.1), CirclePoint(0.3), CirclePoint(0.5)};
    CHECK(in_cyclic_order(pts, 4));
    CirclePoint bad[] = {CirclePoint(0.8), CirclePoint(0.3), CirclePoint(0.1), CirclePoint(0.5)};
    CHECK_FALSE(in_cyclic_order(bad, 4));
}
