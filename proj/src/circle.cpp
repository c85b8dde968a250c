#include "rotsync/circle.hpp"

namespace rotsync {

CyclicOrder cyclic_order(CirclePoint a, CirclePoint b, CirclePoint c, double eps)
{
    if (circle_distance(a, b) <= eps || circle_distance(b, c) <= eps || circle_distance(a, c) <= eps)
        return CyclicOrder::Degenerate;
    return forward_distance(a, b) < forward_distance(a, c) ? CyclicOrder::Positive : CyclicOrder::Negative;
}

bool in_cyclic_order(const CirclePoint* points, int n, double eps)
{
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (circle_distance(points[i], points[j]) <= eps)
                return false;
    double previous = 0.0;
    for (int i = 1; i < n; ++i) {
        double d = forward_distance(points[0], points[i]);
        if (d <= previous)
            return false;
        previous = d;
    }
    return true;
}

} // namespace rotsync
