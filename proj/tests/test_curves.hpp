#pragma once

#include <cmath>
#include <string>

#include "plumb/curve.hpp"

// Shared test geometries.
namespace testgeo {

using plumb::cx;
using plumb::EdgeData;
using plumb::StableCurve;

/// Irreducible genus-g curve: one rational component, g self-nodes.
/// g = 1 uses nodes at +-2; higher genus spreads antipodal pairs on a circle
/// of radius 5.
inline StableCurve tot_deg(int g) {
    StableCurve c;
    c.vertex_names = {"c0"};
    if (g == 1) {
        c.edges.push_back({"n1", 0, 0, cx(2.0), cx(-2.0), 1.0, 1.0});
        c.marked.push_back({0, cx(0.0), 1});
        return c;
    }
    for (int k = 0; k < g; ++k) {
        double th = M_PI * k / 3.0;
        cx q = 5.0 * cx(std::cos(th), std::sin(th));
        c.edges.push_back({"n" + std::to_string(k + 1), 0, 0, q, -q, 1.0, 1.0});
    }
    if (g <= 2) c.marked.push_back({0, cx(0.0, g == 2 ? -3.5 : 0.0), 1});
    return c;
}

/// Two rational components joined at two nodes over +-2, one marked point on
/// each component at the origin.
inline StableCurve banana() {
    StableCurve c;
    c.vertex_names = {"a", "b"};
    c.edges.push_back({"n1", 0, 1, cx(2.0), cx(2.0), 1.0, 1.0});
    c.edges.push_back({"n2", 0, 1, cx(-2.0), cx(-2.0), 1.0, 1.0});
    c.marked.push_back({0, cx(0.0), 1});
    c.marked.push_back({1, cx(0.0), 1});
    return c;
}

/// Two rational components joined at three nodes over -4, 0, 4.
inline StableCurve theta() {
    StableCurve c;
    c.vertex_names = {"u", "w"};
    c.edges.push_back({"n1", 0, 1, cx(-4.0), cx(-4.0), 1.0, 1.0});
    c.edges.push_back({"n2", 0, 1, cx(0.0), cx(0.0), 1.0, 1.0});
    c.edges.push_back({"n3", 0, 1, cx(4.0), cx(4.0), 1.0, 1.0});
    return c;
}

}  // namespace testgeo
