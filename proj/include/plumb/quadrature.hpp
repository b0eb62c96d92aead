#pragma once

#include <map>
#include <vector>

#include "plumb/curve.hpp"
#include "plumb/jump.hpp"

namespace plumb {

/// Trapezoid-rule realization of the seam-integral recursion, independent of
/// the closed-form solver. Each correction order is stored as sampled values
/// on the seam circles; the gluing map permutes the sample nodes, so no
/// interpolation is ever needed.
struct QuadratureSolution {
    StableCurve curve;
    PlumbingParams params;
    std::vector<RatDiff> base;
    int n = 64;  // samples per seam
    int K = 0;   // correction orders computed

    std::map<int, std::vector<cx>> nodes;  // e -> seam sample points (global coords)
    // xi[e][k][j]: coefficient of xi_e^{(k)} at nodes[e][j], k = 0..K
    std::map<int, std::vector<std::vector<cx>>> xi;
    // pulled[e][k][j]: coefficient of xi_{-e}^{(k)} carried through the node,
    // at nodes[e][j], k = 0..K-1
    std::map<int, std::vector<std::vector<cx>>> pulled;

    /// Cauchy sum of the order-k pulled data on seam e, evaluated at z.
    cx seam_integral(int e, int k, cx z) const;
    /// Order-k correction on component v at z (z outside the seam disks).
    cx eta_order(int v, int k, cx z) const;
    cx eta_total(int v, cx z) const;
    cx glued_value(int v, cx z) const;
};

QuadratureSolution quad_solve(const StableCurve& c, const PlumbingParams& s, const JumpData& data,
                              int K, int n = 64);

}  // namespace plumb
