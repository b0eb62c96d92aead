#pragma once

#include <map>
#include <string>
#include <vector>

#include "plumb/curve.hpp"
#include "plumb/jump.hpp"
#include "plumb/ratdiff.hpp"

namespace plumb {

/// Per-component differentials with a full level structure. Levels run over
/// {0, -1, ..., 1-N} with the maxima at level 0.
struct TwistedData {
    std::vector<RatDiff> xi;  // one differential per vertex
    std::vector<int> level;   // one level per vertex
};

/// Vanishing/pole order of f at q: negative for poles, Taylor order for
/// zeros (capped at 12). Orders are decided against the coefficient scale
/// of f, so tiny rounding residue does not shift them.
int local_order(const RatDiff& f, cx q);

struct CompatReport {
    struct Item {
        std::string condition;
        bool pass;
        std::string detail;
    };
    std::vector<Item> items;
    bool clean() const;
    bool passed(const std::string& condition) const;
};

/// Itemized audit of the twisted data against the stable limit omega:
///   order_at_marked   zeros at marked points have the prescribed multiplicity
///   poles_at_nodes    the only singularities sit at nodes
///   node_order_sum    orders across each node sum to -2
///   matching_residues opposite residues when both sides have simple poles
///   level_order       level comparison matches pole-order comparison,
///                     equal levels exactly for (-1,-1) nodes
///   global_residue    per level and upper vertex, the lower-end residues of
///                     its down-going nodes sum to zero
///   maxima            omega is nonzero exactly on level-0 components and
///                     agrees with the twisted differential there
CompatReport check_compatibility(const StableCurve& c, const TwistedData& data,
                                 const std::vector<RatDiff>& omega);

/// Minimal-pole-set residue matcher for vertex v against level j: simple poles
/// exactly at the nodes of v facing level j, with residues opposite to the
/// lower-side residues. Throws if those residues do not sum to zero (no
/// rational differential carries the data).
RatDiff modification_differential(const StableCurve& c, const TwistedData& data, int v, int j);

/// One parameter per level drop; t[k] scales the drop from level -k to
/// level -k-1.
struct ScalingParams {
    std::vector<cx> t;  // t_{-1}, ..., t_{1-N}

    /// t_{0,j} = prod of the drops from level 0 down to level j <= 0.
    cx from_top(int j) const;
    /// t_{i,j} = t_{0,j} / t_{0,i} for levels i >= j, computed as a product.
    cx between(int i, int j) const;
};

/// Plumbing parameters induced by the scaling parameters: a node whose upper
/// side has a zero of order k_e gets the principal (k_e+1)-th root of the
/// level-drop product. Horizontal nodes are unconstrained; they default to
/// the geometric mean of the down-edge magnitudes and can be overridden
/// per unoriented edge.
PlumbingParams scaling_to_plumbing(const StableCurve& c, const TwistedData& data,
                                   const ScalingParams& t,
                                   const std::map<int, cx>& horizontal = {});

struct TwistedFamily {
    JumpSolution sol;           // base[v] = scale[v] * xihat[v]
    std::vector<RatDiff> xihat; // per-vertex differential with modifications
    std::vector<cx> scale;      // per-vertex t_{0, level}
    PlumbingParams params;
};

/// Glues the twisted data into a degenerating family: adds the modification
/// differentials, forms the level-scaled initial data at every node (principal
/// parts carried through the gluing on the upper sides, holomorphic parts on
/// the lower sides), and runs the jump solver. Throws logic_error if some
/// initial datum fails to be holomorphic in its chart beyond rounding, which
/// signals incompatible input.
TwistedFamily build_twisted_family(const StableCurve& c, const TwistedData& data,
                                   const ScalingParams& t,
                                   const std::map<int, cx>& horizontal = {},
                                   const SolveOptions& opts = {});

/// Number of zeros minus poles of f inside the circle, by the argument
/// principle with trapezoid sampling of f'/f.
int zero_count(const RatDiff& f, cx center, double radius, int samples = 512);

/// Sup over the sample points of |scale_v^{-1} * glued_v - xi_v|: how far the
/// rescaled restriction of the family sits from the twisted differential.
double restriction_error(const TwistedFamily& fam, const std::vector<RatDiff>& xi, int v,
                         const std::vector<cx>& pts);

}  // namespace plumb
