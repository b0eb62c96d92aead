#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "plumb/curve.hpp"
#include "plumb/kernels.hpp"
#include "plumb/ratdiff.hpp"

namespace plumb {

/// Initial jump data: one differential per component plus, for every oriented
/// edge, the regular part xi_e^{(0)} at the node q_e and the residue r_e.
struct JumpData {
    std::vector<RatDiff> base;   // per-vertex differential
    std::map<int, RatDiff> xi0;  // oriented edge -> regular part at q_e
    std::map<int, cx> residue;   // oriented edge -> r_e
};

/// Splits a stable differential (per-component restrictions, at worst simple
/// poles with opposite residues at the nodes) into jump data. Throws if a node
/// carries a higher-order pole or the residues fail to cancel.
JumpData initial_data(const StableCurve& c, const std::vector<RatDiff>& omega);

struct SolveOptions {
    double tol = 1e-14;         // relative to the seam norm of xi^{(0)}
    int k_max = 32;
    double refuse_ratio = 0.5;  // refuse when the contraction estimate exceeds this
    bool force = false;         // return a partial sum instead of refusing
    int k_fixed = 0;            // if > 0, run exactly this many correction orders
};

/// Thrown when the correction series fails to contract fast enough.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Converged correction series. xi[e][k] and eta[v][k-1] hold the order-k
/// terms; the glued family on component v is base[v] + sum_k eta[v][k-1].
struct JumpSolution {
    StableCurve curve;
    PlumbingParams params;
    std::vector<RatDiff> base;
    std::map<int, std::vector<RatDiff>> xi;   // oriented edge -> orders 0..K
    std::vector<std::vector<RatDiff>> eta;    // vertex -> orders 1..K
    int K = 0;
    double xi0_norm = 0.0;    // seam sup-norm of the order-0 data
    double ratio = 0.0;       // last observed contraction factor
    double tail_bound = 0.0;  // seam sup-norm bound on the dropped tail

    const RatDiff& eta_order(int v, int k) const { return eta[v][k - 1]; }
    RatDiff eta_total(int v) const;
    RatDiff xi_total(int e) const;
    /// base[v] + eta_total(v): the degenerating family member on component v.
    RatDiff glued(int v) const;
};

JumpSolution solve_jump(const StableCurve& c, const PlumbingParams& s, const JumpData& data,
                        const SolveOptions& opts = {});

/// Leading term of the first correction:
///   eta_v^{(1)} = -sum_{e at v} s_e rho_e xi~_{-e} dz/(z-q_e)^2,
/// with xi~_{-e} the in-chart value of xi_{-e}^{(0)} at the opposite node.
std::vector<RatDiff> first_order(const StableCurve& c, const PlumbingParams& s,
                                 const JumpData& data);

/// Leading term of the order-k correction on component v as a sum over
/// length-k walks in the dual graph: each walk (e_1,...,e_k) starting at v
/// contributes (-1)^k prod_i s_{e_i} * omega_v(z,q_{e_1}) * prod_j
/// beta_{-e_j,e_{j+1}} * xi~_{-e_k}.
RatDiff leading_term(const StableCurve& c, const PlumbingParams& s, const JumpData& data,
                     int v, int k);

/// Sup over seams of the mismatch between the glued family on the two sides
/// of each node, sampled at `samples` points per seam (in-chart values).
double jump_residual(const JumpSolution& sol, int samples = 16);

/// Sup over seams of |loop integral of the correction|, evaluated exactly by
/// residues. Zero for the constructed solution up to rounding.
double a_norm_residual(const JumpSolution& sol);

/// L2 norm of the correction on component v (sphere minus the seam disks),
/// via Stokes on the seam circles with trapezoid sampling.
double l2_norm(const JumpSolution& sol, int v, int samples = 256);

/// Seam sup-norm of one per-edge family of differentials (in-chart values on
/// the seam circles).
double seam_norm(const StableCurve& c, const PlumbingParams& s,
                 const std::map<int, RatDiff>& xi_k, int samples = 16);

}  // namespace plumb
