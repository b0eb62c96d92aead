#pragma once

#include <map>
#include <vector>

#include "plumb/curve.hpp"
#include "plumb/jump.hpp"

namespace plumb {

/// Expansion of a period along a degenerating family:
///   sum_e log_coeff[e] * Log(s_e) + constant + sum_e linear[e] * s_e + O(s^2),
/// with principal logarithms. Keys are unoriented edge indices.
struct PeriodExpansion {
    std::map<int, cx> log_coeff;
    cx constant = 0.0;
    std::map<int, cx> linear;

    cx eval(const PlumbingParams& s) const;
};

/// Mid-component polylines of the canonical representative of a cycle: piece i
/// runs on component v(cycle[i]) from the chart boundary point of the entry
/// node (q + rho of -cycle[i-1]) to that of the exit node (q + rho of
/// cycle[i]), with deterministic arc detours around the other node disks and
/// around marked points.
std::vector<std::vector<cx>> canonical_path(const StableCurve& c, const CyclePath& cycle);

/// Period of the glued family along the canonical representative: the mid
/// polylines plus, at each node, the chord from the chart boundary to the seam
/// on both sides. Log branches are tracked continuously along the path.
cx period_numeric(const JumpSolution& sol, const CyclePath& cycle);

/// Log, constant and linear terms of the same period, from the jump data
/// alone. Shares the canonical path with period_numeric, so the two agree to
/// O(s^2) with no branch ambiguity.
PeriodExpansion period_expansion(const StableCurve& c, const JumpData& data,
                                 const CyclePath& cycle);

/// Residual of the crossing identity at node e: the two half-crossings of the
/// glued family versus r_e Log(s_e) plus the full chart integrals of the
/// correction orders. Bounded by the truncation tail.
double crossing_transfer_residual(const JumpSolution& sol, int e);

/// Third-kind basis dual to the seam cycles: basis differential k restricted
/// to component v. Normalized so the seam integral over a_edges[j] is
/// 2*pi*i*delta_{jk}.
std::vector<std::vector<RatDiff>> normalized_basis(const StableCurve& c,
                                                   const SymplecticBasis& basis);

struct PeriodMatrixResult {
    SymplecticBasis basis;
    std::vector<std::vector<PeriodExpansion>> expansion;  // [h][k]
    std::vector<std::vector<cx>> numeric;                 // [h][k]
};

PeriodMatrixResult period_matrix(const StableCurve& c, const PlumbingParams& s,
                                 const SolveOptions& opts = {});

}  // namespace plumb
