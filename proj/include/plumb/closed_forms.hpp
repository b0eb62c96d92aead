#pragma once

#include <map>
#include <utility>

#include "plumb/curve.hpp"
#include "plumb/periods.hpp"
#include "plumb/ratdiff.hpp"

// Reference values for the low-order variational terms, written out by direct
// arithmetic on the chart data. Nothing here calls the solver; the test suite
// uses these as independent ground truth, and the CLI can print them.
namespace plumb::ref {

/// In-chart value at node e of the part of f that is regular there. A simple
/// pole at the node itself is discarded first.
cx xi_tilde(const StableCurve& c, const RatDiff& f, int e);

/// In-chart value at node e of the holomorphic part of f. Same as xi_tilde;
/// kept as a separate name because the period formulas use it for a different
/// differential (the dual basis differential of the cycle).
cx sigma_value(const StableCurve& c, const RatDiff& f, int e);

/// First-order correction on an irreducible component carrying one node pair
/// q1, q2 (chart radii rho1, rho2), with regular in-chart values xi1t, xi2t:
///   -s (rho1 xi2t dz/(z-q1)^2 + rho2 xi1t dz/(z-q2)^2).
RatDiff one_node_first_order(cx q1, cx q2, double rho1, double rho2, cx s, cx xi1t, cx xi2t);

/// One separating node between two components; returns the corrections on the
/// two sides through second order. beta1/beta2 are the same-chart constants of
/// the fundamental bidifferential at the nodes; they vanish identically on
/// rational sides, so the second-order term only survives under a
/// positive-genus kernel:
///   side i: -s rho_i xi_{i'}t dz/(z-q_i)^2 + s^2 rho_i beta_{i'} xi_it dz/(z-q_i)^2.
std::pair<RatDiff, RatDiff> separating_corrections(cx q1, cx q2, double rho1, double rho2, cx s,
                                                   cx xi1t, cx xi2t, cx beta1, cx beta2);

/// Banana curve: two components (a = vertex 0, b = vertex 1) joined at edges
/// 1 and 2, data supported on side a with vanishing node residues. First
/// correction, living on side b:
///   -s1 rho_{-e1} xi_{e1}t dz/(z-q_{-e1})^2 - s2 rho_{-e2} xi_{e2}t dz/(z-q_{-e2})^2.
RatDiff banana_eta_b1(const StableCurve& c, cx s1, cx s2, cx xi_e1t, cx xi_e2t);

/// Second correction, back on side a. The diagonal bidifferential constants
/// vanish on rational components, leaving only the cross terms
///   s1 s2 (rho_{e1} beta_{12} xi_{e2}t dz/(z-q_{e1})^2
///        + rho_{e2} beta_{21} xi_{e1}t dz/(z-q_{e2})^2),
/// with beta_{jk} = rho_{-ej} rho_{-ek} / (q_{-ej} - q_{-ek})^2.
RatDiff banana_eta_a2(const StableCurve& c, cx s1, cx s2, cx xi_e1t, cx xi_e2t);

/// Per-edge linear coefficients of the leading period of the banana curve:
/// edge i carries -2 sigma_{-ei} sigma_{ei}, where sigma are the in-chart
/// holomorphic values of the dual third-kind basis differential.
std::map<int, cx> banana_leading_period_linear(const StableCurve& c);

/// tau_{ij} of the totally degenerate curve (one rational component, g
/// self-nodes, unit chart radii) through the linear order in s. Constants use
/// principal logarithms, so path-integral comparisons hold modulo i*pi.
/// i, j are 1-based edge indices. Throws on multi-component curves or
/// non-unit chart radii.
PeriodExpansion tot_deg_tau(const StableCurve& c, int i, int j);

}  // namespace plumb::ref
