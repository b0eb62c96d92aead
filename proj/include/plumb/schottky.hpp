#pragma once

#include <vector>

#include "plumb/curve.hpp"
#include "plumb/ratdiff.hpp"

namespace plumb {

/// Period matrix of a plumbed irreducible rational curve computed through
/// Schottky uniformization: the gluing map of each node pair is a loxodromic
/// Moebius transformation, and the periods are truncated sums of log
/// cross-ratios of fixed-point pairs over double-coset representatives. This
/// never touches the jump solver, so it serves as an external referee.
struct SchottkyResult {
    std::vector<std::vector<cx>> tau;  // g x g, 2*pi*i normalized a-periods
    /// Max over matrix entries of the summed term magnitudes per word length
    /// 1..L. Geometric decay indicates convergence; the last entry is the
    /// truncation error estimate.
    std::vector<double> shell;
    double shell_estimate = 0.0;
};

/// Word-length cap L >= 1. Throws std::invalid_argument on multi-component
/// curves and std::domain_error when some generator fails to be loxodromic
/// (plumbing parameter too large).
SchottkyResult schottky_tau(const StableCurve& c, const PlumbingParams& s, int L = 8);

}  // namespace plumb
