#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "plumb/curve.hpp"
#include "plumb/ratdiff.hpp"

namespace plumb {

/// Per-component Cauchy kernel K(z,w) and fundamental bidifferential
/// omega(z,w) = 2*pi*i d_w K(z,w). Values are the scalar coefficients of the
/// differentials in the ambient coordinate (K: coefficient of dz; omega: of
/// dz dw). Regular parts are taken with respect to a pair of node charts.
class KernelEvaluator {
public:
    virtual ~KernelEvaluator() = default;

    virtual cx K(cx z, cx w) const = 0;
    virtual cx omega(cx z, cx w) const = 0;
    /// Regular part of K in the chart pair (e, e'): the diagonal singularity
    /// is removed when both arguments live in the same chart.
    virtual cx K_hat(const StableCurve& c, int e, int ep, cx z, cx w) const = 0;
    virtual cx omega_hat(const StableCurve& c, int e, int ep, cx z, cx w) const = 0;
    /// beta_{e,e'}: in-chart constant term of the regular part of omega at the
    /// node pair (q_e, q_{e'}).
    virtual cx beta(const StableCurve& c, int e, int ep) const = 0;
};

/// Closed forms on a rational component: K = dz/(2 pi i (z-w)),
/// omega = dz dw/(z-w)^2. Affine charts preserve both kernels exactly, so the
/// same-chart regular parts vanish identically and the cross-chart regular
/// parts coincide with the kernels themselves.
class Genus0Kernel final : public KernelEvaluator {
public:
    cx K(cx z, cx w) const override;
    cx omega(cx z, cx w) const override;
    cx K_hat(const StableCurve& c, int e, int ep, cx z, cx w) const override;
    cx omega_hat(const StableCurve& c, int e, int ep, cx z, cx w) const override;
    cx beta(const StableCurve& c, int e, int ep) const override;
};

const KernelEvaluator& genus0_kernel();

/// Trapezoid integral of K(.,w) in its first argument over the circle
/// |z - center| = radius. Vanishes when the loop encloses neither w nor other
/// singularities (the kernel is A-normalized); returns the winding value
/// otherwise.
cx a_normalization_check(const KernelEvaluator& k, cx w, cx center, double radius, int n = 256);

}  // namespace plumb
