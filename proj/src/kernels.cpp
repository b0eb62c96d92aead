#include "plumb/kernels.hpp"

#include <cmath>

namespace plumb {

namespace {
const cx kTwoPiI(0.0, 2.0 * M_PI);
}

cx Genus0Kernel::K(cx z, cx w) const { return 1.0 / (kTwoPiI * (z - w)); }

cx Genus0Kernel::omega(cx z, cx w) const {
    cx d = z - w;
    return 1.0 / (d * d);
}

cx Genus0Kernel::K_hat(const StableCurve& c, int e, int ep, cx z, cx w) const {
    return (e == ep) ? cx(0.0) : K(z, w);
}

cx Genus0Kernel::omega_hat(const StableCurve& c, int e, int ep, cx z, cx w) const {
    return (e == ep) ? cx(0.0) : omega(z, w);
}

cx Genus0Kernel::beta(const StableCurve& c, int e, int ep) const {
    if (e == ep) return 0.0;
    cx d = c.node_point(e) - c.node_point(ep);
    return c.chart_radius(e) * c.chart_radius(ep) / (d * d);
}

const KernelEvaluator& genus0_kernel() {
    static const Genus0Kernel k;
    return k;
}

cx a_normalization_check(const KernelEvaluator& k, cx w, cx center, double radius, int n) {
    cx sum = 0.0;
    for (int j = 0; j < n; ++j) {
        double th = 2.0 * M_PI * j / n;
        cx z = center + radius * cx(std::cos(th), std::sin(th));
        cx dz = cx(0.0, 2.0 * M_PI / n) * (z - center);
        sum += k.K(z, w) * dz;
    }
    return sum;
}

}  // namespace plumb
