#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace plumb {

using cx = std::complex<double>;

inline constexpr double kPruneFloor = 1e-300;

/// Pole location with exact-comparison ordering. Poles produced by the same
/// closed-form expression compare bitwise equal, so repeated constructions
/// land on the same key and cancellations stay exact.
struct PoleSite {
    cx p;
    friend bool operator<(const PoleSite& a, const PoleSite& b) {
        if (a.p.real() != b.p.real()) return a.p.real() < b.p.real();
        return a.p.imag() < b.p.imag();
    }
    friend bool operator==(const PoleSite& a, const PoleSite& b) { return a.p == b.p; }
};

/// A rational differential f(z) dz on a genus-0 component, stored as a sum of
/// principal parts c/(z-p)^m plus an optional polynomial part. The polynomial
/// part stays empty for stable differentials; it only shows up transiently in
/// pullbacks of higher-order principal parts.
class RatDiff {
public:
    RatDiff() = default;

    static RatDiff pole(cx p, int order, cx coeff);
    /// dz/(z-a) - dz/(z-b): simple poles with residues +1 at a, -1 at b.
    static RatDiff third_kind(cx a, cx b);

    void add_term(cx p, int order, cx coeff);
    void add_poly(int degree, cx coeff);
    /// Adds coeff * (z - base)^degree expanded into global powers of z.
    void add_shifted_poly(cx base, int degree, cx coeff);

    RatDiff& operator+=(const RatDiff& o);
    RatDiff& operator*=(cx t);
    friend RatDiff operator+(RatDiff a, const RatDiff& b) { return a += b; }
    friend RatDiff operator-(RatDiff a, const RatDiff& b);
    friend RatDiff operator*(cx t, RatDiff a) { return a *= t; }

    bool is_zero() const { return parts_.empty() && poly_.empty(); }
    bool has_poly() const { return !poly_.empty(); }
    int max_pole_order() const;

    /// c_{p,1}; zero if p is not a pole. Matches poles within a small
    /// relative tolerance to absorb rounding in externally supplied p.
    cx residue(cx p) const;
    /// Sum of all residues; -residue at infinity.
    cx residue_sum() const;

    /// f(z). Throws if z sits on a pole.
    cx evaluate(cx z) const;
    /// f'(z) dz.
    RatDiff derivative() const;

    std::vector<cx> pole_locations() const;
    RatDiff principal_part_at(cx p) const;
    RatDiff holomorphic_part_at(cx p) const;
    /// Sum of the principal parts at all poles with |p - center| < radius.
    RatDiff principal_parts_within(cx center, double radius) const;

    /// 2*pi*i * (sum of residues strictly inside the circle).
    cx integrate_circle(cx center, double radius) const;

    /// Laurent coefficients a_n, n = lo..hi, of the in-chart form
    /// f(q + rho*zeta) * rho * d zeta. Throws if a pole other than q sits at
    /// the chart center.
    std::map<int, cx> chart_expansion(cx q, double rho, int hi) const;
    /// In-chart value f(q + rho*zeta) * rho.
    cx in_chart_value(cx q, double rho, cx zeta) const;

    /// Re-expands every principal part whose pole lies within cluster_radius
    /// of center as a principal part at center itself. The re-expansion is an
    /// infinite series in the pole order; it is truncated once its tail on the
    /// circle |z - center| = eval_radius is below abs_tol. Poles further out
    /// than min(cluster_radius, 0.45 * eval_radius) are left untouched, so the
    /// truncation ratio stays bounded away from 1.
    RatDiff consolidated(cx center, double cluster_radius, double eval_radius,
                         double abs_tol) const;

    /// Exact pullback under the gluing Moebius map
    ///   w = q_far + (rho_near * rho_far * s) / (z - q_near),
    /// i.e. z_{-e} = s / z_e in the charts at q_near (this side) and q_far
    /// (the side the differential lives on). The result is expressed in the
    /// global coordinate of the near side.
    RatDiff pullback_glue(cx q_near, double rho_near, cx q_far, double rho_far, cx s) const;

    /// Integral over a polyline, using the closed-form antiderivative with
    /// log branches tracked continuously along the path.
    cx integrate_polyline(const std::vector<cx>& pts) const;

    /// Regularized integral from q + rho (chart point z_e = 1) radially into
    /// the chart center with the c/(z-q) log divergence dropped:
    ///   lim_{eps->0} [ int_{q+rho}^{q+rho*eps} f dz - residue(q)*ln(eps) ].
    /// Only the simple pole at q is allowed on the segment.
    cx regularized_radial_integral(cx q, double rho) const;

    /// Largest absolute coefficient; crude scale for tolerances.
    double coeff_scale() const;

    const std::map<PoleSite, std::map<int, cx>>& parts() const { return parts_; }
    const std::map<int, cx>& poly() const { return poly_; }

private:
    // principal parts: pole -> (order -> coefficient)
    std::map<PoleSite, std::map<int, cx>> parts_;
    // polynomial part: degree -> coefficient of z^degree
    std::map<int, cx> poly_;
};

/// Integral of w over the straight segment [a, b] with tracked log branches.
cx integrate_segment_tracked(const RatDiff& w, cx a, cx b);

double binomial(int n, int k);

}  // namespace plumb
