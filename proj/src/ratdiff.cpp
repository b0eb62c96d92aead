#include "plumb/ratdiff.hpp"

#include <algorithm>
#include <cmath>

namespace plumb {

namespace {

bool close(cx a, cx b) {
    double scale = 1.0 + std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= 1e-12 * scale;
}

cx ipow(cx base, int n) {
    if (n < 0) return 1.0 / ipow(base, -n);
    cx r = 1.0;
    cx b = base;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

RatDiff RatDiff::pole(cx p, int order, cx coeff) {
    RatDiff d;
    d.add_term(p, order, coeff);
    return d;
}

RatDiff RatDiff::third_kind(cx a, cx b) {
    RatDiff d;
    d.add_term(a, 1, 1.0);
    d.add_term(b, 1, -1.0);
    return d;
}

void RatDiff::add_term(cx p, int order, cx coeff) {
    if (order < 1) throw std::invalid_argument("pole order must be >= 1");
    if (coeff == cx(0.0)) return;
    auto& po = parts_[PoleSite{p}];
    cx& c = po[order];
    c += coeff;
    if (c == cx(0.0) || std::abs(c) < kPruneFloor) po.erase(order);
    if (po.empty()) parts_.erase(PoleSite{p});
}

void RatDiff::add_poly(int degree, cx coeff) {
    if (degree < 0) throw std::invalid_argument("polynomial degree must be >= 0");
    if (coeff == cx(0.0)) return;
    cx& c = poly_[degree];
    c += coeff;
    if (c == cx(0.0) || std::abs(c) < kPruneFloor) poly_.erase(degree);
}

void RatDiff::add_shifted_poly(cx base, int degree, cx coeff) {
    for (int i = 0; i <= degree; ++i)
        add_poly(i, coeff * binomial(degree, i) * ipow(-base, degree - i));
}

RatDiff& RatDiff::operator+=(const RatDiff& o) {
    for (const auto& [site, po] : o.parts_)
        for (const auto& [m, c] : po) add_term(site.p, m, c);
    for (const auto& [n, c] : o.poly_) add_poly(n, c);
    return *this;
}

RatDiff& RatDiff::operator*=(cx t) {
    if (t == cx(0.0)) {
        parts_.clear();
        poly_.clear();
        return *this;
    }
    for (auto& [site, po] : parts_)
        for (auto& [m, c] : po) c *= t;
    for (auto& [n, c] : poly_) c *= t;
    return *this;
}

RatDiff operator-(RatDiff a, const RatDiff& b) {
    RatDiff nb = b;
    nb *= cx(-1.0);
    return a += nb;
}

int RatDiff::max_pole_order() const {
    int m = 0;
    for (const auto& [site, po] : parts_)
        if (!po.empty()) m = std::max(m, po.rbegin()->first);
    return m;
}

cx RatDiff::residue(cx p) const {
    auto it = parts_.find(PoleSite{p});
    if (it == parts_.end()) {
        for (const auto& [site, po] : parts_)
            if (close(site.p, p)) {
                auto jt = po.find(1);
                return jt == po.end() ? cx(0.0) : jt->second;
            }
        return cx(0.0);
    }
    auto jt = it->second.find(1);
    return jt == it->second.end() ? cx(0.0) : jt->second;
}

cx RatDiff::residue_sum() const {
    cx s = 0.0;
    for (const auto& [site, po] : parts_) {
        auto jt = po.find(1);
        if (jt != po.end()) s += jt->second;
    }
    return s;
}

cx RatDiff::evaluate(cx z) const {
    cx v = 0.0;
    for (const auto& [site, po] : parts_) {
        cx d = z - site.p;
        if (d == cx(0.0)) throw std::domain_error("evaluation at a pole");
        for (const auto& [m, c] : po) v += c * ipow(d, -m);
    }
    for (const auto& [n, c] : poly_) v += c * ipow(z, n);
    return v;
}

RatDiff RatDiff::derivative() const {
    RatDiff d;
    for (const auto& [site, po] : parts_)
        for (const auto& [m, c] : po) d.add_term(site.p, m + 1, -double(m) * c);
    for (const auto& [n, c] : poly_)
        if (n >= 1) d.add_poly(n - 1, double(n) * c);
    return d;
}

std::vector<cx> RatDiff::pole_locations() const {
    std::vector<cx> out;
    out.reserve(parts_.size());
    for (const auto& [site, po] : parts_) out.push_back(site.p);
    return out;
}

RatDiff RatDiff::principal_part_at(cx p) const {
    RatDiff d;
    for (const auto& [site, po] : parts_)
        if (close(site.p, p))
            for (const auto& [m, c] : po) d.add_term(site.p, m, c);
    return d;
}

RatDiff RatDiff::holomorphic_part_at(cx p) const {
    RatDiff d = *this;
    for (const auto& [site, po] : parts_)
        if (close(site.p, p))
            for (const auto& [m, c] : po) d.add_term(site.p, m, -c);
    return d;
}

RatDiff RatDiff::principal_parts_within(cx center, double radius) const {
    RatDiff d;
    for (const auto& [site, po] : parts_)
        if (std::abs(site.p - center) < radius)
            for (const auto& [m, c] : po) d.add_term(site.p, m, c);
    return d;
}

cx RatDiff::integrate_circle(cx center, double radius) const {
    cx s = 0.0;
    for (const auto& [site, po] : parts_)
        if (std::abs(site.p - center) < radius) {
            auto jt = po.find(1);
            if (jt != po.end()) s += jt->second;
        }
    return cx(0.0, 2.0 * M_PI) * s;
}

std::map<int, cx> RatDiff::chart_expansion(cx q, double rho, int hi) const {
    std::map<int, cx> a;
    auto acc = [&](int n, cx c) {
        if (c == cx(0.0)) return;
        a[n] += c;
    };
    for (const auto& [site, po] : parts_) {
        if (close(site.p, q)) {
            // pole at the chart center: c rho^{1-m} zeta^{-m}
            for (const auto& [m, c] : po) acc(-m, c * ipow(cx(rho), 1 - m));
            continue;
        }
        cx d = q - site.p;
        for (const auto& [m, c] : po) {
            // c*rho*(d + rho*zeta)^{-m} = c*rho*d^{-m} sum_n (-1)^n C(m+n-1,n) (rho/d)^n zeta^n
            cx base = c * rho * ipow(d, -m);
            cx fac = 1.0;
            for (int n = 0; n <= hi; ++n) {
                if (n > 0) fac *= -(rho / d) * double(m + n - 1) / double(n);
                acc(n, base * fac);
            }
        }
    }
    for (const auto& [n, c] : poly_) {
        // c*(q + rho*zeta)^n * rho
        for (int j = 0; j <= std::min(n, hi); ++j)
            acc(j, c * rho * binomial(n, j) * ipow(q, n - j) * ipow(cx(rho), j));
    }
    return a;
}

cx RatDiff::in_chart_value(cx q, double rho, cx zeta) const {
    return evaluate(q + rho * zeta) * rho;
}

RatDiff RatDiff::consolidated(cx center, double cluster_radius, double eval_radius,
                              double abs_tol) const {
    const double merge_radius = std::min(cluster_radius, 0.45 * eval_radius);
    RatDiff out;
    for (const auto& [site, po] : parts_) {
        double delta = std::abs(site.p - center);
        if (delta > merge_radius) {
            for (const auto& [m, c] : po) out.add_term(site.p, m, c);
            continue;
        }
        cx dd = site.p - center;
        double r = delta / eval_radius;  // <= 0.45
        for (const auto& [m, c] : po) {
            // c (z-p)^{-m} = c sum_{j>=0} C(m-1+j,j) dd^j (z-center)^{-m-j}
            cx term = c;
            for (int j = 0; m + j <= 512; ++j) {
                if (j > 0) term *= dd * double(m - 1 + j) / double(j);
                out.add_term(center, m + j, term);
                // After j >= m the term ratio is at most 2r < 0.9; bound the
                // remaining tail on the evaluation circle geometrically.
                if (j >= m) {
                    double t = std::abs(term) * std::pow(eval_radius, -(m + j));
                    double q = std::min(0.9, 2.0 * r);
                    if (t * q / (1.0 - q) < abs_tol) break;
                }
            }
        }
    }
    for (const auto& [n, c] : poly_) out.add_poly(n, c);
    return out;
}

RatDiff RatDiff::pullback_glue(cx q_near, double rho_near, cx q_far, double rho_far, cx s) const {
    const cx k = rho_near * rho_far * s;
    RatDiff out;
    for (const auto& [site, po] : parts_) {
        if (close(site.p, q_far)) {
            for (const auto& [m, c] : po) {
                if (m == 1) {
                    out.add_term(q_near, 1, -c);
                } else {
                    // -c k^{1-m} (z - q_near)^{m-2}
                    out.add_shifted_poly(q_near, m - 2, -c * ipow(k, 1 - m));
                }
            }
            continue;
        }
        cx d = q_far - site.p;
        cx pp = q_near - k / d;  // image of the pole, near q_near
        for (const auto& [m, c] : po) {
            if (m == 1) {
                out.add_term(q_near, 1, -c);
                out.add_term(pp, 1, c);
            } else {
                // -c k d^{-m} (z-q_near)^{m-2} (z-pp)^{-m}
                cx factor = -c * k * ipow(d, -m);
                cx delta = pp - q_near;
                for (int j = 0; j <= m - 2; ++j)
                    out.add_term(pp, m - j, factor * binomial(m - 2, j) * ipow(delta, m - 2 - j));
            }
        }
    }
    for (const auto& [n, c] : poly_) {
        // c w^n dw, w = q_far + k/(z-q_near)
        for (int j = 0; j <= n; ++j)
            out.add_term(q_near, j + 2, -c * binomial(n, j) * ipow(q_far, n - j) * ipow(k, j + 1));
    }
    return out;
}

namespace {

// Antiderivative pieces that are single-valued: everything except the logs.
cx rational_antiderivative(const RatDiff& w, cx z) {
    cx v = 0.0;
    for (const auto& [site, po] : w.parts()) {
        cx d = z - site.p;
        for (const auto& [m, c] : po)
            if (m >= 2) v += -c / double(m - 1) * ipow(d, 1 - m);
    }
    for (const auto& [n, c] : w.poly()) v += c * ipow(z, n + 1) / double(n + 1);
    return v;
}

double seg_pole_distance(cx a, cx b, cx p) {
    cx ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

// Tracked log increment sum_{simple poles} c * [log(b-p) - log(a-p)] along
// the segment, with each argument increment taken continuously (subdivide
// until every increment is below pi/2).
cx tracked_log_increment(const RatDiff& w, cx a, cx b, int depth) {
    bool needs_split = false;
    for (const auto& [site, po] : w.parts()) {
        auto jt = po.find(1);
        if (jt == po.end()) continue;
        cx da = a - site.p, db = b - site.p;
        if (da == cx(0.0) || db == cx(0.0) || seg_pole_distance(a, b, site.p) == 0.0)
            throw std::domain_error("integration path passes through a pole");
        double darg = std::arg(db / da);
        if (std::abs(darg) > M_PI / 2) {
            needs_split = true;
            break;
        }
    }
    if (needs_split) {
        if (depth > 48) throw std::domain_error("integration path too close to a pole");
        cx mid = 0.5 * (a + b);
        return tracked_log_increment(w, a, mid, depth + 1) +
               tracked_log_increment(w, mid, b, depth + 1);
    }
    cx v = 0.0;
    for (const auto& [site, po] : w.parts()) {
        auto jt = po.find(1);
        if (jt == po.end()) continue;
        cx da = a - site.p, db = b - site.p;
        v += jt->second * (std::log(std::abs(db) / std::abs(da)) + cx(0.0, 1.0) * std::arg(db / da));
    }
    return v;
}

}  // namespace

cx integrate_segment_tracked(const RatDiff& w, cx a, cx b) {
    return rational_antiderivative(w, b) - rational_antiderivative(w, a) +
           tracked_log_increment(w, a, b, 0);
}

cx RatDiff::integrate_polyline(const std::vector<cx>& pts) const {
    if (pts.size() < 2) return 0.0;
    cx v = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) v += integrate_segment_tracked(*this, pts[i], pts[i + 1]);
    return v;
}

cx RatDiff::regularized_radial_integral(cx q, double rho) const {
    for (const auto& [site, po] : parts_)
        if (close(site.p, q)) {
            for (const auto& [m, c] : po)
                if (m >= 2)
                    throw std::domain_error("regularized endpoint needs at worst a simple pole");
        }
    // Split off the c/(z-q) term; the remainder integrates to the endpoint.
    RatDiff rest = holomorphic_part_at(q);
    // remainder: straight segment from q+rho to q (endpoint regular)
    cx v = integrate_segment_tracked(rest, q + rho, q);
    // the log term contributes residue * [ln(rho*eps) - ln(rho)] = residue*ln(eps),
    // which is exactly the subtracted divergence; net contribution 0.
    return v;
}

double RatDiff::coeff_scale() const {
    double m = 0.0;
    for (const auto& [site, po] : parts_)
        for (const auto& [m_, c] : po) m = std::max(m, std::abs(c));
    for (const auto& [n, c] : poly_) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace plumb
