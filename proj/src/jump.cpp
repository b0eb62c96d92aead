#include "plumb/jump.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace plumb {

namespace {

double seam_radius(const StableCurve& c, const PlumbingParams& s, int e) {
    return c.chart_radius(e) * std::sqrt(std::abs(s.at(e)));
}

/// In-chart value of xi_{e}^{(0)} at its own node.
cx xi_tilde(const StableCurve& c, const JumpData& data, int e) {
    auto it = data.xi0.find(e);
    if (it == data.xi0.end()) return 0.0;
    return it->second.evaluate(c.node_point(e)) * c.chart_radius(e);
}

/// Merges the pole clusters of f at every chart center of v.
RatDiff consolidate_on_vertex(const StableCurve& c, const PlumbingParams& s, int v, RatDiff f,
                              double chart_tol) {
    for (int e : c.edges_at(v)) {
        double r = seam_radius(c, s, e);
        f = f.consolidated(c.node_point(e), 0.45 * r, r, chart_tol / c.chart_radius(e));
    }
    return f;
}

}  // namespace

JumpData initial_data(const StableCurve& c, const std::vector<RatDiff>& omega) {
    if (int(omega.size()) != c.num_vertices())
        throw std::invalid_argument("initial_data: one differential per component required");
    JumpData d;
    d.base = omega;
    double scale = 1.0;
    for (const auto& w : omega) scale = std::max(scale, w.coeff_scale());
    for (int e : c.oriented_edges()) {
        int v = c.vertex_of(e);
        cx q = c.node_point(e);
        RatDiff pp = omega[v].principal_part_at(q);
        if (pp.max_pole_order() > 1)
            throw std::invalid_argument("higher-order pole at node " + c.edge_id(e));
        d.residue[e] = pp.residue_sum();
        d.xi0[e] = omega[v].holomorphic_part_at(q);
    }
    for (int k = 1; k <= c.num_edges(); ++k) {
        cx mismatch = d.residue[k] + d.residue[-k];
        if (std::abs(mismatch) > 1e-10 * scale)
            throw std::invalid_argument("residues at node " + c.edge_id(k) + " do not cancel");
    }
    return d;
}

double seam_norm(const StableCurve& c, const PlumbingParams& s,
                 const std::map<int, RatDiff>& xi_k, int samples) {
    double m = 0.0;
    for (const auto& [e, f] : xi_k) {
        if (f.is_zero()) continue;
        double r = std::sqrt(std::abs(s.at(e)));
        cx q = c.node_point(e);
        double rho = c.chart_radius(e);
        for (int j = 0; j < samples; ++j) {
            double th = 2.0 * M_PI * j / samples + 0.318;
            m = std::max(m, std::abs(f.in_chart_value(q, rho, r * cx(std::cos(th), std::sin(th)))));
        }
    }
    return m;
}

RatDiff JumpSolution::eta_total(int v) const {
    RatDiff t;
    for (const auto& h : eta[v]) t += h;
    return t;
}

RatDiff JumpSolution::xi_total(int e) const {
    RatDiff t;
    for (const auto& h : xi.at(e)) t += h;
    return t;
}

RatDiff JumpSolution::glued(int v) const { return base[v] + eta_total(v); }

JumpSolution solve_jump(const StableCurve& c, const PlumbingParams& s, const JumpData& data,
                        const SolveOptions& opts) {
    for (int k = 1; k <= c.num_edges(); ++k) {
        if (!s.s.count(k)) throw std::invalid_argument("missing plumbing parameter for edge " + c.edge_id(k));
        if (!(std::abs(s.s.at(k)) > 0.0))
            throw std::invalid_argument("plumbing parameter must be nonzero on edge " + c.edge_id(k));
    }

    JumpSolution sol;
    sol.curve = c;
    sol.params = s;
    sol.base = data.base;
    sol.eta.assign(c.num_vertices(), {});
    std::map<int, RatDiff> xi_prev;
    for (int e : c.oriented_edges()) {
        auto it = data.xi0.find(e);
        RatDiff x0 = (it == data.xi0.end()) ? RatDiff() : it->second;
        sol.xi[e] = {x0};
        xi_prev[e] = x0;
    }

    const double norm0 = seam_norm(c, s, xi_prev);
    sol.xi0_norm = norm0;
    if (norm0 == 0.0) return sol;
    const double chart_tol = opts.tol * norm0 * 1e-4;

    const int k_stop = opts.k_fixed > 0 ? opts.k_fixed : opts.k_max;
    double prev = norm0, nk = 0.0, ratio = 0.0, prev_ratio = 0.0;
    bool converged = false;

    for (int k = 1; k <= k_stop; ++k) {
        std::map<int, RatDiff> pulled;  // pulled[e]: xi_{-e}^{(k-1)} carried through the node
        for (int e : c.oriented_edges()) {
            pulled[e] = xi_prev[-e].pullback_glue(c.node_point(e), c.chart_radius(e),
                                                  c.node_point(-e), c.chart_radius(-e), s.at(e));
            // strip the transient polynomial part: the principal-part sum is
            // exactly the seam Cauchy integral
            RatDiff pr;
            double r = seam_radius(c, s, e);
            for (const auto& [site, po] : pulled[e].parts()) {
                if (std::abs(site.p - c.node_point(e)) >= r)
                    throw std::logic_error("pulled-back pole escaped the seam disk");
                for (const auto& [m, cc] : po) pr.add_term(site.p, m, cc);
            }
            pulled[e] = pr;
        }

        std::vector<RatDiff> etak(c.num_vertices());
        for (int e : c.oriented_edges()) etak[c.vertex_of(e)] += pulled[e];
        std::map<int, RatDiff> xik;
        for (int e : c.oriented_edges()) {
            xik[e] = consolidate_on_vertex(c, s, c.vertex_of(e), etak[c.vertex_of(e)] - pulled[e],
                                           chart_tol);
        }
        for (int v = 0; v < c.num_vertices(); ++v)
            sol.eta[v].push_back(consolidate_on_vertex(c, s, v, etak[v], chart_tol));
        for (int e : c.oriented_edges()) sol.xi[e].push_back(xik[e]);
        xi_prev = std::move(xik);
        sol.K = k;

        nk = seam_norm(c, s, xi_prev);
        prev_ratio = ratio;
        ratio = prev > 0.0 ? nk / prev : 0.0;
        sol.ratio = ratio;
        prev = nk;

        if (opts.k_fixed > 0) continue;
        if (nk <= opts.tol * norm0 * std::max(0.1, 1.0 - ratio)) {
            converged = true;
            break;
        }
        if (!opts.force && k >= 3 && ratio >= 1.0 && prev_ratio >= 1.0)
            throw NonConvergence("correction series is not contracting (ratio " +
                                 std::to_string(ratio) + ")");
        if (!opts.force && k >= 5 && std::sqrt(ratio * prev_ratio) >= opts.refuse_ratio) {
            std::ostringstream os;
            os << "contraction estimate " << std::sqrt(ratio * prev_ratio)
               << " exceeds the refusal threshold " << opts.refuse_ratio;
            throw NonConvergence(os.str());
        }
    }

    sol.tail_bound = ratio < 1.0 ? nk * ratio / (1.0 - ratio) : nk;
    if (!converged && opts.k_fixed == 0 && !opts.force)
        throw NonConvergence("correction series did not reach tolerance within " +
                             std::to_string(opts.k_max) + " orders (ratio " +
                             std::to_string(ratio) + ")");
    return sol;
}

std::vector<RatDiff> first_order(const StableCurve& c, const PlumbingParams& s,
                                 const JumpData& data) {
    std::vector<RatDiff> out(c.num_vertices());
    for (int e : c.oriented_edges()) {
        cx xt = xi_tilde(c, data, -e);
        if (xt == cx(0.0)) continue;
        out[c.vertex_of(e)].add_term(c.node_point(e), 2, -s.at(e) * c.chart_radius(e) * xt);
    }
    return out;
}

RatDiff leading_term(const StableCurve& c, const PlumbingParams& s, const JumpData& data,
                     int v, int k) {
    if (k < 1 || k > 10) throw std::invalid_argument("leading_term: order out of range");
    const KernelEvaluator& ker = genus0_kernel();
    RatDiff out;
    double sign = (k % 2) ? -1.0 : 1.0;
    // walk[depth] over the dual graph; e1 fixes the pole of the contribution
    std::function<void(int, int, cx, int)> walk = [&](int e_prev, int depth, cx factor, int e1) {
        if (depth == k) {
            cx xt = xi_tilde(c, data, -e_prev);
            out.add_term(c.node_point(e1), 2, sign * factor * c.chart_radius(e1) * xt);
            return;
        }
        for (int e_next : c.edges_at(c.vertex_of(-e_prev))) {
            cx b = ker.beta(c, -e_prev, e_next);
            if (b == cx(0.0)) continue;
            walk(e_next, depth + 1, factor * s.at(e_next) * b, e1);
        }
    };
    for (int e1 : c.edges_at(v)) walk(e1, 1, s.at(e1), e1);
    return out;
}

double jump_residual(const JumpSolution& sol, int samples) {
    const StableCurve& c = sol.curve;
    std::vector<RatDiff> glued(c.num_vertices());
    for (int v = 0; v < c.num_vertices(); ++v) glued[v] = sol.glued(v);
    double m = 0.0;
    for (int e = 1; e <= c.num_edges(); ++e) {
        cx se = sol.params.at(e);
        double r = std::sqrt(std::abs(se));
        double half = std::arg(se) / 2.0;
        for (int j = 0; j < samples; ++j) {
            double th = half + 2.0 * M_PI * j / samples + 0.1;
            cx zeta = r * cx(std::cos(th), std::sin(th));
            cx a = glued[c.vertex_of(e)].in_chart_value(c.node_point(e), c.chart_radius(e), zeta);
            cx zeta2 = se / zeta;
            cx b = glued[c.vertex_of(-e)].in_chart_value(c.node_point(-e), c.chart_radius(-e),
                                                         zeta2) *
                   (-se / (zeta * zeta));
            m = std::max(m, std::abs(a - b));
        }
    }
    return m;
}

double a_norm_residual(const JumpSolution& sol) {
    const StableCurve& c = sol.curve;
    double m = 0.0;
    for (int v = 0; v < c.num_vertices(); ++v) {
        RatDiff h = sol.eta_total(v);
        for (int e : c.edges_at(v))
            m = std::max(m,
                         std::abs(h.integrate_circle(c.node_point(e),
                                                     seam_radius(c, sol.params, e))));
    }
    return m;
}

double l2_norm(const JumpSolution& sol, int v, int samples) {
    const StableCurve& c = sol.curve;
    RatDiff h = sol.eta_total(v);
    if (h.is_zero()) return 0.0;
    const double dth = 2.0 * M_PI / samples;
    cx total = 0.0;
    for (int e : c.edges_at(v)) {
        cx q = c.node_point(e);
        double r = seam_radius(c, sol.params, e);
        std::vector<cx> val(samples), zp(samples);
        for (int j = 0; j < samples; ++j) {
            cx dir = cx(std::cos(j * dth), std::sin(j * dth));
            val[j] = h.evaluate(q + r * dir);
            zp[j] = cx(0.0, r) * dir;
        }
        // antiderivative along the circle; its additive constant drops out
        // because the correction has no loop integral around the seam
        std::vector<cx> anti(samples, 0.0);
        for (int j = 1; j < samples; ++j)
            anti[j] = anti[j - 1] + 0.5 * (val[j - 1] * zp[j - 1] + val[j] * zp[j]) * dth;
        cx loop = 0.0;
        for (int j = 0; j < samples; ++j) loop += std::conj(anti[j]) * val[j] * zp[j] * dth;
        total += loop;
    }
    double sq = (cx(0.0, 0.5) * total).real();
    return std::sqrt(std::max(0.0, sq));
}

}  // namespace plumb
