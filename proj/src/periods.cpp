#include "plumb/periods.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace plumb {

namespace {

double wrap_pi(double x) {
    while (x > M_PI) x -= 2.0 * M_PI;
    while (x <= -M_PI) x += 2.0 * M_PI;
    return x;
}

cx circ(cx o, double r, double ang) { return o + r * cx(std::cos(ang), std::sin(ang)); }

/// Appends an arc from angle a0 through a signed sweep, chord steps <= pi/16.
/// The point at a0 is assumed to be in place already.
void append_arc(std::vector<cx>& pts, cx o, double r, double a0, double sweep) {
    int steps = std::max(1, int(std::ceil(std::abs(sweep) / (M_PI / 16.0))));
    for (int i = 1; i <= steps; ++i) pts.push_back(circ(o, r, a0 + sweep * i / steps));
}

struct Obstacle {
    cx center;
    double radius;
};

std::vector<Obstacle> component_obstacles(const StableCurve& c, int v, int entry, int exit_e) {
    std::vector<Obstacle> obs;
    for (int e : c.edges_at(v))
        if (e != entry && e != exit_e) obs.push_back({c.node_point(e), 1.1 * c.chart_radius(e)});
    for (int mi : c.marked_at(v)) {
        cx m = c.marked[mi].point;
        double d = std::numeric_limits<double>::infinity();
        for (int e : c.edges_at(v))
            d = std::min(d, std::abs(m - c.node_point(e)) - c.chart_radius(e));
        for (int mj : c.marked_at(v))
            if (mj != mi) d = std::min(d, std::abs(m - c.marked[mj].point));
        if (d > 0.0) obs.push_back({m, 0.25 * d});
    }
    return obs;
}

/// Appends a path from a (already in place) to b, detouring around obstacle
/// circles along their shorter arcs. Obstacles are assumed pairwise disjoint.
void route_segment(std::vector<cx>& pts, cx a, cx b, const std::vector<Obstacle>& obs) {
    cx ab = b - a;
    double len = std::abs(ab);
    if (len == 0.0) {
        pts.push_back(b);
        return;
    }
    struct Hit {
        double t1, t2;
        cx o;
        double r;
    };
    std::vector<Hit> hits;
    for (const auto& ob : obs) {
        double reff = std::min({ob.radius, 0.99 * std::abs(a - ob.center), 0.99 * std::abs(b - ob.center)});
        if (!(reff > 0.0)) continue;
        cx ao = ob.center - a;
        double t0 = (ao.real() * ab.real() + ao.imag() * ab.imag()) / (len * len);
        double d = std::abs(ob.center - (a + t0 * ab));
        if (d >= reff) continue;
        double h = std::sqrt(reff * reff - d * d) / len;
        double t1 = t0 - h, t2 = t0 + h;
        if (t2 <= 0.0 || t1 >= 1.0) continue;
        hits.push_back({std::max(t1, 0.0), std::min(t2, 1.0), ob.center, reff});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.t1 < y.t1; });
    for (const auto& hh : hits) {
        cx p1 = a + hh.t1 * ab, p2 = a + hh.t2 * ab;
        pts.push_back(p1);
        double a1 = std::arg(p1 - hh.o), a2 = std::arg(p2 - hh.o);
        append_arc(pts, hh.o, hh.r, a1, wrap_pi(a2 - a1));
    }
    pts.push_back(b);
}

}  // namespace

std::vector<std::vector<cx>> canonical_path(const StableCurve& c, const CyclePath& cycle) {
    if (!cycle_is_closed(c, cycle)) throw std::invalid_argument("cycle is not closed");
    int n = int(cycle.size());
    std::vector<std::vector<cx>> out(n);
    for (int i = 0; i < n; ++i) {
        int e = cycle[i];
        int entry = -cycle[(i + n - 1) % n];
        if (entry == e) throw std::invalid_argument("cycle backtracks through a node");
        cx qa = c.node_point(entry), qb = c.node_point(e);
        double ra = c.chart_radius(entry), rb = c.chart_radius(e);
        std::vector<cx>& pts = out[i];
        pts.push_back(qa + ra);
        // leave the entry circle toward the exit center, cross, then wind to
        // the exit chart boundary point (angle 0 on both circles)
        double alpha = std::arg(qb - qa);
        append_arc(pts, qa, ra, 0.0, wrap_pi(alpha));
        cx pa = circ(qa, ra, alpha);
        double beta = std::arg(qa - qb);
        cx pb = circ(qb, rb, beta);
        route_segment(pts, pa, pb, component_obstacles(c, c.vertex_of(e), entry, e));
        append_arc(pts, qb, rb, beta, wrap_pi(-beta));
    }
    return out;
}

cx period_numeric(const JumpSolution& sol, const CyclePath& cycle) {
    const StableCurve& c = sol.curve;
    auto mids = canonical_path(c, cycle);
    std::vector<RatDiff> glued(c.num_vertices());
    for (int v = 0; v < c.num_vertices(); ++v) glued[v] = sol.glued(v);
    cx total = 0.0;
    for (int i = 0; i < int(cycle.size()); ++i) {
        int e = cycle[i];
        int v = c.vertex_of(e), w = c.vertex_of(-e);
        total += glued[v].integrate_polyline(mids[i]);
        cx rt = std::sqrt(sol.params.at(e));
        cx qe = c.node_point(e), qw = c.node_point(-e);
        double re = c.chart_radius(e), rw = c.chart_radius(-e);
        total += integrate_segment_tracked(glued[v], qe + re, qe + re * rt);
        total += integrate_segment_tracked(glued[w], qw + rw * rt, qw + rw);
    }
    return total;
}

PeriodExpansion period_expansion(const StableCurve& c, const JumpData& data,
                                 const CyclePath& cycle) {
    auto mids = canonical_path(c, cycle);
    PeriodExpansion pe;
    int n = int(cycle.size());
    std::vector<RatDiff> path_diff(c.num_vertices());
    for (int i = 0; i < n; ++i) {
        int e = cycle[i];
        int entry = -cycle[(i + n - 1) % n];
        int v = c.vertex_of(e), w = c.vertex_of(-e);
        pe.log_coeff[std::abs(e)] += data.residue.at(e);
        pe.constant += data.base[v].integrate_polyline(mids[i]);
        cx qe = c.node_point(e), qw = c.node_point(-e);
        pe.constant += integrate_segment_tracked(data.xi0.at(e), qe + c.chart_radius(e), qe);
        pe.constant += integrate_segment_tracked(data.xi0.at(-e), qw, qw + c.chart_radius(-e));
        path_diff[v] += RatDiff::third_kind(c.node_point(e), c.node_point(entry));
    }
    for (int k = 1; k <= c.num_edges(); ++k) {
        for (int e : {k, -k}) {
            int v = c.vertex_of(e);
            if (path_diff[v].is_zero()) continue;
            cx qe = c.node_point(e);
            cx sigma = path_diff[v].holomorphic_part_at(qe).evaluate(qe) * c.chart_radius(e);
            cx xt = data.xi0.at(-e).evaluate(c.node_point(-e)) * c.chart_radius(-e);
            pe.linear[k] -= xt * sigma;
        }
    }
    for (auto it = pe.log_coeff.begin(); it != pe.log_coeff.end();)
        it = (it->second == cx(0.0)) ? pe.log_coeff.erase(it) : std::next(it);
    for (auto it = pe.linear.begin(); it != pe.linear.end();)
        it = (it->second == cx(0.0)) ? pe.linear.erase(it) : std::next(it);
    return pe;
}

cx PeriodExpansion::eval(const PlumbingParams& s) const {
    cx t = constant;
    for (const auto& [k, cf] : log_coeff) t += cf * std::log(s.s.at(k));
    for (const auto& [k, cf] : linear) t += cf * s.s.at(k);
    return t;
}

double crossing_transfer_residual(const JumpSolution& sol, int e) {
    const StableCurve& c = sol.curve;
    cx se = sol.params.at(e);
    cx rt = std::sqrt(se);
    cx qe = c.node_point(e), qw = c.node_point(-e);
    double re = c.chart_radius(e), rw = c.chart_radius(-e);
    int v = c.vertex_of(e), w = c.vertex_of(-e);

    cx lhs = integrate_segment_tracked(sol.glued(v), qe + re, qe + re * rt) +
             integrate_segment_tracked(sol.glued(w), qw + rw * rt, qw + rw);

    cx r_e = sol.base[v].residue(qe);
    cx rhs = r_e * std::log(se);
    for (const auto& x : sol.xi.at(e)) rhs += integrate_segment_tracked(x, qe + re, qe + re * se);
    for (const auto& x : sol.xi.at(-e)) rhs += integrate_segment_tracked(x, qw + rw * se, qw + rw);
    return std::abs(lhs - rhs);
}

std::vector<std::vector<RatDiff>> normalized_basis(const StableCurve& c,
                                                   const SymplecticBasis& basis) {
    int g = int(basis.a_edges.size());
    std::vector<std::vector<RatDiff>> out(g, std::vector<RatDiff>(c.num_vertices()));
    for (int k = 0; k < g; ++k) {
        const CyclePath& cyc = basis.b_cycles[k];
        int n = int(cyc.size());
        for (int i = 0; i < n; ++i) {
            int e = cyc[i];
            int entry = -cyc[(i + n - 1) % n];
            out[k][c.vertex_of(e)] += RatDiff::third_kind(c.node_point(e), c.node_point(entry));
        }
    }
    return out;
}

PeriodMatrixResult period_matrix(const StableCurve& c, const PlumbingParams& s,
                                 const SolveOptions& opts) {
    PeriodMatrixResult r;
    r.basis = symplectic_basis(c);
    int g = int(r.basis.a_edges.size());
    auto vk = normalized_basis(c, r.basis);
    r.expansion.assign(g, std::vector<PeriodExpansion>(g));
    r.numeric.assign(g, std::vector<cx>(g));
    for (int k = 0; k < g; ++k) {
        JumpData data = initial_data(c, vk[k]);
        JumpSolution sol = solve_jump(c, s, data, opts);
        for (int h = 0; h < g; ++h) {
            r.expansion[h][k] = period_expansion(c, data, r.basis.b_cycles[h]);
            r.numeric[h][k] = period_numeric(sol, r.basis.b_cycles[h]);
        }
    }
    return r;
}

}  // namespace plumb
