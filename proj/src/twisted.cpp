#include "plumb/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace plumb {

namespace {

std::string edge_tag(const StableCurve& c, int e) { return c.edge_id(e); }

double data_scale(const TwistedData& d) {
    double m = 1.0;
    for (const auto& f : d.xi) m = std::max(m, f.coeff_scale());
    return m;
}

/// Lower levels j < level(v) reachable through the nodes of v.
std::set<int> down_levels(const StableCurve& c, const TwistedData& d, int v) {
    std::set<int> out;
    for (int e : c.edges_at(v))
        if (d.level[c.vertex_of(-e)] < d.level[v]) out.insert(d.level[c.vertex_of(-e)]);
    return out;
}

}  // namespace

int local_order(const RatDiff& f, cx q) {
    RatDiff pp = f.principal_part_at(q);
    if (!pp.is_zero()) return -pp.max_pole_order();
    const int cap = 12;
    auto a = f.chart_expansion(q, 1.0, cap);
    double scale = std::max(f.coeff_scale(), 1e-30);
    for (int n = 0; n <= cap; ++n) {
        auto it = a.find(n);
        if (it != a.end() && std::abs(it->second) > 1e-9 * scale) return n;
    }
    return cap;
}

bool CompatReport::clean() const {
    for (const auto& i : items)
        if (!i.pass) return false;
    return true;
}

bool CompatReport::passed(const std::string& condition) const {
    for (const auto& i : items)
        if (i.condition == condition) return i.pass;
    return false;
}

CompatReport check_compatibility(const StableCurve& c, const TwistedData& d,
                                 const std::vector<RatDiff>& omega) {
    CompatReport rep;
    const double scale = data_scale(d);
    auto item = [&](const std::string& name, bool pass, std::string detail) {
        rep.items.push_back({name, pass, std::move(detail)});
    };

    {
        bool ok = true;
        std::ostringstream os;
        for (const auto& mk : c.marked) {
            int got = local_order(d.xi[mk.vertex], mk.point);
            if (got != mk.multiplicity) {
                ok = false;
                os << " order " << got << " != " << mk.multiplicity;
            }
        }
        item("order_at_marked", ok, os.str());
    }
    {
        bool ok = true;
        std::ostringstream os;
        for (int v = 0; v < c.num_vertices(); ++v) {
            for (cx p : d.xi[v].pole_locations()) {
                bool at_node = false;
                for (int e : c.edges_at(v))
                    if (std::abs(p - c.node_point(e)) < 1e-9 * (1.0 + std::abs(p)))
                        at_node = true;
                if (!at_node) {
                    ok = false;
                    os << " stray pole at (" << p.real() << "," << p.imag() << ")";
                }
            }
        }
        item("poles_at_nodes", ok, os.str());
    }
    {
        bool ok = true;
        std::ostringstream os;
        for (int k = 1; k <= c.num_edges(); ++k) {
            int ou = local_order(d.xi[c.vertex_of(k)], c.node_point(k));
            int ov = local_order(d.xi[c.vertex_of(-k)], c.node_point(-k));
            if (ou + ov != -2) {
                ok = false;
                os << " node " << edge_tag(c, k) << ": " << ou << " + " << ov;
            }
        }
        item("node_order_sum", ok, os.str());
    }
    {
        bool ok = true;
        std::ostringstream os;
        for (int k = 1; k <= c.num_edges(); ++k) {
            int ou = local_order(d.xi[c.vertex_of(k)], c.node_point(k));
            int ov = local_order(d.xi[c.vertex_of(-k)], c.node_point(-k));
            if (ou != -1 || ov != -1) continue;
            cx mismatch = d.xi[c.vertex_of(k)].residue(c.node_point(k)) +
                          d.xi[c.vertex_of(-k)].residue(c.node_point(-k));
            if (std::abs(mismatch) > 1e-10 * scale) {
                ok = false;
                os << " node " << edge_tag(c, k);
            }
        }
        item("matching_residues", ok, os.str());
    }
    {
        bool ok = true;
        std::ostringstream os;
        for (int k = 1; k <= c.num_edges(); ++k) {
            int ou = local_order(d.xi[c.vertex_of(k)], c.node_point(k));
            int ov = local_order(d.xi[c.vertex_of(-k)], c.node_point(-k));
            int lu = d.level[c.vertex_of(k)], lv = d.level[c.vertex_of(-k)];
            bool good = (ou > ov && lu > lv) || (ov > ou && lv > lu) ||
                        (ou == -1 && ov == -1 && lu == lv);
            if (!good) {
                ok = false;
                os << " node " << edge_tag(c, k);
            }
        }
        item("level_order", ok, os.str());
    }
    {
        bool ok = true;
        std::ostringstream os;
        for (int v = 0; v < c.num_vertices(); ++v) {
            for (int j : down_levels(c, d, v)) {
                cx sum = 0.0;
                for (int e : c.edges_at(v))
                    if (d.level[c.vertex_of(-e)] == j)
                        sum += d.xi[c.vertex_of(-e)].residue(c.node_point(-e));
                if (std::abs(sum) > 1e-10 * scale) {
                    ok = false;
                    os << " vertex " << c.vertex_names[v] << " level " << j;
                }
            }
        }
        item("global_residue", ok, os.str());
    }
    {
        bool ok = true;
        std::ostringstream os;
        for (int v = 0; v < c.num_vertices(); ++v) {
            bool top = d.level[v] == 0;
            bool has_omega = !omega[v].is_zero();
            if (top != has_omega) {
                ok = false;
                os << " vertex " << c.vertex_names[v]
                   << (top ? " lacks a limit differential" : " carries one below the top level");
            } else if (top && (d.xi[v] - omega[v]).coeff_scale() > 1e-12 * scale) {
                ok = false;
                os << " vertex " << c.vertex_names[v] << " disagrees with the limit";
            }
        }
        item("maxima", ok, os.str());
    }
    return rep;
}

RatDiff modification_differential(const StableCurve& c, const TwistedData& d, int v, int j) {
    if (j >= d.level[v]) throw std::invalid_argument("modification level must lie below the vertex");
    RatDiff phi;
    cx sum = 0.0;
    for (int e : c.edges_at(v)) {
        if (d.level[c.vertex_of(-e)] != j) continue;
        cx r = -d.xi[c.vertex_of(-e)].residue(c.node_point(-e));
        sum += r;
        if (r != cx(0.0)) phi.add_term(c.node_point(e), 1, r);
    }
    if (std::abs(sum) > 1e-10 * data_scale(d))
        throw std::invalid_argument("residue data does not sum to zero; no rational matcher exists");
    return phi;
}

cx ScalingParams::from_top(int j) const { return between(0, j); }

cx ScalingParams::between(int i, int j) const {
    if (j > i) throw std::invalid_argument("levels must satisfy i >= j");
    cx p = 1.0;
    for (int m = j; m < i; ++m) {
        size_t idx = size_t(-m - 1);
        if (idx >= t.size()) throw std::invalid_argument("missing scaling parameter");
        p *= t[idx];
    }
    return p;
}

PlumbingParams scaling_to_plumbing(const StableCurve& c, const TwistedData& d,
                                   const ScalingParams& t, const std::map<int, cx>& horizontal) {
    PlumbingParams p;
    std::vector<int> flat;
    double log_mean = 0.0;
    int down_count = 0;
    for (int k = 1; k <= c.num_edges(); ++k) {
        int lu = d.level[c.vertex_of(k)], lv = d.level[c.vertex_of(-k)];
        if (lu == lv) {
            flat.push_back(k);
            continue;
        }
        int e = lu > lv ? k : -k;
        int ke = local_order(d.xi[c.vertex_of(e)], c.node_point(e));
        if (ke < 0)
            throw std::invalid_argument("upper side of node " + edge_tag(c, k) +
                                        " must carry a zero");
        cx tij = t.between(std::max(lu, lv), std::min(lu, lv));
        p.s[k] = std::exp(std::log(tij) / double(ke + 1));
        log_mean += std::log(std::abs(p.s[k]));
        ++down_count;
    }
    double fallback = down_count ? std::exp(log_mean / down_count) : 1e-2;
    for (int k : flat) {
        auto it = horizontal.find(k);
        p.s[k] = it != horizontal.end() ? it->second : cx(fallback);
    }
    return p;
}

TwistedFamily build_twisted_family(const StableCurve& c, const TwistedData& d,
                                   const ScalingParams& t, const std::map<int, cx>& horizontal,
                                   const SolveOptions& opts) {
    TwistedFamily fam;
    fam.params = scaling_to_plumbing(c, d, t, horizontal);
    fam.scale.resize(c.num_vertices());
    fam.xihat.resize(c.num_vertices());
    for (int v = 0; v < c.num_vertices(); ++v) {
        fam.scale[v] = t.from_top(d.level[v]);
        fam.xihat[v] = d.xi[v];
        for (int j : down_levels(c, d, v))
            fam.xihat[v] += t.between(d.level[v], j) * modification_differential(c, d, v, j);
    }

    JumpData jd;
    jd.base.resize(c.num_vertices());
    for (int v = 0; v < c.num_vertices(); ++v) jd.base[v] = fam.scale[v] * fam.xihat[v];

    for (int e : c.oriented_edges()) {
        int v = c.vertex_of(e), w = c.vertex_of(-e);
        cx q = c.node_point(e);
        RatDiff x;
        if (d.level[v] > d.level[w]) {
            // upper side: subtract the opposite principal part carried through
            // the gluing, then rescale to the top level
            RatDiff pp = fam.xihat[w].principal_part_at(c.node_point(-e));
            RatDiff carried = pp.pullback_glue(q, c.chart_radius(e), c.node_point(-e),
                                               c.chart_radius(-e), fam.params.at(e));
            x = fam.scale[v] *
                (fam.xihat[v] + (-t.between(d.level[v], d.level[w])) * carried);
        } else {
            // lower or horizontal side: drop the pole at the node itself
            x = fam.scale[v] * fam.xihat[v].holomorphic_part_at(q);
        }
        RatDiff stray = x.principal_part_at(q);
        if (!stray.is_zero()) {
            if (stray.coeff_scale() > 1e-8 * (1.0 + x.coeff_scale()))
                throw std::logic_error("initial datum at node " + edge_tag(c, e) +
                                       " is not holomorphic; twisted data is incompatible");
            x = x.holomorphic_part_at(q);  // strip the rounding residue
        }
        jd.xi0[e] = x;
        jd.residue[e] = jd.base[v].residue(q);
    }

    fam.sol = solve_jump(c, fam.params, jd, opts);
    return fam;
}

int zero_count(const RatDiff& f, cx center, double radius, int samples) {
    RatDiff df = f.derivative();
    cx total = 0.0;
    for (int j = 0; j < samples; ++j) {
        double th = 2.0 * M_PI * j / samples;
        cx dir(std::cos(th), std::sin(th));
        cx z = center + radius * dir;
        total += df.evaluate(z) / f.evaluate(z) * cx(0.0, radius) * dir;
    }
    total *= 2.0 * M_PI / samples / cx(0.0, 2.0 * M_PI);
    return int(std::lround(total.real()));
}

double restriction_error(const TwistedFamily& fam, const std::vector<RatDiff>& xi, int v,
                         const std::vector<cx>& pts) {
    RatDiff g = fam.sol.glued(v);
    double m = 0.0;
    for (cx z : pts)
        m = std::max(m, std::abs(g.evaluate(z) / fam.scale[v] - xi[v].evaluate(z)));
    return m;
}

}  // namespace plumb
