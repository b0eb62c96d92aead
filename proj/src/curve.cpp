#include "plumb/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

namespace plumb {

std::vector<int> StableCurve::edges_at(int v) const {
    std::vector<int> out;
    for (int k = 1; k <= num_edges(); ++k) {
        if (edges[k - 1].from == v) out.push_back(k);
        if (edges[k - 1].to == v) out.push_back(-k);
    }
    return out;
}

std::vector<int> StableCurve::oriented_edges() const {
    std::vector<int> out;
    for (int k = 1; k <= num_edges(); ++k) out.push_back(k);
    for (int k = 1; k <= num_edges(); ++k) out.push_back(-k);
    return out;
}

std::vector<int> StableCurve::marked_at(int v) const {
    std::vector<int> out;
    for (int i = 0; i < int(marked.size()); ++i)
        if (marked[i].vertex == v) out.push_back(i);
    return out;
}

int StableCurve::vertex_index(const std::string& name) const {
    for (int i = 0; i < num_vertices(); ++i)
        if (vertex_names[i] == name) return i;
    throw std::invalid_argument("unknown vertex: " + name);
}

int StableCurve::edge_index(const std::string& id) const {
    if (!id.empty() && id[0] == '-') return -edge_index(id.substr(1));
    for (int k = 1; k <= num_edges(); ++k)
        if (edges[k - 1].id == id) return k;
    throw std::invalid_argument("unknown edge: " + id);
}

double PlumbingParams::norm() const {
    double m = 0.0;
    for (const auto& [e, se] : s) m = std::max(m, std::abs(se));
    return m;
}

namespace {

bool connected(const StableCurve& c) {
    if (c.num_vertices() == 0) return false;
    std::vector<char> seen(c.num_vertices(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e : c.edges_at(v)) {
            int w = c.vertex_of(-e);
            if (!seen[w]) {
                seen[w] = 1;
                q.push(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char x) { return x != 0; });
}

}  // namespace

std::vector<std::string> validate(const StableCurve& c) {
    std::vector<std::string> bad;
    auto complain = [&](const std::string& m) { bad.push_back(m); };

    if (c.num_vertices() == 0) complain("curve has no components");
    for (const auto& e : c.edges) {
        if (e.from < 0 || e.from >= c.num_vertices() || e.to < 0 || e.to >= c.num_vertices())
            complain("edge " + e.id + " references an unknown vertex");
        if (!(e.rho_from > 0.0) || !(e.rho_to > 0.0))
            complain("edge " + e.id + " has non-positive chart radius");
    }
    if (!bad.empty()) return bad;

    if (!connected(c)) complain("dual graph is disconnected");

    for (int v = 0; v < c.num_vertices(); ++v) {
        auto ev = c.edges_at(v);
        // chart disks pairwise disjoint
        for (size_t i = 0; i < ev.size(); ++i)
            for (size_t j = i + 1; j < ev.size(); ++j) {
                double gap = std::abs(c.node_point(ev[i]) - c.node_point(ev[j]));
                if (gap <= c.chart_radius(ev[i]) + c.chart_radius(ev[j])) {
                    std::ostringstream os;
                    os << "charts overlap on component " << c.vertex_names[v] << " (edges "
                       << c.edge_id(ev[i]) << ", " << c.edge_id(ev[j]) << ")";
                    complain(os.str());
                }
            }
        // marked points stay outside all chart disks
        for (int mi : c.marked_at(v))
            for (int e : ev)
                if (std::abs(c.marked[mi].point - c.node_point(e)) <= c.chart_radius(e))
                    complain("marked point inside the chart of edge " + c.edge_id(e));
        // stability: >= 3 special points per genus-0 component
        size_t specials = ev.size() + c.marked_at(v).size();
        if (specials < 3)
            complain("component " + c.vertex_names[v] + " has < 3 special points");
    }
    return bad;
}

bool cycle_is_closed(const StableCurve& c, const CyclePath& cycle) {
    if (cycle.empty()) return false;
    int n = int(cycle.size());
    for (int i = 0; i < n; ++i) {
        int prev = cycle[(i + n - 1) % n];
        if (c.vertex_of(-prev) != c.vertex_of(cycle[i])) return false;
    }
    return true;
}

int betti(const StableCurve& c) {
    if (!connected(c)) throw std::invalid_argument("betti: dual graph is disconnected");
    return c.num_edges() - c.num_vertices() + 1;
}

SymplecticBasis symplectic_basis(const StableCurve& c) {
    // Spanning tree grown greedily over edges sorted by id; deterministic.
    std::vector<int> order(c.num_edges());
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return c.edges[a - 1].id < c.edges[b - 1].id; });

    std::vector<int> comp(c.num_vertices());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };

    std::vector<char> in_tree(c.num_edges() + 1, 0);
    std::vector<int> handles;
    for (int k : order) {
        int a = find(c.edges[k - 1].from), b = find(c.edges[k - 1].to);
        if (a != b) {
            comp[a] = b;
            in_tree[k] = 1;
        } else {
            handles.push_back(k);
        }
    }

    // adjacency restricted to tree edges
    auto tree_path = [&](int from, int to) -> std::vector<int> {
        // BFS over tree edges; returns oriented edge list from `from` to `to`.
        std::vector<int> prev_edge(c.num_vertices(), 0);
        std::vector<char> seen(c.num_vertices(), 0);
        std::queue<int> q;
        q.push(from);
        seen[from] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (v == to) break;
            for (int e : c.edges_at(v)) {
                if (!in_tree[std::abs(e)]) continue;
                int w = c.vertex_of(-e);
                if (!seen[w]) {
                    seen[w] = 1;
                    prev_edge[w] = e;
                    q.push(w);
                }
            }
        }
        std::vector<int> path;
        int v = to;
        while (v != from) {
            int e = prev_edge[v];
            path.push_back(e);
            v = c.vertex_of(e);
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    SymplecticBasis basis;
    for (int k : handles) {
        basis.a_edges.push_back(k);
        CyclePath cyc;
        cyc.push_back(k);
        for (int e : tree_path(c.vertex_of(-k), c.vertex_of(k))) cyc.push_back(e);
        basis.b_cycles.push_back(cyc);
    }
    basis.intersection.assign(c.num_edges(), std::vector<int>(handles.size(), 0));
    for (size_t kk = 0; kk < basis.b_cycles.size(); ++kk)
        for (int f : basis.b_cycles[kk])
            basis.intersection[std::abs(f) - 1][kk] += (f > 0) ? 1 : -1;
    return basis;
}

}  // namespace plumb
