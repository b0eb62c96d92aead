#pragma once

#include <map>
#include <string>
#include <vector>

#include "plumb/ratdiff.hpp"

namespace plumb {

/// One unoriented edge (node) of the dual graph together with the analytic
/// gluing data on both sides. Oriented edges are signed 1-based indices into
/// the edge list: +k runs from `from` to `to`, -k the other way; the source
/// vertex of an oriented edge carries the node point q_e and radius rho_e.
struct EdgeData {
    std::string id;
    int from = 0, to = 0;
    cx q_from, q_to;
    double rho_from = 1.0, rho_to = 1.0;
};

struct MarkedPoint {
    int vertex = 0;
    cx point;
    int multiplicity = 1;
};

class StableCurve {
public:
    std::vector<std::string> vertex_names;
    std::vector<EdgeData> edges;
    std::vector<MarkedPoint> marked;

    int num_vertices() const { return int(vertex_names.size()); }
    int num_edges() const { return int(edges.size()); }

    int vertex_of(int e) const { return e > 0 ? edges[e - 1].from : edges[-e - 1].to; }
    cx node_point(int e) const { return e > 0 ? edges[e - 1].q_from : edges[-e - 1].q_to; }
    double chart_radius(int e) const { return e > 0 ? edges[e - 1].rho_from : edges[-e - 1].rho_to; }
    const std::string& edge_id(int e) const { return edges[std::abs(e) - 1].id; }

    /// Oriented edges with source v, in index order (+k before -k).
    std::vector<int> edges_at(int v) const;
    /// All oriented edges, +1..+m then -1..-m.
    std::vector<int> oriented_edges() const;

    std::vector<int> marked_at(int v) const;  // indices into marked

    int vertex_index(const std::string& name) const;
    int edge_index(const std::string& id) const;  // 1-based; negative ids with "-" prefix
};

struct PlumbingParams {
    std::map<int, cx> s;  // unoriented edge index (1-based) -> s_e

    cx at(int e) const { return s.at(std::abs(e)); }
    double norm() const;
};

/// Ordered oriented edges (e_0, ..., e_{N-1}) with v(-e_{i-1}) = v(e_i)
/// cyclically.
using CyclePath = std::vector<int>;

struct SymplecticBasis {
    /// Non-tree edges, positively oriented, one per handle; A_k is the seam
    /// of a_edges[k].
    std::vector<int> a_edges;
    std::vector<CyclePath> b_cycles;
    /// intersection[j][k] = (seam of edge j+1) . B_k, computed as the signed
    /// count of traversals of edge j+1 by B_k.
    std::vector<std::vector<int>> intersection;
};

std::vector<std::string> validate(const StableCurve& c);
bool cycle_is_closed(const StableCurve& c, const CyclePath& cycle);
int betti(const StableCurve& c);
SymplecticBasis symplectic_basis(const StableCurve& c);

}  // namespace plumb
