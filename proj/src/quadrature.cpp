#include "plumb/quadrature.hpp"

#include <cmath>

namespace plumb {

cx QuadratureSolution::seam_integral(int e, int k, cx z) const {
    const auto& g = pulled.at(e)[k];
    const auto& w = nodes.at(e);
    cx q = curve.node_point(e);
    cx sum = 0.0;
    for (int j = 0; j < n; ++j) sum += g[j] * (w[j] - q) / (z - w[j]);
    return sum / double(n);
}

cx QuadratureSolution::eta_order(int v, int k, cx z) const {
    cx sum = 0.0;
    for (int e : curve.edges_at(v)) sum += seam_integral(e, k - 1, z);
    return sum;
}

cx QuadratureSolution::eta_total(int v, cx z) const {
    cx sum = 0.0;
    for (int k = 1; k <= K; ++k) sum += eta_order(v, k, z);
    return sum;
}

cx QuadratureSolution::glued_value(int v, cx z) const {
    return base[v].evaluate(z) + eta_total(v, z);
}

QuadratureSolution quad_solve(const StableCurve& c, const PlumbingParams& s, const JumpData& data,
                              int K, int n) {
    QuadratureSolution q;
    q.curve = c;
    q.params = s;
    q.base = data.base;
    q.n = n;
    q.K = K;

    // Node angles start at arg(s_e)/2 so that the gluing zeta -> s_e/zeta maps
    // node j of one side to node -j (mod n) of the other.
    for (int e : c.oriented_edges()) {
        cx se = s.at(e);
        double r = std::sqrt(std::abs(se));
        double half = std::arg(se) / 2.0;
        std::vector<cx> pts(n);
        for (int j = 0; j < n; ++j) {
            double th = half + 2.0 * M_PI * j / n;
            pts[j] = c.node_point(e) + c.chart_radius(e) * r * cx(std::cos(th), std::sin(th));
        }
        q.nodes[e] = std::move(pts);
        std::vector<cx> x0(n);
        auto it = data.xi0.find(e);
        for (int j = 0; j < n; ++j) x0[j] = (it == data.xi0.end()) ? cx(0.0) : it->second.evaluate(q.nodes[e][j]);
        q.xi[e] = {std::move(x0)};
        q.pulled[e] = {};
    }

    for (int k = 1; k <= K; ++k) {
        for (int e : c.oriented_edges()) {
            cx se = s.at(e);
            cx qe = c.node_point(e);
            double rho = c.chart_radius(e), rho_op = c.chart_radius(-e);
            std::vector<cx> g(n);
            for (int j = 0; j < n; ++j) {
                cx zeta = (q.nodes[e][j] - qe) / rho;
                cx val_far = q.xi[-e][k - 1][(n - j) % n];
                g[j] = val_far * (-(rho_op / rho) * se / (zeta * zeta));
            }
            q.pulled[e].push_back(std::move(g));
        }
        for (int e : c.oriented_edges()) {
            int v = c.vertex_of(e);
            std::vector<cx> xk(n, 0.0);
            for (int ep : c.edges_at(v)) {
                if (ep == e) continue;
                for (int j = 0; j < n; ++j) xk[j] += q.seam_integral(ep, k - 1, q.nodes[e][j]);
            }
            q.xi[e].push_back(std::move(xk));
        }
    }
    return q;
}

}  // namespace plumb
