#include "plumb/closed_forms.hpp"

#include <complex>
#include <stdexcept>

namespace plumb::ref {

namespace {

/// rho dz/(z-q)^2: the bidifferential with its second slot frozen at a node.
RatDiff omega_at(cx q, double rho) { return RatDiff::pole(q, 2, cx(rho)); }

void require_banana(const StableCurve& c) {
    if (c.num_vertices() != 2 || c.num_edges() != 2 || c.vertex_of(1) != 0 || c.vertex_of(2) != 0 ||
        c.vertex_of(-1) != 1 || c.vertex_of(-2) != 1)
        throw std::invalid_argument("banana reference needs two components joined at edges 1, 2");
}

}  // namespace

cx xi_tilde(const StableCurve& c, const RatDiff& f, int e) {
    cx q = c.node_point(e);
    return f.holomorphic_part_at(q).evaluate(q) * c.chart_radius(e);
}

cx sigma_value(const StableCurve& c, const RatDiff& f, int e) { return xi_tilde(c, f, e); }

RatDiff one_node_first_order(cx q1, cx q2, double rho1, double rho2, cx s, cx xi1t, cx xi2t) {
    return (-s * xi2t) * omega_at(q1, rho1) + (-s * xi1t) * omega_at(q2, rho2);
}

std::pair<RatDiff, RatDiff> separating_corrections(cx q1, cx q2, double rho1, double rho2, cx s,
                                                   cx xi1t, cx xi2t, cx beta1, cx beta2) {
    RatDiff side1 = (-s * xi2t + s * s * beta2 * xi1t) * omega_at(q1, rho1);
    RatDiff side2 = (-s * xi1t + s * s * beta1 * xi2t) * omega_at(q2, rho2);
    return {side1, side2};
}

RatDiff banana_eta_b1(const StableCurve& c, cx s1, cx s2, cx xi_e1t, cx xi_e2t) {
    require_banana(c);
    return (-s1 * xi_e1t) * omega_at(c.node_point(-1), c.chart_radius(-1)) +
           (-s2 * xi_e2t) * omega_at(c.node_point(-2), c.chart_radius(-2));
}

RatDiff banana_eta_a2(const StableCurve& c, cx s1, cx s2, cx xi_e1t, cx xi_e2t) {
    require_banana(c);
    cx d = c.node_point(-1) - c.node_point(-2);
    cx beta = c.chart_radius(-1) * c.chart_radius(-2) / (d * d);  // beta_12 = beta_21
    return (s1 * s2 * beta * xi_e2t) * omega_at(c.node_point(1), c.chart_radius(1)) +
           (s1 * s2 * beta * xi_e1t) * omega_at(c.node_point(2), c.chart_radius(2));
}

std::map<int, cx> banana_leading_period_linear(const StableCurve& c) {
    require_banana(c);
    // dual basis differential of the cycle through both nodes: on side a the
    // third-kind form from q_{e2} to q_{e1}, on side b from q_{-e1} to q_{-e2}
    RatDiff va = RatDiff::third_kind(c.node_point(2), c.node_point(1));
    RatDiff vb = RatDiff::third_kind(c.node_point(-1), c.node_point(-2));
    std::map<int, cx> lin;
    for (int i : {1, 2})
        lin[i] = -2.0 * sigma_value(c, vb, -i) * sigma_value(c, va, i);
    return lin;
}

PeriodExpansion tot_deg_tau(const StableCurve& c, int i, int j) {
    if (c.num_vertices() != 1)
        throw std::invalid_argument("totally degenerate reference needs one component");
    int g = c.num_edges();
    for (int e = 1; e <= g; ++e)
        if (c.chart_radius(e) != 1.0 || c.chart_radius(-e) != 1.0)
            throw std::invalid_argument("totally degenerate reference needs unit chart radii");
    if (i < 1 || i > g || j < 1 || j > g) throw std::invalid_argument("edge index out of range");

    auto qp = [&](int k) { return c.node_point(k); };
    auto qm = [&](int k) { return c.node_point(-k); };

    PeriodExpansion tau;
    if (i == j) {
        cx d = qp(i) - qm(i);
        tau.log_coeff[i] = 1.0;
        tau.constant = -2.0 * std::log(d);
        tau.linear[i] = -2.0 / (d * d);
        for (int k = 1; k <= g; ++k) {
            if (k == i) continue;
            tau.linear[k] = -2.0 * d * d /
                            ((qp(k) - qm(i)) * (qp(k) - qp(i)) * (qm(k) - qm(i)) * (qm(k) - qp(i)));
        }
        return tau;
    }

    cx di = qp(i) - qm(i), dj = qp(j) - qm(j);
    cx cross = (qp(i) - qp(j)) * (qm(i) - qm(j)) / ((qp(i) - qm(j)) * (qm(i) - qp(j)));
    tau.constant = std::log(cross);
    for (int k = 1; k <= g; ++k) {
        if (k == i || k == j) continue;
        tau.linear[k] =
            -di * dj / ((qp(k) - qp(i)) * (qp(k) - qm(i)) * (qm(k) - qp(j)) * (qm(k) - qm(j))) -
            di * dj / ((qp(k) - qp(j)) * (qp(k) - qm(j)) * (qm(k) - qp(i)) * (qm(k) - qm(i)));
    }
    tau.linear[i] = (dj / di) * (1.0 / ((qp(i) - qp(j)) * (qp(i) - qm(j))) +
                                 1.0 / ((qm(i) - qp(j)) * (qm(i) - qm(j))));
    tau.linear[j] = (di / dj) * (1.0 / ((qp(j) - qp(i)) * (qp(j) - qm(i))) +
                                 1.0 / ((qm(j) - qp(i)) * (qm(j) - qm(i))));
    return tau;
}

}  // namespace plumb::ref
