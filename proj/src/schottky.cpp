#include "plumb/schottky.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace plumb {

namespace {

struct Mobius {
    cx a, b, c, d;
    cx operator()(cx z) const { return (a * z + b) / (c * z + d); }
    Mobius inverse() const { return {d, -b, -c, a}; }
    friend Mobius operator*(const Mobius& l, const Mobius& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
                l.c * r.b + l.d * r.d};
    }
    cx det() const { return a * d - b * c; }
    cx deriv(cx z) const { return det() / ((c * z + d) * (c * z + d)); }
};

struct Generator {
    Mobius m;
    cx fix_rep;   // repelling fixed point, near q_e
    cx fix_attr;  // attracting fixed point, near q_{-e}
    cx multiplier;
};

/// Cross-ratio (a - c)(b - d) / ((a - d)(b - c)).
cx cross(cx a, cx b, cx c, cx d) { return ((a - c) * (b - d)) / ((a - d) * (b - c)); }

Generator make_generator(const StableCurve& curve, const PlumbingParams& s, int i) {
    cx qp = curve.node_point(i), qm = curve.node_point(-i);
    cx k = curve.chart_radius(i) * curve.chart_radius(-i) * s.at(i);
    // gluing relation (z - qp)(w - qm) = k read as w = gamma(z)
    Mobius m{qm, k - qp * qm, cx(1.0), -qp};
    // fixed points: (z - qp)(z - qm) = k
    cx half = 0.5 * (qp - qm);
    cx root = std::sqrt(half * half + k);
    if (std::real(root * std::conj(half)) < 0.0) root = -root;  // root ~ +half
    cx mid = 0.5 * (qp + qm);
    Generator g{m, mid + root, mid - root, cx(0.0)};
    // the matrix determinant is -k exactly; avoid the cancellation in ad - bc
    g.multiplier = -k / ((g.fix_attr - qp) * (g.fix_attr - qp));
    if (std::abs(g.multiplier) >= 1.0 ||
        std::abs(g.fix_rep - qp) >= curve.chart_radius(i) ||
        std::abs(g.fix_attr - qm) >= curve.chart_radius(-i))
        throw std::domain_error("gluing map leaves the chart disks: |s| too large at node " +
                                std::to_string(i));
    return g;
}

struct Word {
    std::vector<int> letters;  // generator indices, sign = inverse
    Mobius m;
};

}  // namespace

SchottkyResult schottky_tau(const StableCurve& c, const PlumbingParams& s, int L) {
    if (c.num_vertices() != 1)
        throw std::invalid_argument("uniformization oracle covers irreducible curves only");
    if (L < 1) throw std::invalid_argument("word length cap must be >= 1");
    int g = c.num_edges();

    std::vector<Generator> gen;
    for (int i = 1; i <= g; ++i) gen.push_back(make_generator(c, s, i));
    auto letter_map = [&](int letter) {
        return letter > 0 ? gen[letter - 1].m : gen[-letter - 1].m.inverse();
    };

    // reduced words by breadth-first expansion, letters ordered +1,-1,+2,...
    std::vector<std::vector<Word>> words(L + 1);
    words[0].push_back({{}, Mobius{cx(1.0), cx(0.0), cx(0.0), cx(1.0)}});
    for (int l = 1; l <= L; ++l) {
        for (const Word& w : words[l - 1]) {
            for (int i = 1; i <= g; ++i) {
                for (int letter : {i, -i}) {
                    if (!w.letters.empty() && w.letters.back() == -letter) continue;
                    Word nw = w;
                    nw.letters.push_back(letter);
                    nw.m = w.m * letter_map(letter);
                    words[l].push_back(std::move(nw));
                }
            }
        }
    }

    SchottkyResult out;
    out.tau.assign(g, std::vector<cx>(g, cx(0.0)));
    out.shell.assign(L, 0.0);
    for (int j = 1; j <= g; ++j) {
        for (int k = 1; k <= g; ++k) {
            cx sum = (j == k) ? std::log(gen[j - 1].multiplier)
                              : std::log(cross(gen[j - 1].fix_rep, gen[j - 1].fix_attr,
                                               gen[k - 1].fix_rep, gen[k - 1].fix_attr));
            // double cosets <g_j> \ G / <g_k>: reduced words with no leading
            // j-letter and no trailing k-letter
            for (int l = 1; l <= L; ++l) {
                double shell = 0.0;
                for (const Word& w : words[l]) {
                    if (std::abs(w.letters.front()) == j) continue;
                    if (std::abs(w.letters.back()) == k) continue;
                    cx term = std::log(cross(gen[j - 1].fix_rep, gen[j - 1].fix_attr,
                                             w.m(gen[k - 1].fix_rep), w.m(gen[k - 1].fix_attr)));
                    sum += term;
                    shell += std::abs(term);
                }
                out.shell[l - 1] = std::max(out.shell[l - 1], shell);
            }
            out.tau[j - 1][k - 1] = sum;
        }
    }
    out.shell_estimate = out.shell.back();
    return out;
}

}  // namespace plumb
