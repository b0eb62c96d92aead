// Command-line driver: loads JSON scenarios and runs the solver, period
// machinery, oracles and twisted-data checks. JSON goes to stdout and,
// with --out, into <dir>/<scenario>_<command>.json (CSV for sweeps).
//
// Exit codes: 0 ok, 2 scenario/schema problem, 3 solver non-convergence,
// 4 breached invariant (including dirty twisted data).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "plumb/closed_forms.hpp"
#include "plumb/periods.hpp"
#include "plumb/quadrature.hpp"
#include "plumb/scenario.hpp"
#include "plumb/schottky.hpp"
#include "plumb/twisted.hpp"

using namespace plumb;
using nlohmann::json;

namespace {

struct Options {
    std::string scenario_path;
    std::string out_dir;
    std::string backend = "residue";
    int seed = 0;
};

json diff_json(const RatDiff& f) {
    json terms = json::array();
    for (const auto& [site, orders] : f.parts())
        for (const auto& [m, c] : orders)
            terms.push_back({{"pole", cx_json(site.p)}, {"order", m}, {"coeff", cx_json(c)}});
    if (f.has_poly()) {
        json poly = json::array();
        for (const auto& [deg, c] : f.poly())
            poly.push_back({{"degree", deg}, {"coeff", cx_json(c)}});
        terms.push_back({{"poly", poly}});
    }
    return terms;
}

json expansion_json(const StableCurve& c, const PeriodExpansion& ex) {
    json log, lin;
    for (const auto& [e, v] : ex.log_coeff) log[c.edge_id(e)] = cx_json(v);
    for (const auto& [e, v] : ex.linear) lin[c.edge_id(e)] = cx_json(v);
    return {{"log", log}, {"const", cx_json(ex.constant)}, {"linear", lin}};
}

json matrix_json(const std::vector<std::vector<cx>>& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (cx v : row) r.push_back(cx_json(v));
        rows.push_back(r);
    }
    return rows;
}

void emit(const Options& opt, const Scenario& sc, const std::string& cmd, const json& doc,
          const std::string& ext = "json") {
    std::string text = ext == "json" ? doc.dump(2) + "\n" : doc.get<std::string>();
    std::cout << text;
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        std::ofstream f(opt.out_dir + "/" + sc.name + "_" + cmd + "." + ext);
        f << text;
    }
}

JumpData scenario_data(const Scenario& sc) {
    if (sc.omega.empty()) throw ScenarioError("this command needs an 'omega' block");
    return initial_data(sc.curve, sc.omega);
}

void require_plumbing(const Scenario& sc) {
    for (int k = 1; k <= sc.curve.num_edges(); ++k)
        if (!sc.plumbing.s.count(k))
            throw ScenarioError("edge '" + sc.curve.edge_id(k) + "' has no plumbing parameter");
}

json solution_json(const JumpSolution& sol) {
    const StableCurve& c = sol.curve;
    json eta;
    for (int v = 0; v < c.num_vertices(); ++v) {
        json orders = json::array();
        for (int k = 1; k <= sol.K; ++k) orders.push_back(diff_json(sol.eta_order(v, k)));
        eta[c.vertex_names[v]] = orders;
    }
    return {{"orders", sol.K},
            {"contraction_ratio", sol.ratio},
            {"tail_bound", sol.tail_bound},
            {"jump_residual", jump_residual(sol)},
            {"a_norm_residual", a_norm_residual(sol)},
            {"eta", eta}};
}

/// Pointwise gap between the residue and quadrature backends on the chart
/// boundary circles, per correction order.
json backend_gap(const Scenario& sc, const JumpSolution& sol, int orders) {
    JumpData jd = scenario_data(sc);
    QuadratureSolution q = quad_solve(sc.curve, sc.plumbing, jd, orders, sc.quad_points);
    json per_order = json::array();
    for (int k = 1; k <= orders; ++k) {
        double gap = 0.0;
        for (int e : sc.curve.oriented_edges()) {
            int v = sc.curve.vertex_of(e);
            for (int j = 0; j < 8; ++j) {
                double th = 2.0 * M_PI * j / 8.0;
                cx z = sc.curve.node_point(e) +
                       sc.curve.chart_radius(e) * cx(std::cos(th), std::sin(th));
                gap = std::max(gap,
                               std::abs(sol.eta_order(v, k).evaluate(z) - q.eta_order(v, k, z)));
            }
        }
        per_order.push_back(gap);
    }
    return per_order;
}

int cmd_validate(const Options& opt) {
    Scenario sc = load_scenario(opt.scenario_path);  // parse already validates
    json doc = {{"scenario", sc.name},
                {"vertices", sc.curve.num_vertices()},
                {"edges", sc.curve.num_edges()},
                {"marked", sc.curve.marked.size()},
                {"betti", betti(sc.curve)},
                {"problems", json::array()}};
    emit(opt, sc, "validate", doc);
    return 0;
}

int cmd_solve(const Options& opt) {
    Scenario sc = load_scenario(opt.scenario_path);
    require_plumbing(sc);
    JumpData jd = scenario_data(sc);
    JumpSolution sol = solve_jump(sc.curve, sc.plumbing, jd, sc.solve);
    json doc = {{"scenario", sc.name}, {"backend", opt.backend}};
    doc.update(solution_json(sol));
    if (opt.backend == "both" || opt.backend == "quadrature")
        doc["backend_gap"] = backend_gap(sc, sol, std::min(sol.K, 4));
    emit(opt, sc, "solve", doc);
    return 0;
}

int cmd_period(const Options& opt) {
    Scenario sc = load_scenario(opt.scenario_path);
    require_plumbing(sc);
    JumpData jd = scenario_data(sc);
    JumpSolution sol = solve_jump(sc.curve, sc.plumbing, jd, sc.solve);
    SymplecticBasis basis = symplectic_basis(sc.curve);
    json cycles = json::array();
    for (size_t k = 0; k < basis.b_cycles.size(); ++k) {
        cycles.push_back(
            {{"handle", sc.curve.edge_id(basis.a_edges[k])},
             {"numeric", cx_json(period_numeric(sol, basis.b_cycles[k]))},
             {"expansion",
              expansion_json(sc.curve, period_expansion(sc.curve, jd, basis.b_cycles[k]))}});
    }
    json doc = {{"scenario", sc.name}, {"b_periods", cycles}};
    emit(opt, sc, "period", doc);
    return 0;
}

int cmd_period_matrix(const Options& opt) {
    Scenario sc = load_scenario(opt.scenario_path);
    require_plumbing(sc);
    PeriodMatrixResult pm = period_matrix(sc.curve, sc.plumbing, sc.solve);
    json exp_rows = json::array();
    for (const auto& row : pm.expansion) {
        json r = json::array();
        for (const auto& ex : row) r.push_back(expansion_json(sc.curve, ex));
        exp_rows.push_back(r);
    }
    json doc = {{"scenario", sc.name},
                {"numeric", matrix_json(pm.numeric)},
                {"expansion", exp_rows}};
    emit(opt, sc, "period-matrix", doc);
    return 0;
}

int cmd_oracle_compare(const Options& opt) {
    Scenario sc = load_scenario(opt.scenario_path);
    require_plumbing(sc);
    PeriodMatrixResult pm = period_matrix(sc.curve, sc.plumbing, sc.solve);
    SchottkyResult orc = schottky_tau(sc.curve, sc.plumbing, sc.schottky_words);
    int g = int(pm.numeric.size());
    std::vector<std::vector<cx>> diff(g, std::vector<cx>(g));
    double worst = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            cx d = pm.numeric[i][j] - orc.tau[i][j];
            // both sides carry their own log branches; compare modulo i*pi
            d.imag(d.imag() - M_PI * std::round(d.imag() / M_PI));
            diff[i][j] = d;
            worst = std::max(worst, std::abs(d));
        }
    json doc = {{"scenario", sc.name},
                {"solver", matrix_json(pm.numeric)},
                {"oracle", matrix_json(orc.tau)},
                {"difference_mod_ipi", matrix_json(diff)},
                {"max_difference", worst},
                {"oracle_truncation", orc.shell_estimate}};
    emit(opt, sc, "oracle-compare", doc);
    return 0;
}

int cmd_closed_form(const Options& opt) {
    Scenario sc = load_scenario(opt.scenario_path);
    json doc = {{"scenario", sc.name}};
    if (sc.curve.num_vertices() == 1) {
        int g = sc.curve.num_edges();
        json rows = json::array();
        for (int i = 1; i <= g; ++i) {
            json r = json::array();
            for (int j = 1; j <= g; ++j)
                r.push_back(expansion_json(sc.curve, ref::tot_deg_tau(sc.curve, i, j)));
            rows.push_back(r);
        }
        doc["tau"] = rows;
    } else {
        json lin;
        for (const auto& [e, v] : ref::banana_leading_period_linear(sc.curve))
            lin[sc.curve.edge_id(e)] = cx_json(v);
        doc["tau11_linear"] = lin;
    }
    emit(opt, sc, "closed-form", doc);
    return 0;
}

int cmd_twisted_check(const Options& opt) {
    Scenario sc = load_scenario(opt.scenario_path);
    if (!sc.has_twisted) throw ScenarioError("this command needs a 'twisted' block");
    CompatReport rep = check_compatibility(sc.curve, sc.twisted, sc.omega);
    json items = json::array();
    for (const auto& item : rep.items)
        items.push_back({{"condition", item.condition}, {"pass", item.pass},
                         {"detail", item.detail}});
    json doc = {{"scenario", sc.name}, {"clean", rep.clean()}, {"conditions", items}};
    emit(opt, sc, "twisted-check", doc);
    return rep.clean() ? 0 : 4;
}

int cmd_twisted_build(const Options& opt) {
    Scenario sc = load_scenario(opt.scenario_path);
    if (!sc.has_twisted) throw ScenarioError("this command needs a 'twisted' block");
    TwistedFamily fam = build_twisted_family(sc.curve, sc.twisted, sc.scaling, sc.horizontal,
                                             sc.solve);
    json scales, params;
    for (int v = 0; v < sc.curve.num_vertices(); ++v)
        scales[sc.curve.vertex_names[v]] = cx_json(fam.scale[v]);
    for (const auto& [e, s] : fam.params.s) params[sc.curve.edge_id(e)] = cx_json(s);
    json doc = {{"scenario", sc.name}, {"plumbing", params}, {"level_scale", scales}};
    doc.update(solution_json(fam.sol));
    emit(opt, sc, "twisted-build", doc);
    return 0;
}

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_sweep(const Options& opt) {
    Scenario sc = load_scenario(opt.scenario_path);
    if (!sc.sweep) throw ScenarioError("this command needs a 'sweep' block");
    require_plumbing(sc);
    JumpData jd = scenario_data(sc);
    int edge = std::abs(sc.curve.edge_index(sc.sweep->edge));

    std::vector<double> xs, ys;
    std::string csv = "log_s,log_eta\n";
    for (int i = 0; i < sc.sweep->points; ++i) {
        double lg = sc.sweep->log10_from +
                    (sc.sweep->log10_to - sc.sweep->log10_from) * i / (sc.sweep->points - 1);
        PlumbingParams p = sc.plumbing;
        p.s[edge] = cx(std::pow(10.0, lg));
        JumpSolution sol = solve_jump(sc.curve, p, jd, sc.solve);
        double norm2 = 0.0;
        for (int v = 0; v < sc.curve.num_vertices(); ++v) {
            double nv = l2_norm(sol, v);
            norm2 += nv * nv;
        }
        double x = lg * std::log(10.0), y = 0.5 * std::log(norm2);
        xs.push_back(x);
        ys.push_back(y);
        char line[64];
        std::snprintf(line, sizeof line, "%.12g,%.12g\n", x, y);
        csv += line;
    }
    double slope = fit_slope(xs, ys);
    emit(opt, sc, "sweep", json(csv), "csv");
    json doc = {{"scenario", sc.name},
                {"edge", sc.sweep->edge},
                {"points", sc.sweep->points},
                {"slope", slope}};
    emit(opt, sc, "sweep_summary", doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degenerating families of Abelian differentials on plumbed curves"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--scenario", opt.scenario_path, "scenario JSON file")->required();
    app.add_option("--out", opt.out_dir, "directory for result artifacts");
    app.add_option("--backend", opt.backend, "solver backend")
        ->check(CLI::IsMember({"residue", "quadrature", "both"}));
    app.add_option("--seed", opt.seed, "seed for randomized suites");

    std::map<std::string, int (*)(const Options&)> commands = {
        {"validate", cmd_validate},         {"solve", cmd_solve},
        {"period", cmd_period},             {"period-matrix", cmd_period_matrix},
        {"oracle-compare", cmd_oracle_compare}, {"closed-form", cmd_closed_form},
        {"twisted-check", cmd_twisted_check},   {"twisted-build", cmd_twisted_build},
        {"sweep", cmd_sweep}};
    for (auto& [name, fn] : commands) app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string chosen = app.get_subcommands().front()->get_name();
    try {
        return commands.at(chosen)(opt);
    } catch (const ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergence& e) {
        std::cerr << "solver did not converge: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return 4;
    }
}
