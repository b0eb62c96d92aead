#include "plumb/scenario.hpp"

#include <fstream>

namespace plumb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ScenarioError(what); }

const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field '") + key + "'");
    return *it;
}

int vertex_ref(const StableCurve& c, const std::string& name) {
    try {
        return c.vertex_index(name);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

int vertex_ref(const StableCurve& c, const json& j) {
    if (!j.is_string()) fail("vertex references must be names");
    return vertex_ref(c, j.get<std::string>());
}

int edge_ref(const StableCurve& c, const std::string& id) {
    try {
        return std::abs(c.edge_index(id));
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

RatDiff parse_diff(const json& j) {
    if (!j.is_array()) fail("a differential must be a list of pole terms");
    RatDiff f;
    for (const auto& term : j) {
        int order = need(term, "order").get<int>();
        if (order < 1) fail("pole orders must be positive");
        f.add_term(parse_cx(need(term, "pole")), order, parse_cx(need(term, "coeff")));
    }
    return f;
}

StableCurve parse_curve(const json& j) {
    StableCurve c;
    for (const auto& name : need(j, "vertices")) {
        if (!name.is_string()) fail("vertex names must be strings");
        c.vertex_names.push_back(name.get<std::string>());
    }
    if (c.vertex_names.empty()) fail("a curve needs at least one vertex");
    for (const auto& e : need(j, "edges")) {
        EdgeData ed;
        ed.id = need(e, "id").get<std::string>();
        ed.from = vertex_ref(c, need(e, "from"));
        ed.to = vertex_ref(c, need(e, "to"));
        ed.q_from = parse_cx(need(e, "q_from"));
        ed.q_to = parse_cx(need(e, "q_to"));
        ed.rho_from = e.value("rho_from", 1.0);
        ed.rho_to = e.value("rho_to", 1.0);
        c.edges.push_back(ed);
    }
    const json marked = j.value("marked", json::array());
    for (const auto& m : marked) {
        MarkedPoint mk;
        mk.vertex = vertex_ref(c, need(m, "vertex"));
        mk.point = parse_cx(need(m, "point"));
        mk.multiplicity = m.value("multiplicity", 1);
        c.marked.push_back(mk);
    }
    auto problems = validate(c);
    if (!problems.empty()) fail("invalid curve: " + problems.front());
    return c;
}

std::vector<RatDiff> parse_per_vertex(const StableCurve& c, const json& j) {
    std::vector<RatDiff> out(c.num_vertices());
    for (const auto& [name, diff] : j.items()) out[vertex_ref(c, name)] = parse_diff(diff);
    return out;
}

}  // namespace

cx parse_cx(const json& j) {
    if (j.is_number()) return cx(j.get<double>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cx(j[0].get<double>(), j[1].get<double>());
    fail("complex values must be numbers or [re, im] pairs");
}

json cx_json(cx z) { return json::array({z.real(), z.imag()}); }

Scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) fail("the scenario document must be an object");
    Scenario sc;
    sc.name = doc.value("name", std::string("scenario"));
    sc.curve = parse_curve(need(doc, "curve"));

    if (doc.contains("omega")) sc.omega = parse_per_vertex(sc.curve, doc["omega"]);

    const json plumbing = doc.value("plumbing", json::object());
    for (const auto& [id, val] : plumbing.items())
        sc.plumbing.s[edge_ref(sc.curve, id)] = parse_cx(val);

    if (doc.contains("twisted")) {
        const json& tw = doc["twisted"];
        sc.has_twisted = true;
        sc.twisted.xi = parse_per_vertex(sc.curve, need(tw, "xi"));
        sc.twisted.level.assign(sc.curve.num_vertices(), 0);
        std::vector<bool> seen(sc.curve.num_vertices(), false);
        for (const auto& [name, lev] : need(tw, "levels").items()) {
            int v = vertex_ref(sc.curve, name);
            sc.twisted.level[v] = lev.get<int>();
            seen[v] = true;
        }
        for (int v = 0; v < sc.curve.num_vertices(); ++v)
            if (!seen[v]) fail("vertex '" + sc.curve.vertex_names[v] + "' has no level");
        for (const auto& t : need(tw, "scaling")) sc.scaling.t.push_back(parse_cx(t));
        const json horiz = tw.value("horizontal", json::object());
        for (const auto& [id, val] : horiz.items())
            sc.horizontal[edge_ref(sc.curve, id)] = parse_cx(val);
    }

    const json& opts = doc.value("options", json::object());
    sc.solve.tol = opts.value("tol", 1e-14);
    sc.solve.k_max = opts.value("k_max", 32);
    sc.quad_points = opts.value("quad_points", 64);
    sc.schottky_words = opts.value("schottky_words", 8);

    if (doc.contains("sweep")) {
        const json& sw = doc["sweep"];
        SweepSpec spec;
        spec.edge = need(sw, "edge").get<std::string>();
        edge_ref(sc.curve, spec.edge);
        spec.log10_from = sw.value("log10_from", -2.0);
        spec.log10_to = sw.value("log10_to", -6.0);
        spec.points = sw.value("points", 9);
        if (spec.points < 2) fail("a sweep needs at least two points");
        sc.sweep = spec;
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open scenario file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(std::string("scenario is not valid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

}  // namespace plumb
