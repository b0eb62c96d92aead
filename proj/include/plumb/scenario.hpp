#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "plumb/curve.hpp"
#include "plumb/jump.hpp"
#include "plumb/twisted.hpp"

namespace plumb {

/// Thrown on malformed scenario documents (missing fields, unknown vertex or
/// edge names, wrong shapes). The CLI maps it to exit code 2.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Complex numbers travel as [re, im] pairs; plain numbers are accepted as
/// purely real on input.
cx parse_cx(const nlohmann::json& j);
nlohmann::json cx_json(cx z);

/// One point of a parameter sweep: the named edge runs over
/// logspace(log10_from, log10_to) with the given number of points while the
/// other edges keep their scenario values.
struct SweepSpec {
    std::string edge;
    double log10_from = -2.0;
    double log10_to = -6.0;
    int points = 9;
};

/// A parsed scenario document:
///   curve      {vertices, edges: [{id, from, to, q_from, q_to, rho_from,
///              rho_to}], marked: [{vertex, point, multiplicity}]}
///   omega      per-vertex differential, each a list of
///              {pole, order, coeff} terms
///   plumbing   edge id -> s_e
///   twisted    {levels: {vertex: int}, xi: {vertex: [terms]},
///              scaling: [t_-1, ...], horizontal: {edge: s}}
///   options    tol (1e-14), k_max (32), quad_points (64), schottky_words (8)
///   sweep      {edge, log10_from, log10_to, points}
struct Scenario {
    std::string name;
    StableCurve curve;
    std::vector<RatDiff> omega;  // empty when the document has none
    PlumbingParams plumbing;

    bool has_twisted = false;
    TwistedData twisted;
    ScalingParams scaling;
    std::map<int, cx> horizontal;

    SolveOptions solve;
    int quad_points = 64;
    int schottky_words = 8;
    std::optional<SweepSpec> sweep;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

}  // namespace plumb
