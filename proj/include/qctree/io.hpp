#pragma once

// JSON encodings. Rationals always travel as "p/q" strings.
//
//   weight: {"m": 4, "a": ["1/2","1/2","1/4","1/4"]}
//           {"m": "inf", "a": ["1/2","1/2"], "tail_ratio": "1/2", "cap": 16}
//             (a(j) = a(k) * ratio^(j-k) beyond the listed head of length k)
//   tree:   {"vertices": ["a","b"], "edges": [["a","b","1/2"]]}
//   vertex levels: [["v", 1], ...] or [{"vertex": "v", "level": 1}, ...]

#include "qctree/gluing.hpp"
#include "qctree/report.hpp"

#include "json.hpp"

#include <fstream>

namespace qctree {

using Json = nlohmann::json;

inline Rational rational_from_json(const Json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw DomainError("expected a rational as a \"p/q\" string, got " + j.dump());
}

inline Weight weight_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("m") || !j.contains("a") || !j["a"].is_array()) {
        throw DomainError("weight JSON needs fields \"m\" and \"a\"");
    }
    std::vector<Rational> values;
    for (const auto& v : j["a"]) values.push_back(rational_from_json(v));
    if (j["m"].is_string() && (j["m"] == "inf" || j["m"] == "INFINITE")) {
        if (!j.contains("tail_ratio")) throw DomainError("infinite weight needs a \"tail_ratio\"");
        const std::size_t cap = j.value("cap", std::size_t{16});
        return Weight::geometric_tail(std::move(values), rational_from_json(j["tail_ratio"]), cap);
    }
    if (!j["m"].is_number_integer()) throw DomainError("\"m\" must be an integer or \"inf\"");
    const long m = j["m"].get<long>();
    if (m < 2) throw DomainError("alphabet size m must be at least 2");
    if (static_cast<std::size_t>(m) != values.size()) {
        throw DomainError("weight lists " + std::to_string(values.size()) + " values for m = " + std::to_string(m));
    }
    return Weight::finite(std::move(values));
}

inline Json weight_to_json(const Weight& a)
{
    Json j;
    Json values = Json::array();
    for (const auto& v : a.head()) values.push_back(format_rational(v));
    j["a"] = values;
    if (a.is_infinite()) {
        j["m"] = "inf";
        j["tail_ratio"] = format_rational(*a.tail_ratio());
        j["cap"] = a.size();
    } else {
        j["m"] = a.size();
    }
    return j;
}

inline FiniteGeodesicTree tree_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
        throw DomainError("tree JSON needs \"vertices\" and \"edges\"");
    }
    FiniteGeodesicTree t;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw DomainError("vertex identifiers must be strings");
        t.add_vertex(v.get<std::string>());
    }
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string()) {
            throw DomainError("edges are [\"u\", \"v\", \"p/q\"] triples, got " + e.dump());
        }
        t.add_edge(e[0].get<std::string>(), e[1].get<std::string>(), rational_from_json(e[2]));
    }
    t.validate();
    return t;
}

inline Json tree_to_json(const FiniteGeodesicTree& t)
{
    Json j;
    j["vertices"] = t.vertices();
    Json edges = Json::array();
    for (const auto& e : t.edges()) edges.push_back({t.id(e.u), t.id(e.v), format_rational(e.length)});
    j["edges"] = edges;
    return j;
}

inline std::vector<VertexLevel> vertex_levels_from_json(const Json& j)
{
    if (!j.is_array()) throw DomainError("vertex levels must be a JSON array");
    std::vector<VertexLevel> out;
    for (const auto& item : j) {
        if (item.is_array() && item.size() == 2 && item[0].is_string() && item[1].is_number_unsigned()) {
            out.push_back({item[0].get<std::string>(), item[1].get<std::size_t>()});
        } else if (item.is_object() && item.contains("vertex") && item.contains("level")) {
            out.push_back({item["vertex"].get<std::string>(), item["level"].get<std::size_t>()});
        } else {
            throw DomainError("vertex level entries are [\"v\", n] or {\"vertex\": \"v\", \"level\": n}");
        }
    }
    return out;
}

inline Json vertex_levels_to_json(const std::vector<VertexLevel>& levels)
{
    Json out = Json::array();
    for (const auto& vl : levels) out.push_back({vl.vertex, vl.level});
    return out;
}

inline Json check_to_json(const CheckResult& c)
{
    return {{"check", c.check}, {"constant", format_rational(c.constant)}, {"witness", c.witness}, {"pass", c.pass}};
}

inline Json checks_to_json(const std::vector<CheckResult>& checks)
{
    Json out = Json::array();
    for (const auto& c : checks) out.push_back(check_to_json(c));
    return out;
}

inline Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DomainError("invalid JSON in '" + path + "': " + e.what());
    }
}

}  // namespace qctree
