#pragma once

#include <string>

#include <json.hpp>

#include "zxg/diagram.hpp"
#include "zxg/error.hpp"

namespace zxg {

inline nlohmann::json diagram_to_json(const Diagram& d) {
    using nlohmann::json;
    json vs = json::array();
    for (const auto& [v, data] : d.vertices()) {
        json jv{{"id", v}, {"kind", data.kind == VertexKind::boundary ? "boundary" : "z"}};
        if (data.kind == VertexKind::z_spider) {
            jv["phase"] = data.phase.to_string();
            jv["ground"] = data.grounded;
        }
        vs.push_back(std::move(jv));
    }
    json es = json::array();
    for (const auto& [v, data] : d.vertices())
        for (const auto& [w, k] : d.neighbors(v))
            if (v < w) es.push_back(json::array({v, w, k == EdgeKind::hadamard ? "h" : "p"}));
    auto bounds = [](const std::vector<BoundaryRef>& list) {
        json a = json::array();
        for (const auto& b : list) a.push_back({{"id", b.id}, {"classical", b.classical}});
        return a;
    };
    return {{"vertices", vs}, {"edges", es}, {"inputs", bounds(d.inputs())}, {"outputs", bounds(d.outputs())}};
}

inline Diagram diagram_from_json(const nlohmann::json& j) {
    Diagram d;
    try {
        for (const auto& jv : j.at("vertices")) {
            const VertexId id = jv.at("id").get<VertexId>();
            const std::string kind = jv.at("kind").get<std::string>();
            if (kind == "boundary") {
                d.add_boundary_vertex(id);
            } else if (kind == "z") {
                const Phase p = Phase::parse(jv.value("phase", std::string("0")));
                d.add_spider_with_id(id, p, jv.value("ground", false));
            } else {
                throw ParseError(0, "unknown vertex kind '" + kind + "'");
            }
        }
        for (const auto& je : j.at("edges")) {
            const std::string k = je.at(2).get<std::string>();
            if (k != "h" && k != "p") throw ParseError(0, "unknown edge kind '" + k + "'");
            d.add_edge(je.at(0).get<VertexId>(), je.at(1).get<VertexId>(),
                       k == "h" ? EdgeKind::hadamard : EdgeKind::plain);
        }
        for (const auto& b : j.at("inputs")) d.append_input(b.at("id").get<VertexId>(), b.value("classical", false));
        for (const auto& b : j.at("outputs")) d.append_output(b.at("id").get<VertexId>(), b.value("classical", false));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("diagram json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, std::string("diagram json: ") + e.what());
    }
    for (const auto& b : d.inputs())
        if (!d.contains(b.id) || !d.is_boundary(b.id)) throw ParseError(0, "input is not a boundary vertex");
    for (const auto& b : d.outputs())
        if (!d.contains(b.id) || !d.is_boundary(b.id)) throw ParseError(0, "output is not a boundary vertex");
    return d;
}

inline Diagram parse_diagram(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("diagram json: ") + e.what());
    }
    return diagram_from_json(j);
}

inline std::string serialize_diagram(const Diagram& d) { return diagram_to_json(d).dump(1) + "\n"; }

}  // namespace zxg
