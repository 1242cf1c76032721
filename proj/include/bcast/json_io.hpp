#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "bcast/graph.hpp"
#include "json.hpp"

namespace bcast {

// Interchange format. Key order and edge order are fixed so that
// serialize(parse(serialize(g))) is byte-identical.
//
//   {"n": int,
//    "edges": [[u,v],...],             lexicographically sorted
//    "roles": {"s": id, "t": id, "s_prime": id?, "t_prime": id?},
//    "dist_label": {"id": int, ...}?,
//    "rotation": {"id": [ids...], ...}?}

inline nlohmann::ordered_json graph_to_json(const LabeledGraph& lg) {
    nlohmann::ordered_json j;
    j["n"] = lg.graph.vertex_count();
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : lg.graph.edges()) edges.push_back({e.u, e.v});
    j["edges"] = std::move(edges);
    nlohmann::ordered_json roles = nlohmann::ordered_json::object();
    for (Role r : {Role::s, Role::t, Role::s_prime, Role::t_prime}) {
        auto v = lg.role_vertex(r);
        if (v) roles[role_name(r)] = *v;
    }
    j["roles"] = std::move(roles);
    if (!lg.dist_label.empty()) {
        nlohmann::ordered_json lab = nlohmann::ordered_json::object();
        for (const auto& [v, d] : lg.dist_label) lab[std::to_string(v)] = d;
        j["dist_label"] = std::move(lab);
    }
    if (lg.rotation && !lg.rotation->empty()) {
        nlohmann::ordered_json rot = nlohmann::ordered_json::object();
        for (size_t v = 0; v < lg.rotation->order.size(); ++v)
            rot[std::to_string(v)] = lg.rotation->order[v];
        j["rotation"] = std::move(rot);
    }
    return j;
}

inline std::string graph_to_json_text(const LabeledGraph& lg) {
    return graph_to_json(lg).dump(2) + "\n";
}

inline LabeledGraph graph_from_json(const nlohmann::json& j) {
    try {
        LabeledGraph lg;
        int n = j.at("n").get<int>();
        std::vector<std::pair<int, int>> pairs;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw contract_error("graph json: bad edge entry");
            pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        lg.graph = make_graph(n, pairs);
        if (j.contains("roles")) {
            for (const auto& [key, val] : j.at("roles").items()) {
                Role r;
                if (key == "s") r = Role::s;
                else if (key == "t") r = Role::t;
                else if (key == "s_prime") r = Role::s_prime;
                else if (key == "t_prime") r = Role::t_prime;
                else throw contract_error("graph json: unknown role '" + key + "'");
                int v = val.get<int>();
                if (v < 0 || v >= n) throw contract_error("graph json: role vertex out of range");
                lg.roles[r] = v;
            }
        }
        if (j.contains("dist_label")) {
            for (const auto& [key, val] : j.at("dist_label").items()) {
                int v = std::stoi(key);
                if (v < 0 || v >= n) throw contract_error("graph json: dist_label vertex out of range");
                lg.dist_label[v] = val.get<int>();
            }
        }
        if (j.contains("rotation")) {
            RotationSystem rot;
            rot.order.assign(n, {});
            for (const auto& [key, val] : j.at("rotation").items()) {
                int v = std::stoi(key);
                if (v < 0 || v >= n) throw contract_error("graph json: rotation vertex out of range");
                rot.order[v] = val.get<std::vector<int>>();
            }
            lg.rotation = std::move(rot);
        }
        return lg;
    } catch (const nlohmann::json::exception& e) {
        throw contract_error(std::string("graph json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw contract_error(std::string("graph json: ") + e.what());
    }
}

inline LabeledGraph graph_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw contract_error(std::string("graph json: ") + e.what());
    }
    return graph_from_json(j);
}

inline LabeledGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw contract_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return graph_from_json_text(ss.str());
}

/// DOT export. Terminals get shape=doublecircle; shortcut edges are colored.
inline std::string graph_to_dot(const LabeledGraph& lg, const std::string& name = "G") {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    std::map<int, Role> by_vertex;
    for (const auto& [r, v] : lg.roles) by_vertex[v] = r;
    for (int v = 0; v < lg.graph.vertex_count(); ++v) {
        auto it = by_vertex.find(v);
        if (it != by_vertex.end()) {
            os << "  " << v << " [shape=doublecircle, xlabel=\"" << role_name(it->second)
               << "\"];\n";
        } else {
            os << "  " << v << ";\n";
        }
    }
    std::vector<Edge> shortcuts = lg.shortcut_edges;
    std::sort(shortcuts.begin(), shortcuts.end());
    for (const Edge& e : lg.graph.edges()) {
        bool sc = std::binary_search(shortcuts.begin(), shortcuts.end(), e);
        os << "  " << e.u << " -- " << e.v;
        if (sc) os << " [color=red]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace bcast
