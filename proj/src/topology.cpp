#include "grainstore/topology.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "grainstore/error.hpp"
#include "grainstore/storage.hpp"

namespace grainstore {

NodeRole parse_node_role(std::string_view text) {
    if (text == "source") return NodeRole::Source;
    if (text == "warehouse") return NodeRole::Warehouse;
    if (text == "mart") return NodeRole::Mart;
    throw Error(Errc::FormatError, "unknown node role '" + std::string(text) + "'");
}

const Topology::Node* Topology::find(const std::string& name) const {
    for (const Node& n : nodes)
        if (n.name == name) return &n;
    return nullptr;
}

void Topology::validate() const {
    std::set<std::string> names;
    for (const Node& n : nodes) {
        if (n.name.empty()) throw Error(Errc::FormatError, "node with empty name");
        if (!names.insert(n.name).second)
            throw Error(Errc::FormatError, "duplicate node '" + n.name + "'");
    }
    for (const Edge& e : edges) {
        if (!find(e.from)) throw Error(Errc::FormatError, "edge from unknown node '" + e.from + "'");
        if (!find(e.to)) throw Error(Errc::FormatError, "edge to unknown node '" + e.to + "'");
    }
    for (const Node& n : nodes) {
        if (n.role != NodeRole::Mart) continue;
        bool fed = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
            return e.to == n.name && find(e.from)->role == NodeRole::Warehouse;
        });
        if (!fed)
            throw Error(Errc::FormatError,
                        "mart '" + n.name + "' has no incoming edge from a warehouse");
    }
    execution_order(); // raises CyclicTopology
}

std::vector<std::size_t> Topology::execution_order() const {
    // Kahn over nodes, declaration order as the tie-break; edges then sort
    // by their source node's position, stable on declaration order.
    std::map<std::string, std::size_t> indegree;
    for (const Node& n : nodes) indegree[n.name] = 0;
    for (const Edge& e : edges) ++indegree[e.to];

    std::vector<std::string> topo;
    std::set<std::string> placed;
    while (topo.size() < nodes.size()) {
        bool progressed = false;
        for (const Node& n : nodes) {
            if (placed.contains(n.name) || indegree[n.name] != 0) continue;
            topo.push_back(n.name);
            placed.insert(n.name);
            for (const Edge& e : edges)
                if (e.from == n.name) --indegree[e.to];
            progressed = true;
        }
        if (!progressed) throw Error(Errc::CyclicTopology, "sync edges form a cycle");
    }
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < topo.size(); ++i) position[topo[i]] = i;

    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return position[edges[a].from] < position[edges[b].from];
    });
    return order;
}

Topology load_topology(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::FormatError, path.string() + ": " + e.what());
    }
    Topology topo;
    try {
        for (const auto& n : j.at("nodes"))
            topo.nodes.push_back({n.at("name").get<std::string>(),
                                  parse_node_role(n.at("role").get<std::string>()),
                                  std::filesystem::path(n.at("path").get<std::string>())});
        for (const auto& e : j.value("edges", nlohmann::json::array()))
            topo.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                                  parse_technique(e.at("technique").get<std::string>())});
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::FormatError, path.string() + ": " + e.what());
    }
    topo.validate();
    return topo;
}

std::vector<SyncReport> run_pipeline(const Topology& topology,
                                     std::map<std::string, Table>& tables) {
    topology.validate();
    std::vector<SyncReport> reports;
    for (std::size_t i : topology.execution_order()) {
        const Topology::Edge& e = topology.edges[i];
        auto src = tables.find(e.from);
        auto dst = tables.find(e.to);
        if (src == tables.end()) throw Error(Errc::IoError, "missing table '" + e.from + "'");
        if (dst == tables.end()) throw Error(Errc::IoError, "missing table '" + e.to + "'");
        reports.push_back(sync(src->second, dst->second, e.technique));
    }
    return reports;
}

std::vector<SyncReport> run_pipeline(const Topology& topology) {
    topology.validate();
    std::map<std::string, Table> tables;
    for (const Topology::Node& n : topology.nodes) tables[n.name] = load_table(n.path);
    std::set<std::string> touched;
    for (const Topology::Edge& e : topology.edges) touched.insert(e.to);
    auto reports = run_pipeline(topology, tables);
    for (const Topology::Node& n : topology.nodes)
        if (touched.contains(n.name)) save_table(tables[n.name], n.path);
    return reports;
}

} // namespace grainstore
