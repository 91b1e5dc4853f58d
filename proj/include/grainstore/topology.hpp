#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "grainstore/sync.hpp"

namespace grainstore {

enum class NodeRole { Source, Warehouse, Mart };
NodeRole parse_node_role(std::string_view text);

/// A chained sync pipeline: named tables with roles and the sync edges
/// between them. Edges must form a DAG and every mart needs at least one
/// incoming edge from a warehouse.
struct Topology {
    struct Node {
        std::string name;
        NodeRole role = NodeRole::Source;
        std::filesystem::path path; // table CSV backing this node
    };
    struct Edge {
        std::string from;
        std::string to;
        SyncTechnique technique;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;

    const Node* find(const std::string& name) const;
    void validate() const; // CyclicTopology / FormatError

    /// Edge indexes in execution order: an edge into a node always runs
    /// before any edge out of it; declaration order breaks ties.
    std::vector<std::size_t> execution_order() const;
};

/// {"nodes": [{"name","role","path"}...], "edges": [{"from","to","technique"}...]}
Topology load_topology(const std::filesystem::path& path);

/// In-memory run over tables keyed by node name; reports in execution order.
std::vector<SyncReport> run_pipeline(const Topology& topology,
                                     std::map<std::string, Table>& tables);

/// File-backed run: loads every node's table, syncs, saves every table that
/// received records.
std::vector<SyncReport> run_pipeline(const Topology& topology);

} // namespace grainstore
