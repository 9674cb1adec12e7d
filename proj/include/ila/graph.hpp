#pragma once

#include <string>
#include <vector>

#include "ila/space.hpp"

namespace ila {

// Directed multigraph with labeled edges.  Parallel edges and self-loops are
// allowed; vertex and edge declaration order is preserved (serialization and
// variable ordering depend on it).
struct OrientedGraph {
    struct Edge {
        Label label;
        std::string tail;
        std::string head;
        bool operator==(const Edge&) const = default;
    };

    std::vector<std::string> vertices;
    std::vector<Edge> edges;

    void add_vertex(const std::string& name);
    void add_edge(const Label& label, const std::string& tail, const std::string& head);

    bool has_vertex(const std::string& name) const;
    bool has_edge(const Label& label) const;
    LabelList edge_labels() const;

    bool operator==(const OrientedGraph&) const = default;
};

// Vertex-edge incidence matrix: +1 at the tail, -1 at the head, 0 for a
// self-loop.  Rows follow vertex order, columns follow edge order.
ExactMatrix incidence(const OrientedGraph& g, FieldMode mode);

// KVL space: all potential-difference vectors, i.e. the row space of the
// incidence matrix.  Indexed by the (plain) edge labels.
IndexedVectorSpace voltage_space(const OrientedGraph& g, FieldMode mode);

// KCL space: the nullspace of the incidence matrix, computed independently of
// voltage_space (their duality is a theorem, asserted only in tests).
IndexedVectorSpace current_space(const OrientedGraph& g, FieldMode mode);

// Removes the edges in t (open-circuits them) and drops vertices left
// isolated.
OrientedGraph delete_edges(const OrientedGraph& g, const LabelList& t);

// Contracts the edges in t (short-circuits them).  Fused vertices take the
// lexicographically smallest constituent name; supernodes left isolated are
// dropped.
OrientedGraph contract_edges(const OrientedGraph& g, const LabelList& t);

// Spanning forest, greedy in edge declaration order.
LabelList forest(const OrientedGraph& g);

// Disjoint duplicate universe: every vertex gains a "~" prefix and every edge
// label its tilde flag.  Used when a network is composed with a copy of itself.
OrientedGraph tilde_copy(const OrientedGraph& g);

// Union of graphs on disjoint vertex/edge names.
OrientedGraph disjoint_union(const OrientedGraph& a, const OrientedGraph& b);

}  // namespace ila
