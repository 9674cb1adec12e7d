#include "ila/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ila {

void OrientedGraph::add_vertex(const std::string& name) {
    if (has_vertex(name)) throw SpaceError("duplicate vertex: " + name);
    vertices.push_back(name);
}

void OrientedGraph::add_edge(const Label& label, const std::string& tail,
                             const std::string& head) {
    if (has_edge(label)) throw SpaceError("duplicate edge label: " + label.str());
    if (!has_vertex(tail)) throw SpaceError("unknown vertex: " + tail);
    if (!has_vertex(head)) throw SpaceError("unknown vertex: " + head);
    edges.push_back({label, tail, head});
}

bool OrientedGraph::has_vertex(const std::string& name) const {
    return std::find(vertices.begin(), vertices.end(), name) != vertices.end();
}

bool OrientedGraph::has_edge(const Label& label) const {
    return std::any_of(edges.begin(), edges.end(),
                       [&](const Edge& e) { return e.label == label; });
}

LabelList OrientedGraph::edge_labels() const {
    LabelList out;
    out.reserve(edges.size());
    for (const Edge& e : edges) out.push_back(e.label);
    return out;
}

ExactMatrix incidence(const OrientedGraph& g, FieldMode mode) {
    std::map<std::string, std::size_t> vertex_row;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) vertex_row[g.vertices[i]] = i;
    ExactMatrix a(mode, g.vertices.size(), g.edges.size());
    for (std::size_t j = 0; j < g.edges.size(); ++j) {
        const auto& e = g.edges[j];
        if (e.tail == e.head) continue;
        a.at(vertex_row.at(e.tail), j) = Scalar::one(mode);
        a.at(vertex_row.at(e.head), j) = -Scalar::one(mode);
    }
    return a;
}

IndexedVectorSpace voltage_space(const OrientedGraph& g, FieldMode mode) {
    return IndexedVectorSpace::from_rep(mode, g.edge_labels(), incidence(g, mode));
}

IndexedVectorSpace current_space(const OrientedGraph& g, FieldMode mode) {
    return IndexedVectorSpace::from_rep(mode, g.edge_labels(),
                                        nullspace_basis(incidence(g, mode)));
}

namespace {

void require_edge_subset(const OrientedGraph& g, const LabelList& t) {
    for (const Label& l : t)
        if (!g.has_edge(l)) throw SpaceError("not an edge of the graph: " + l.str());
}

OrientedGraph drop_isolated(const OrientedGraph& g) {
    std::set<std::string> touched;
    for (const auto& e : g.edges) {
        touched.insert(e.tail);
        touched.insert(e.head);
    }
    OrientedGraph out;
    for (const auto& v : g.vertices)
        if (touched.count(v)) out.vertices.push_back(v);
    out.edges = g.edges;
    return out;
}

}  // namespace

OrientedGraph delete_edges(const OrientedGraph& g, const LabelList& t) {
    require_edge_subset(g, t);
    const std::set<Label> gone(t.begin(), t.end());
    OrientedGraph out;
    out.vertices = g.vertices;
    for (const auto& e : g.edges)
        if (!gone.count(e.label)) out.edges.push_back(e);
    return drop_isolated(out);
}

OrientedGraph contract_edges(const OrientedGraph& g, const LabelList& t) {
    require_edge_subset(g, t);
    const std::set<Label> gone(t.begin(), t.end());

    // Union-find with lexicographically-smallest representatives.
    std::map<std::string, std::string> parent;
    for (const auto& v : g.vertices) parent[v] = v;
    auto find = [&](std::string v) {
        while (parent[v] != v) v = parent[v];
        return v;
    };
    auto unite = [&](const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
    };
    for (const auto& e : g.edges)
        if (gone.count(e.label)) unite(e.tail, e.head);

    OrientedGraph out;
    std::set<std::string> seen;
    for (const auto& v : g.vertices) {
        const std::string r = find(v);
        if (seen.insert(r).second) out.vertices.push_back(r);
    }
    for (const auto& e : g.edges)
        if (!gone.count(e.label)) out.edges.push_back({e.label, find(e.tail), find(e.head)});
    return drop_isolated(out);
}

LabelList forest(const OrientedGraph& g) {
    std::map<std::string, std::string> parent;
    for (const auto& v : g.vertices) parent[v] = v;
    auto find = [&](std::string v) {
        while (parent[v] != v) v = parent[v];
        return v;
    };
    LabelList out;
    for (const auto& e : g.edges) {
        const std::string ra = find(e.tail), rb = find(e.head);
        if (ra == rb) continue;
        parent[std::max(ra, rb)] = std::min(ra, rb);
        out.push_back(e.label);
    }
    return out;
}

OrientedGraph tilde_copy(const OrientedGraph& g) {
    OrientedGraph out;
    for (const auto& v : g.vertices) out.vertices.push_back("~" + v);
    for (const auto& e : g.edges)
        out.edges.push_back({e.label.with_tilde(true), "~" + e.tail, "~" + e.head});
    return out;
}

OrientedGraph disjoint_union(const OrientedGraph& a, const OrientedGraph& b) {
    OrientedGraph out = a;
    for (const auto& v : b.vertices) out.add_vertex(v);
    for (const auto& e : b.edges) out.add_edge(e.label, e.tail, e.head);
    return out;
}

}  // namespace ila
