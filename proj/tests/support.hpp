#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "ila/graph.hpp"
#include "ila/multiport.hpp"

namespace ila::testsupport {

// Random directed multigraph; parallel edges and self-loops allowed.
inline OrientedGraph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges) {
    const int nv = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_vertices));
    const int ne = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_edges));
    OrientedGraph g;
    for (int k = 0; k < nv; ++k) g.add_vertex("v" + std::to_string(k));
    for (int k = 0; k < ne; ++k) {
        const int a = static_cast<int>(rng() % static_cast<unsigned>(nv));
        const int b = static_cast<int>(rng() % static_cast<unsigned>(nv));
        g.add_edge(Label("e" + std::to_string(k + 1)), "v" + std::to_string(a),
                   "v" + std::to_string(b));
    }
    return g;
}

// Connected chain of positive resistors with series sources, plus random
// chords and port edges.  Regular for any port placement.
inline Multiport random_regular_multiport(std::uint64_t seed, int extra_edges, int ports) {
    std::mt19937_64 rng(seed);
    const int nv = 4 + extra_edges / 2;
    OrientedGraph g;
    for (int k = 0; k < nv; ++k) g.add_vertex("v" + std::to_string(k));

    LabelList internal;
    int edge_id = 0;
    const auto vertex = [&] { return static_cast<int>(rng() % static_cast<unsigned>(nv)); };
    const auto add_internal = [&](int a, int b) {
        const Label l("e" + std::to_string(edge_id++));
        g.add_edge(l, "v" + std::to_string(a), "v" + std::to_string(b));
        internal.push_back(l);
    };
    for (int k = 0; k + 1 < nv; ++k) add_internal(k, k + 1);
    for (int k = 0; k < extra_edges; ++k) {
        const int a = vertex();
        int b = vertex();
        if (a == b) b = (a + 1) % nv;
        add_internal(a, b);
    }
    LabelList port_labels;
    for (int j = 0; j < ports; ++j) {
        const int a = vertex();
        int b = vertex();
        if (a == b) b = (a + 1) % nv;
        const Label l("p" + std::to_string(j));
        g.add_edge(l, "v" + std::to_string(a), "v" + std::to_string(b));
        port_labels.push_back(l);
    }

    const FieldMode mode = FieldMode::Rational;
    const std::size_t m = internal.size();
    ExactMatrix rows(mode, m, 2 * m + 1);
    for (std::size_t j = 0; j < m; ++j) {
        rows.at(j, j) = Scalar::one(mode);
        rows.at(j, m + j) = -Scalar::integer(mode, 1 + static_cast<long>(rng() % 9));
        rows.at(j, 2 * m) = Scalar::integer(mode, static_cast<long>(rng() % 11) - 5);
    }

    Multiport n;
    n.graph = std::move(g);
    n.ports = std::move(port_labels);
    n.device = DeviceCharacteristic::make(mode, std::move(internal), std::move(rows));
    return n;
}

}  // namespace ila::testsupport
