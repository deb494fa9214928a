// Copyright 2026 The fermenc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "fermenc/encoding.hpp"
#include "fermenc/fermion.hpp"
#include "fermenc/lattice.hpp"

namespace fermenc {

enum class EdgeOrigin { StabilizerReadout, LogicalTerm };

inline std::string_view to_string(EdgeOrigin o) {
    return o == EdgeOrigin::StabilizerReadout ? "stabilizer-readout" : "logical-term";
}

/// Undirected simple graph with labelled nodes.
struct ConnectivityGraph {
    struct Node {
        std::string name;
        bool ancilla = false;
    };
    struct Edge {
        int u = 0;
        int v = 0;
        EdgeOrigin origin = EdgeOrigin::LogicalTerm;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;  // u < v, sorted, no duplicates

    int add_node(std::string name, bool ancilla) {
        nodes.push_back({std::move(name), ancilla});
        return static_cast<int>(nodes.size()) - 1;
    }

    /// Keeps the first origin recorded for an edge. Returns false for loops
    /// and duplicates.
    bool add_edge(int a, int b, EdgeOrigin o) {
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        Edge e{a, b, o};
        auto it = std::lower_bound(edges.begin(), edges.end(), e,
                                   [](const Edge &x, const Edge &y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
        if (it != edges.end() && it->u == a && it->v == b) return false;
        edges.insert(it, e);
        return true;
    }

    int data_count() const {
        return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const Node &n) { return !n.ancilla; }));
    }
    int ancilla_count() const { return static_cast<int>(nodes.size()) - data_count(); }
};

/// Simple graph from an explicit edge list (used for generic graph checks).
inline ConnectivityGraph graph_from_edges(int n, const std::vector<std::pair<int, int>> &edges) {
    ConnectivityGraph g;
    for (int i = 0; i < n; ++i) g.add_node("n" + std::to_string(i), false);
    for (auto [a, b] : edges) g.add_edge(a, b, EdgeOrigin::LogicalTerm);
    return g;
}

namespace detail {

// Patch slot order mirrors the window: rows bottom to top, odd rows reversed.
inline int patch_cell_index(int x, int y, int side) { return y * side + ((y & 1) ? (side - 1 - x) : x); }

}  // namespace detail

/// Qubit graph of a side x side patch of cells: data qubits, one ancilla per
/// stabilizer generator per cell wired to its support, and for every
/// Hamiltonian term placed at every cell a path through its support in slot
/// order. Supports are cut to the patch. For spin-copy layouts the graph
/// covers one spin grid.
inline ConnectivityGraph build_graph(const EncodingCandidate &enc, const HamiltonianSpec &spec, int side = 3) {
    if (side < 1) throw UsageError("patch side must be positive");
    const UnitCellLayout &l = enc.layout;
    int q = l.qubits_per_cell();
    ConnectivityGraph g;
    std::vector<int> data(static_cast<size_t>(side * side * q));
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            for (int k = 0; k < q; ++k) {
                data[static_cast<size_t>((y * side + x) * q + k)] =
                    g.add_node("d_" + std::to_string(x) + "_" + std::to_string(y) + "_" + std::to_string(k), false);
            }
        }
    }
    auto node_at = [&](CellOffset c, int local) -> std::optional<int> {
        if (c.dx < 0 || c.dy < 0 || c.dx >= side || c.dy >= side) return std::nullopt;
        return data[static_cast<size_t>((c.dy * side + c.dx) * q + local)];
    };
    auto patch_slot = [&](CellOffset c, int local) { return detail::patch_cell_index(c.dx, c.dy, side) * q + local; };

    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            for (size_t s = 0; s < enc.stabilizers.size(); ++s) {
                int a = g.add_node("a_" + std::to_string(x) + "_" + std::to_string(y) + "_" + std::to_string(s), true);
                LatticeWord w = LatticeWord::from_window(enc.stabilizers[s], l);
                for (auto &[c, local] : w.support()) {
                    if (auto d = node_at(c + CellOffset{x, y}, local)) g.add_edge(a, *d, EdgeOrigin::StabilizerReadout);
                }
            }
        }
    }

    std::vector<LatticeWord> terms;
    for (const TermDescriptor &t : enumerate_hamiltonian_terms(spec, l)) {
        if (t.kind == TermKind::OnSite) {
            terms.push_back(onsite_pauli_term(enc, t.mode).word);
            continue;
        }
        auto h = hopping_pauli_terms(enc, t.mode, t.direction);
        if (!h) continue;
        terms.push_back(t.endpoint == 0 ? h->first : h->second);
    }
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            for (const LatticeWord &w : terms) {
                std::vector<std::pair<int, int>> pts;
                for (auto &[c, local] : w.support()) {
                    CellOffset pc = c + CellOffset{x, y};
                    if (auto d = node_at(pc, local)) pts.push_back({patch_slot(pc, local), *d});
                }
                std::sort(pts.begin(), pts.end());
                for (size_t i = 0; i + 1 < pts.size(); ++i) {
                    g.add_edge(pts[i].second, pts[i + 1].second, EdgeOrigin::LogicalTerm);
                }
            }
        }
    }
    return g;
}

inline int max_degree(const ConnectivityGraph &g) {
    std::vector<int> deg(g.nodes.size(), 0);
    for (const auto &e : g.edges) {
        ++deg[static_cast<size_t>(e.u)];
        ++deg[static_cast<size_t>(e.v)];
    }
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

inline bool is_planar(int n_nodes, const std::vector<std::pair<int, int>> &edges) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    Graph bg(static_cast<size_t>(n_nodes));
    for (auto [a, b] : edges) boost::add_edge(static_cast<size_t>(a), static_cast<size_t>(b), bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

/// Number of layers of a greedy decomposition into maximal planar
/// subgraphs, edges tried in (min endpoint, max endpoint) order.
inline int thickness_upper_bound(const ConnectivityGraph &g) {
    std::vector<std::pair<int, int>> rest;
    for (const auto &e : g.edges) rest.push_back({e.u, e.v});
    std::sort(rest.begin(), rest.end());
    int n = static_cast<int>(g.nodes.size());
    int layers = 0;
    if (is_planar(n, rest)) return rest.empty() ? (n > 0 ? 1 : 0) : 1;
    while (!rest.empty()) {
        ++layers;
        std::vector<std::pair<int, int>> layer, next;
        for (const auto &e : rest) {
            layer.push_back(e);
            if (!is_planar(n, layer)) {
                layer.pop_back();
                next.push_back(e);
            }
        }
        rest = std::move(next);
    }
    return layers;
}

/// ceil(|E| / (3|V| - 6)) for |V| >= 3; 1 for smaller non-empty graphs.
inline int euler_thickness_lower_bound(const ConnectivityGraph &g) {
    int v = static_cast<int>(g.nodes.size());
    int e = static_cast<int>(g.edges.size());
    if (e == 0) return v > 0 ? 1 : 0;
    if (v < 3) return 1;
    int cap = 3 * v - 6;
    return (e + cap - 1) / cap;
}

inline std::string to_dot(const ConnectivityGraph &g) {
    std::ostringstream os;
    os << "graph connectivity {\n";
    for (const auto &n : g.nodes) {
        os << "  " << n.name << (n.ancilla ? " [shape=box];\n" : " [shape=circle];\n");
    }
    for (const auto &e : g.edges) {
        os << "  " << g.nodes[static_cast<size_t>(e.u)].name << " -- " << g.nodes[static_cast<size_t>(e.v)].name
           << (e.origin == EdgeOrigin::StabilizerReadout ? " [style=dashed];\n" : ";\n");
    }
    os << "}\n";
    return os.str();
}

}  // namespace fermenc
