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

#include "fermenc/connectivity.hpp"

#include <random>

#include "fermenc/document.hpp"
#include "gtest/gtest.h"
#include "oracles/graphs.hpp"
#include "support.hpp"

namespace fermenc {
namespace {

ConnectivityGraph make(int n, const oracle::EdgeList &e) { return graph_from_edges(n, e); }

TEST(Thickness, KuratowskiGraphsNeedTwoLayers) {
    for (auto [n, g] : {std::pair{5, oracle::complete_graph(5)}, std::pair{6, oracle::complete_bipartite(3, 3)}}) {
        ConnectivityGraph cg = make(n, g);
        EXPECT_FALSE(is_planar(n, g));
        EXPECT_EQ(thickness_upper_bound(cg), 2);
        EXPECT_LE(euler_thickness_lower_bound(cg), 2);
    }
}

TEST(Thickness, PlanarFamilies) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        int n = 3 + i;
        for (const auto &e : {oracle::random_tree(n, rng), oracle::random_planar(n, 0.7, rng)}) {
            ConnectivityGraph g = make(n, e);
            EXPECT_EQ(thickness_upper_bound(g), 1);
            EXPECT_FALSE(oracle::exceeds_planar_edge_bound(n, g.edges.size(), false));
        }
    }
    EXPECT_EQ(thickness_upper_bound(make(20, oracle::grid_graph(5, 4))), 1);
    EXPECT_EQ(thickness_upper_bound(make(4, oracle::complete_graph(4))), 1);
}

TEST(Thickness, EmptyAndEdgeless) {
    EXPECT_EQ(thickness_upper_bound(ConnectivityGraph{}), 0);
    EXPECT_EQ(euler_thickness_lower_bound(ConnectivityGraph{}), 0);
    EXPECT_EQ(thickness_upper_bound(make(3, {})), 1);
}

TEST(Thickness, DenseGraphsRespectEulerBound) {
    for (int n = 5; n <= 12; ++n) {
        ConnectivityGraph g = make(n, oracle::complete_graph(n));
        int ub = thickness_upper_bound(g), lb = euler_thickness_lower_bound(g);
        EXPECT_LE(lb, ub) << n;
        EXPECT_GE(ub, 2);
        EXPECT_EQ(lb, (n * (n - 1) / 2 + 3 * n - 7) / (3 * n - 6));
    }
}

TEST(Graph, SimpleGraphInvariants) {
    ConnectivityGraph g = make(3, {{0, 1}, {1, 0}, {1, 2}, {2, 2}, {0, 2}});
    EXPECT_EQ(g.edges.size(), 3u);
    EXPECT_EQ(max_degree(g), 2);
    ConnectivityGraph star = make(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    EXPECT_EQ(max_degree(star), 4);
}

TEST(Graph, JordanWignerChainPatch) {
    EncodingCandidate jw = testing_support::load_fixture("jwt_chain.json");
    ConnectivityGraph g = build_graph(jw, HamiltonianSpec{}, 3);
    EXPECT_EQ(g.ancilla_count(), 0);
    EXPECT_EQ(g.data_count(), 9);
    // Only the hopping strings join qubits: neighbours along each row.
    std::set<std::pair<std::string, std::string>> got, want;
    for (const auto &e : g.edges) got.insert({g.nodes[e.u].name, g.nodes[e.v].name});
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 2; ++x) {
            want.insert({"d_" + std::to_string(x) + "_" + std::to_string(y) + "_0",
                         "d_" + std::to_string(x + 1) + "_" + std::to_string(y) + "_0"});
        }
    }
    EXPECT_EQ(got, want);
    EXPECT_EQ(max_degree(g), 2);
    EXPECT_EQ(thickness_upper_bound(g), 1);
}

TEST(Graph, SquareLatticeAncillas) {
    EncodingCandidate d2 = testing_support::load_fixture("d2_two_grids.json");
    ASSERT_EQ(d2.stabilizers.size(), 1u);
    ConnectivityGraph g = build_graph(d2, HamiltonianSpec{}, 3);
    EXPECT_EQ(g.ancilla_count(), 9);
    EXPECT_EQ(g.data_count(), 18);
    int centre = -1;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (g.nodes[i].name == "a_1_1_0") centre = static_cast<int>(i);
    }
    ASSERT_GE(centre, 0);
    int deg = 0;
    for (const auto &e : g.edges) {
        if (e.u == centre || e.v == centre) {
            ++deg;
            EXPECT_EQ(e.origin, EdgeOrigin::StabilizerReadout);
        }
    }
    EXPECT_EQ(deg, weight(d2.stabilizers[0]));
    EXPECT_LE(euler_thickness_lower_bound(g), thickness_upper_bound(g));
    EXPECT_GE(max_degree(g), deg);
}

TEST(Graph, DotOutput) {
    ConnectivityGraph g;
    int a = g.add_node("d_0_0_0", false), b = g.add_node("a_0_0_0", true);
    g.add_edge(a, b, EdgeOrigin::StabilizerReadout);
    EXPECT_EQ(to_dot(g),
              "graph connectivity {\n  d_0_0_0 [shape=circle];\n  a_0_0_0 [shape=box];\n"
              "  d_0_0_0 -- a_0_0_0 [style=dashed];\n}\n");
}

TEST(Graph, BadPatchRejected) {
    EncodingCandidate jw = testing_support::load_fixture("jwt_chain.json");
    EXPECT_THROW(build_graph(jw, HamiltonianSpec{}, 0), UsageError);
}

}  // namespace
}  // namespace fermenc
