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

#include "fermenc/search_bruteforce.hpp"

#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "oracles/enumerate_search.hpp"
#include "oracles/naive_distance.hpp"
#include "support.hpp"

namespace fermenc {
namespace {

SearchConfig toy(EdgeSet e, int q, int v, int h, EdgeCapTarget target) {
    SearchConfig c;
    c.layout = UnitCellLayout(Scheme::TwoGrids, e, q);
    c.max_vertex_weight = v;
    c.max_edge_or_hopping_weight = h;
    c.cap_target = target;
    return c;
}

std::vector<PauliWord> images(const EncodingCandidate &e) {
    std::vector<PauliWord> out;
    for (FermionGeneratorId g : generator_order(e.layout)) out.push_back(e.image(g));
    return out;
}

TEST(BruteForce, ChainFindsJordanWigner) {
    std::vector<EncodingCandidate> got;
    SearchReport r = brute_force_search(toy(EdgeSet::Chain, 1, 2, 2, EdgeCapTarget::Hopping),
                                        [&](const EncodingCandidate &e) { got.push_back(e); });
    ASSERT_GE(got.size(), 1u);
    EXPECT_FALSE(r.truncated);
    EncodingCandidate jw = testing_support::load_fixture("jwt_chain.json");
    bool found = false;
    for (const auto &e : got) {
        EXPECT_TRUE(validate(e).empty());
        found = found || e.same_images(jw);
    }
    EXPECT_TRUE(found);
}

// One qubit per site cannot host a square lattice inside the window: with
// no room for stabilizers every plaquette loop would have to map to the
// identity, which needs strings longer than the window.
TEST(BruteForce, NoSingleQubitSquareEncoding) {
    SearchReport r = brute_force_search(toy(EdgeSet::NNSquare, 1, 2, 2, EdgeCapTarget::Hopping));
    EXPECT_EQ(r.completions, 0u);
    EXPECT_FALSE(r.truncated);
    EXPECT_EQ(oracle::enumerate_admissible(UnitCellLayout(Scheme::TwoGrids, EdgeSet::NNSquare, 1), {1, 2, false}).size(),
              0u);
}

struct Case {
    EdgeSet edges;
    int v;
    int h;
    EdgeCapTarget target;
};

class Completeness : public ::testing::TestWithParam<Case> {};

TEST_P(Completeness, CountsMatchEnumeration) {
    Case c = GetParam();
    SearchConfig cfg = toy(c.edges, 1, c.v, c.h, c.target);
    std::set<std::vector<PauliWord>> emitted;
    SearchReport r = brute_force_search(cfg, [&](const EncodingCandidate &e) { emitted.insert(images(e)); });
    auto all = oracle::enumerate_admissible(cfg.layout, {c.v, c.h, c.target == EdgeCapTarget::Hopping});
    std::set<std::vector<PauliWord>> expected(all.begin(), all.end());
    EXPECT_EQ(expected.size(), all.size());
    EXPECT_EQ(r.completions, all.size());
    for (const auto &e : emitted) EXPECT_EQ(expected.count(e), 1u);
}

INSTANTIATE_TEST_SUITE_P(Chain, Completeness,
                         ::testing::Values(Case{EdgeSet::Chain, 1, 2, EdgeCapTarget::Edge},
                                           Case{EdgeSet::Chain, 2, 2, EdgeCapTarget::Edge},
                                           Case{EdgeSet::Chain, 1, 3, EdgeCapTarget::Edge},
                                           Case{EdgeSet::Chain, 1, 2, EdgeCapTarget::Hopping},
                                           Case{EdgeSet::Chain, 2, 3, EdgeCapTarget::Hopping},
                                           Case{EdgeSet::NNSquare, 1, 2, EdgeCapTarget::Edge}));

TEST(BruteForce, StochasticRunIsSubsetOfCompletions) {
    SearchConfig cfg = toy(EdgeSet::Chain, 1, 2, 3, EdgeCapTarget::Hopping);
    auto all = oracle::enumerate_admissible(cfg.layout, {2, 3, true});
    std::set<std::vector<PauliWord>> reachable(all.begin(), all.end());
    cfg.acceptance_probability = 0.1;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        cfg.rng_seed = seed;
        SearchReport r = brute_force_search(cfg, [&](const EncodingCandidate &e) {
            EXPECT_TRUE(validate(e).empty());
            EXPECT_EQ(reachable.count(images(e)), 1u);
        });
        EXPECT_LE(r.completions, all.size());
    }
}

TEST(BruteForce, DistanceFilterHolds) {
    auto got = testing_support::search_fixture("search_d2.conf");
    ASSERT_FALSE(got.empty());
    for (const auto &e : got) {
        DistanceResult d = oracle::naive_min_distance(e, 3);
        EXPECT_GE(d.value, 2);
        EXPECT_EQ(d, e.metrics->distance);
    }
}

// The document fixtures are outputs of the fixture searches.
TEST(BruteForce, FixturesAreSearchOutputs) {
    for (auto [conf, doc] : {std::pair{"search_chain.conf", "jwt_chain.json"}, std::pair{"search_mixed.conf", "mixed_chain.json"},
                             std::pair{"search_d2.conf", "d2_two_grids.json"}, std::pair{"search_d2.conf", "d2_compact.json"},
                             std::pair{"search_triangular.conf", "triangular_q3.json"}}) {
        ConfigFile c = ConfigFile::load(testing_support::fixture_path(conf));
        SearchConfig cfg = read_search_config(c);
        cfg.threads = 4;
        EncodingCandidate want = testing_support::load_fixture(doc);
        bool found = false;
        brute_force_search(cfg, [&](const EncodingCandidate &e) { found = found || e.same_images(want); });
        EXPECT_TRUE(found) << conf << " " << doc;
    }
}

TEST(BruteForce, NodeBudgetTruncates) {
    SearchConfig cfg = toy(EdgeSet::Chain, 1, 2, 3, EdgeCapTarget::Hopping);
    cfg.node_budget = 1;
    SearchReport r = brute_force_search(cfg);
    EXPECT_TRUE(r.truncated);
}

TEST(BruteForce, ThreadsGiveSameFront) {
    ConfigFile c = ConfigFile::load(testing_support::fixture_path("search_d2.conf"));
    SearchConfig cfg = read_search_config(c);
    SearchReport one = brute_force_search(cfg);
    cfg.threads = 4;
    SearchReport four = brute_force_search(cfg);
    ASSERT_EQ(one.front.size(), four.front.size());
    for (size_t i = 0; i < one.front.size(); ++i) {
        EXPECT_TRUE(one.front[i].same_images(four.front[i]));
        EXPECT_EQ(one.front[i].metrics, four.front[i].metrics);
    }
    EXPECT_EQ(one.completions, four.completions);
}

TEST(BruteForce, ConfigChecks) {
    SearchConfig cfg = toy(EdgeSet::Chain, 1, 2, 3, EdgeCapTarget::Hopping);
    cfg.acceptance_probability = 1.5;
    EXPECT_THROW(cfg.check(), UsageError);
    cfg.acceptance_probability = 0;
    EXPECT_THROW(cfg.check(), UsageError);
    cfg.acceptance_probability = 1;
    cfg.max_vertex_weight = 10;
    EXPECT_THROW(cfg.check(), UsageError);
}

TEST(StochasticGate, CertainAcceptanceDrawsNothing) {
    std::mt19937_64 a(1), b(1);
    for (int i = 0; i < 100; ++i) EXPECT_TRUE(stochastic_gate(1.0, a));
    EXPECT_EQ(a(), b());
}

TEST(StochasticGate, SeededSequenceRepeats) {
    std::mt19937_64 a = stream_rng(42, 3), b = stream_rng(42, 3), c = stream_rng(42, 4);
    int differ = 0;
    for (int i = 0; i < 200; ++i) {
        bool x = stochastic_gate(0.3, a);
        EXPECT_EQ(x, stochastic_gate(0.3, b));
        differ += x != stochastic_gate(0.3, c);
    }
    EXPECT_GT(differ, 0);
}

TEST(StochasticGate, BinomialRate) {
    std::mt19937_64 rng = stream_rng(2026, 0);
    const int n = 10000;
    const double p = 0.05;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += stochastic_gate(p, rng);
    double sigma = std::sqrt(n * p * (1 - p));
    EXPECT_LE(std::abs(hits - n * p), 3 * sigma);
}

TEST(Canonical, LetterAndActivationRules) {
    auto word = [&](std::initializer_list<std::tuple<int, int, char>> letters) {
        PauliWord w = PauliWord::identity(18);
        for (auto [cell, local, c] : letters) w.set(cell * 2 + local, c);
        return w;
    };
    CanonState st;
    EXPECT_FALSE(canon_advance(st, word({{4, 1, 'Z'}}), 2));  // local 1 before local 0
    EXPECT_FALSE(canon_advance(st, word({{4, 0, 'X'}}), 2));  // first letter must be Z
    EXPECT_TRUE(canon_advance(st, word({{4, 0, 'Z'}}), 2));
    EXPECT_EQ(st.active, 1);
    CanonState keep = st;
    EXPECT_FALSE(canon_advance(st, word({{3, 0, 'Y'}}), 2));  // Y before any X
    EXPECT_EQ(st.active, keep.active);
    EXPECT_TRUE(canon_advance(st, word({{3, 0, 'X'}, {4, 1, 'Z'}}), 2));
    EXPECT_TRUE(canon_advance(st, word({{3, 0, 'Y'}}), 2));
    EXPECT_EQ(st.active, 2);
    EXPECT_TRUE(oracle::canonical({word({{4, 0, 'Z'}}), word({{3, 0, 'X'}, {4, 1, 'Z'}}), word({{3, 0, 'Y'}})}, 2));
    EXPECT_FALSE(oracle::canonical({word({{4, 0, 'Z'}}), word({{3, 0, 'Y'}})}, 2));
}

}  // namespace
}  // namespace fermenc
