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

#include "fermenc/fermion.hpp"

#include "gtest/gtest.h"
#include "oracles/dense.hpp"

namespace fermenc {
namespace {

TEST(Majorana, SingleOperators) {
    MajoranaWord g1(3), g2(3);
    g1.flip_gamma(0);
    g2.flip_gamma(1);
    EXPECT_EQ(majorana_commute_parity(g1, g2), 1);
    EXPECT_EQ(majorana_commute_parity(g1, g1), 0);
}

TEST(Majorana, DisjointBilinearsCommute) {
    MajoranaWord e(3), v(3);
    e.flip_gamma(0);
    e.flip_gamma(1);
    v.flip_gamma(2);
    v.flip_gamma_bar(2);
    EXPECT_EQ(majorana_commute_parity(e, v), 0);
    MajoranaWord e2(3);
    e2.flip_gamma(1);
    e2.flip_gamma(2);
    EXPECT_EQ(majorana_commute_parity(e, e2), 1);
    EXPECT_THROW(majorana_commute_parity(e, MajoranaWord(2)), UsageError);
}

TEST(Generators, NamesRoundTrip) {
    for (Scheme s : {Scheme::TwoGrids, Scheme::Mixed}) {
        UnitCellLayout l(s, EdgeSet::NNNSquare, 2);
        for (FermionGeneratorId g : generator_order(l)) {
            EXPECT_EQ(parse_generator_name(generator_name(g)), g);
        }
    }
    EXPECT_THROW(parse_generator_name("left0"), ParseError);
    EXPECT_THROW(parse_generator_name("vertex2"), ParseError);
}

TEST(Generators, SearchOrder) {
    UnitCellLayout l(Scheme::Mixed, EdgeSet::Triangular, 2);
    std::vector<std::string> names;
    for (FermionGeneratorId g : generator_order(l)) names.push_back(generator_name(g));
    EXPECT_EQ(names, (std::vector<std::string>{"vertex0", "right0", "up0", "diag_ur0", "vertex1", "right1", "up1",
                                               "diag_ur1"}));
}

TEST(RequiredParity, SquareLatticeRelations) {
    UnitCellLayout l(Scheme::TwoGrids, EdgeSet::NNSquare, 1);
    RequiredParityTable t(l);
    // order: vertex0, right0, up0
    EXPECT_EQ(t(0, 1, {0, 0}), 1);
    EXPECT_EQ(t(0, 0, {1, 0}), 0);
    EXPECT_EQ(t(1, 2, {1, 0}), 1);
    EXPECT_EQ(t(1, 1, {0, 0}), 0);
    EXPECT_EQ(t(1, 1, {1, 0}), 1);
    EXPECT_EQ(t(0, 1, {-1, 0}), 1);
    EXPECT_EQ(t(0, 1, {0, -1}), 0);
}

// Every entry against Majorana label sets on the site lattice.
TEST(RequiredParity, AgreesWithSiteLabels) {
    for (Scheme s : {Scheme::TwoGrids, Scheme::Mixed, Scheme::DoubledHorizontal, Scheme::DoubledOffset}) {
        for (EdgeSet e : {EdgeSet::Chain, EdgeSet::NNSquare, EdgeSet::Triangular, EdgeSet::NNNSquare}) {
            UnitCellLayout l(s, e, 2);
            RequiredParityTable t(l);
            const auto &gens = t.generators();
            for (size_t a = 0; a < gens.size(); ++a) {
                for (size_t b = 0; b < gens.size(); ++b) {
                    for (CellOffset sh : all_window_shifts()) {
                        int want = oracle::majorana_parity(oracle::majoranas(s, gens[a], 0, 0),
                                                           oracle::majoranas(s, gens[b], sh.dx, sh.dy));
                        EXPECT_EQ(t(a, b, sh), want) << to_string(s) << " " << to_string(e) << " "
                                                     << generator_name(gens[a]) << " " << generator_name(gens[b]);
                    }
                }
            }
        }
    }
}

TEST(Sites, LocateInvertsSiteOf) {
    for (Scheme s : {Scheme::TwoGrids, Scheme::Mixed, Scheme::DoubledHorizontal, Scheme::DoubledOffset}) {
        UnitCellLayout l(s, EdgeSet::NNSquare, 2);
        for (int y = -3; y <= 3; ++y) {
            for (int x = -3; x <= 3; ++x) {
                for (int m = 0; m < l.modes_per_cell(); ++m) {
                    Site site = site_of(l, {x, y}, m);
                    EXPECT_EQ(locate(l, site), (ModeRef{{x, y}, m}));
                    auto p = oracle::site_pos(s, x, y, m);
                    EXPECT_EQ(site.x, p.x);
                    EXPECT_EQ(site.y, p.y);
                    EXPECT_EQ(site.spin, p.spin);
                }
            }
        }
    }
}

TEST(HamiltonianTerms, Counts) {
    UnitCellLayout sq(Scheme::TwoGrids, EdgeSet::NNSquare, 2);
    EXPECT_EQ(enumerate_hamiltonian_terms({1, 0, 4}, sq).size(), 5u);
    EXPECT_EQ(enumerate_hamiltonian_terms({1, 0.5, 4}, sq).size(), 9u);
    UnitCellLayout dh(Scheme::DoubledHorizontal, EdgeSet::NNSquare, 2);
    EXPECT_EQ(enumerate_hamiltonian_terms({1, 0, 4}, dh).size(), 10u);
    UnitCellLayout chain(Scheme::TwoGrids, EdgeSet::Chain, 1);
    EXPECT_EQ(enumerate_hamiltonian_terms({1, 0, 4}, chain).size(), 3u);
}

TEST(HamiltonianTerms, Names) {
    UnitCellLayout sq(Scheme::TwoGrids, EdgeSet::NNSquare, 2);
    std::vector<std::string> names;
    for (const auto &t : enumerate_hamiltonian_terms({1, 0, 4}, sq)) names.push_back(term_name(t));
    EXPECT_EQ(names, (std::vector<std::string>{"hop_right0_Vj", "hop_right0_Vk", "hop_up0_Vj", "hop_up0_Vk", "onsite0"}));
}

}  // namespace
}  // namespace fermenc
