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

#include "fermenc/pareto.hpp"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "oracles/pareto_bruteforce.hpp"

namespace fermenc {
namespace {

ParetoKey key(int d, int s, int nn, std::optional<int> nnn, bool bound = false) {
    return {bound ? DistanceResult::LowerBound(d) : DistanceResult::Exact(d), s, Rational::of(nn, 1),
            nnn ? std::optional<Rational>(Rational::of(*nnn, 1)) : std::nullopt};
}

TEST(Pareto, EmptyFrontAccepts) {
    ParetoFront<int> f;
    EXPECT_TRUE(f.update(key(2, 8, 4, 5), 0));
    EXPECT_EQ(f.size(), 1u);
}

TEST(Pareto, TiesAreKept) {
    ParetoFront<int> f;
    f.update(key(2, 8, 4, 5), 0);
    EXPECT_TRUE(f.update(key(2, 8, 4, 5), 1));
    EXPECT_EQ(f.size(), 2u);
}

TEST(Pareto, WorseEverywhereRejected) {
    ParetoFront<int> f;
    f.update(key(3, 6, 3, 4), 0);
    EXPECT_FALSE(f.update(key(2, 8, 4, 5), 1));
    EXPECT_FALSE(f.update(key(3, 6, 3, 5), 2));
    EXPECT_EQ(f.size(), 1u);
}

TEST(Pareto, BetterEvicts) {
    ParetoFront<int> f;
    f.update(key(2, 8, 4, 5), 0);
    f.update(key(1, 4, 4, 5), 1);
    EXPECT_TRUE(f.update(key(2, 4, 4, 5), 2));
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f.entries()[0].payload, 2);
}

TEST(Pareto, DistanceBoundsRankAboveExact) {
    EXPECT_TRUE(dominates(key(2, 8, 4, 5, true), key(2, 8, 4, 5)));
    EXPECT_FALSE(dominates(key(2, 8, 4, 5, true), key(3, 8, 4, 5)));
    EXPECT_TRUE(dominates(key(3, 8, 4, 5), key(2, 8, 4, 5, true)));
}

TEST(Pareto, MissingNnnRanksLast) {
    EXPECT_TRUE(dominates(key(2, 8, 4, 100), key(2, 8, 4, std::nullopt)));
    EXPECT_FALSE(dominates(key(2, 8, 4, std::nullopt), key(2, 8, 4, std::nullopt)));
}

TEST(Pareto, MatchesBruteForceInAnyOrder) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> small(1, 4);
    std::vector<oracle::Objectives> items;
    std::vector<ParetoKey> keys;
    for (int i = 0; i < 600; ++i) {
        oracle::Objectives o;
        o.distance = small(rng);
        o.distance_is_bound = rng() % 4 == 0;
        o.max_stab_weight = small(rng) + 4;
        o.sigma_nn = Rational::of(small(rng) + 8, small(rng));
        if (rng() % 5) o.sigma_nnn = Rational::of(small(rng) + 8, small(rng));
        items.push_back(o);
        keys.push_back({o.distance_is_bound ? DistanceResult::LowerBound(o.distance) : DistanceResult::Exact(o.distance),
                        o.max_stab_weight, o.sigma_nn, o.sigma_nnn});
    }
    std::vector<size_t> expect = oracle::non_dominated(items);
    std::vector<size_t> order(items.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (int round = 0; round < 3; ++round) {
        ParetoFront<size_t> f;
        for (size_t i : order) f.update(keys[i], i);
        std::vector<size_t> got;
        for (const auto &e : f.entries()) got.push_back(e.payload);
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, expect);
        std::shuffle(order.begin(), order.end(), rng);
    }
}

}  // namespace
}  // namespace fermenc
