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

#include "fermenc/config.hpp"

#include <filesystem>

#include "gtest/gtest.h"
#include "support.hpp"

namespace fermenc {
namespace {

std::string message_of(const std::string &text) {
    try {
        ConfigFile c = ConfigFile::parse(text, "t.conf");
        read_search_config(c);
        read_output_paths(c);
        c.finish();
    } catch (const std::invalid_argument &e) {
        return e.what();
    }
    return "";
}

TEST(Config, Defaults) {
    ConfigFile c = ConfigFile::parse("# nothing\n\n");
    SearchConfig cfg = read_search_config(c);
    EXPECT_EQ(cfg.layout.qubits_per_cell(), 1);
    EXPECT_EQ(cfg.layout.edge_set(), EdgeSet::NNSquare);
    EXPECT_EQ(cfg.acceptance_probability, 1.0);
    EXPECT_EQ(cfg.cap_target, EdgeCapTarget::Hopping);
    c.finish();
}

TEST(Config, ReadsEveryKey) {
    ConfigFile c = ConfigFile::parse(
        "scheme = mixed\nedge_set = triangular\nqubits_per_cell = 3\nmax_vertex_weight = 3\n"
        "max_hopping_weight = 4\ncap_target = edge\nhopping_cap_mode = nn+nnn\nmax_stab_weight = 6\n"
        "min_distance_filter = 2\nmin_logical_weight_filter = 1\nacceptance_probability = 0.25\nseed = 9\n"
        "node_budget = 100\ndistance_w_max = 2\nthreads = 2\n");
    SearchConfig cfg = read_search_config(c);
    c.finish();
    EXPECT_EQ(cfg.layout.scheme(), Scheme::Mixed);
    EXPECT_EQ(cfg.layout.qubits_per_cell(), 3);
    EXPECT_EQ(cfg.max_edge_or_hopping_weight, 4);
    EXPECT_EQ(cfg.cap_target, EdgeCapTarget::Edge);
    EXPECT_EQ(cfg.hopping_cap_mode, HoppingCapMode::NNAndNNN);
    EXPECT_EQ(cfg.min_logical_weight_filter, 1);
    EXPECT_EQ(cfg.acceptance_probability, 0.25);
    EXPECT_EQ(cfg.rng_seed, 9u);
    EXPECT_EQ(cfg.node_budget, 100u);
    EXPECT_EQ(cfg.threads, 2);
}

TEST(Config, ErrorsNameFileAndLine) {
    EXPECT_EQ(message_of("seed = 1\nacceptance_probability = 1.5\n"),
              "t.conf:2: acceptance_probability must lie in (0, 1]");
    EXPECT_EQ(message_of("acceptance_probability = 0\n"), "t.conf:1: acceptance_probability must lie in (0, 1]");
    EXPECT_EQ(message_of("\n\nbogus = 3\n"), "t.conf:3: unknown key 'bogus'");
    EXPECT_EQ(message_of("seed = 1\nseed = 2\n"), "t.conf:2: duplicate key 'seed'");
    EXPECT_EQ(message_of("seed\n"), "t.conf:1: expected 'key = value'");
    EXPECT_EQ(message_of("seed = x1\n"), "t.conf:1: invalid number 'x1' for 'seed'");
    EXPECT_EQ(message_of("seed = -1\n"), "t.conf:1: invalid number '-1' for 'seed'");
    EXPECT_EQ(message_of("threads = 0\n"), "t.conf:1: threads must lie in 1..1024");
    EXPECT_EQ(message_of("qubits_per_cell = 1\nmax_vertex_weight = 10\n"), "t.conf:2: max_vertex_weight must lie in 1..9");
    EXPECT_EQ(message_of("cap_target = both\n"), "t.conf:1: cap_target must be 'hopping' or 'edge'");
    EXPECT_NE(message_of("scheme = hex\n").find("t.conf:1:"), std::string::npos);
    EXPECT_NE(message_of("qubits_per_cell = 0\n").find("t.conf:1:"), std::string::npos);
}

TEST(Config, PathsResolveAgainstConfigDirectory) {
    ConfigFile c = ConfigFile::load(testing_support::fixture_path("deform_d2.conf"));
    std::string base;
    read_clifford_config(c, base);
    c.finish();
    EXPECT_TRUE(std::filesystem::exists(base)) << base;
    EXPECT_EQ(std::filesystem::path(base).parent_path(), std::filesystem::path(FERMENC_FIXTURE_DIR));

    ConfigFile a = ConfigFile::parse("output = /abs/out.jsonl\nreport = rel.txt\n");
    OutputPaths p = read_output_paths(a);
    EXPECT_EQ(p.output, "/abs/out.jsonl");
    EXPECT_EQ(p.report, "rel.txt");
    EXPECT_FALSE(p.front);
}

TEST(Config, CliffordKeys) {
    ConfigFile c = ConfigFile::parse("base = b.json\nn_single_qubit_samples = 6\nn_cnot_pairs = 0\n"
                                     "max_sequence_length = 3\nsequence_budget = 10\n");
    std::string base;
    CliffordConfig cfg = read_clifford_config(c, base);
    c.finish();
    EXPECT_EQ(base, "b.json");
    EXPECT_EQ(cfg.n_single_qubit_samples, 6);
    EXPECT_EQ(cfg.n_cnot_pairs, 0);
    EXPECT_EQ(cfg.max_sequence_length, 3);
    EXPECT_EQ(cfg.sequence_budget, 10u);

    ConfigFile missing = ConfigFile::parse("seed = 1\n", "m.conf");
    EXPECT_THROW(read_clifford_config(missing, base), ParseError);
    ConfigFile neg = ConfigFile::parse("base = b.json\nn_cnot_pairs = -1\n", "n.conf");
    try {
        read_clifford_config(neg, base);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_STREQ(e.what(), "n.conf:2: n_cnot_pairs must be non-negative");
    }
}

TEST(Config, HashTracksContent) {
    EXPECT_EQ(ConfigFile::parse("seed = 1\n").hash(), ConfigFile::parse("seed = 1\n").hash());
    EXPECT_NE(ConfigFile::parse("seed = 1\n").hash(), ConfigFile::parse("seed = 2\n").hash());
    EXPECT_EQ(ConfigFile::parse("").hash().size(), 16u);
}

}  // namespace
}  // namespace fermenc
