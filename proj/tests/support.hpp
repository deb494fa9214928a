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

// Fixtures and generators of valid encodings shared by the test binaries.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fermenc/config.hpp"
#include "fermenc/document.hpp"
#include "fermenc/encoding.hpp"
#include "fermenc/search_bruteforce.hpp"
#include "fermenc/search_clifford.hpp"
#include "oracles/dense.hpp"

namespace testing_support {

using namespace fermenc;

inline std::string fixture_path(const std::string &name) { return std::string(FERMENC_FIXTURE_DIR) + "/" + name; }

inline EncodingCandidate load_fixture(const std::string &name) { return load_encoding(fixture_path(name)); }

/// Every encoding the search emits for a fixture config.
inline std::vector<EncodingCandidate> search_fixture(const std::string &conf) {
    ConfigFile c = ConfigFile::load(fixture_path(conf));
    SearchConfig cfg = read_search_config(c);
    read_output_paths(c);
    c.finish();
    std::vector<EncodingCandidate> out;
    brute_force_search(cfg, [&](const EncodingCandidate &e) { out.push_back(e); });
    return out;
}

// Library validation folded into the oracle's (pair, shift) classes.
inline std::set<oracle::Mismatch> library_mismatches(const EncodingCandidate &enc) {
    RequiredParityTable t(enc.layout);
    const auto &gens = t.generators();
    std::set<oracle::Mismatch> out;
    for (const Violation &v : validate(enc, t)) {
        auto ia = std::find(gens.begin(), gens.end(), v.a) - gens.begin();
        auto ib = std::find(gens.begin(), gens.end(), v.b) - gens.begin();
        out.insert({static_cast<size_t>(ia), static_cast<size_t>(ib), v.shift.dx, v.shift.dy});
    }
    return out;
}

// Commutation parity of every generator pair over all relative placements,
// computed on dense words.
inline std::vector<int> parity_table(const EncodingCandidate &e) {
    int q = e.layout.qubits_per_cell();
    std::vector<int> out;
    for (const auto &[ga, a] : e.generators) {
        oracle::DenseWord da = oracle::place(a, q, 0, 0);
        for (const auto &[gb, b] : e.generators) {
            for (int dx = -4; dx <= 4; ++dx) {
                for (int dy = -4; dy <= 4; ++dy) out.push_back(oracle::pauli_parity(da, oracle::place(b, q, dx, dy)));
            }
        }
    }
    return out;
}

inline CliffordGateOp random_gate(const UnitCellLayout &l, std::mt19937_64 &rng, bool single_only) {
    int q = l.qubits_per_cell();
    std::uniform_int_distribution<int> local(0, q - 1), perm(0, 5), off(-1, 1);
    if (single_only || q < 2 || std::bernoulli_distribution(0.5)(rng)) {
        return CliffordGateOp::single(local(rng), perm(rng));
    }
    int c = local(rng), t = local(rng);
    while (t == c) t = local(rng);
    return CliffordGateOp::cnot(c, t, {off(rng), off(rng)});
}

struct Deformed {
    EncodingCandidate encoding;
    std::vector<CliffordGateOp> sequence;
};

/// Applies `length` random gates, redrawing any gate whose result leaves
/// the window. nullopt if no admissible gate turns up.
inline std::optional<Deformed> random_deformation(const EncodingCandidate &base, std::mt19937_64 &rng, int length,
                                                  bool single_only) {
    Deformed d{base, {}};
    for (int i = 0; i < length; ++i) {
        bool done = false;
        for (int attempt = 0; attempt < 64 && !done; ++attempt) {
            CliffordGateOp g = random_gate(base.layout, rng, single_only);
            CliffordResult r = apply_clifford(d.encoding, g);
            if (r.clipped) continue;
            d.encoding = r.encoding;
            d.sequence.push_back(g);
            done = true;
        }
        if (!done) return std::nullopt;
    }
    return d;
}

/// Valid encodings with at most two qubits per cell: the fixtures, the
/// distance-2 search front and random deformations of them.
inline std::vector<EncodingCandidate> small_corpus(size_t deformed, uint64_t seed) {
    std::vector<EncodingCandidate> out{load_fixture("jwt_chain.json"), load_fixture("mixed_chain.json")};
    for (const auto &e : search_fixture("search_d2.conf")) out.push_back(e);
    size_t bases = out.size();
    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < deformed; ++i) {
        const EncodingCandidate &b = out[i % bases];
        if (auto d = random_deformation(b, rng, 1 + static_cast<int>(i % 3), false)) out.push_back(d->encoding);
    }
    for (auto &e : out) e.metrics.reset();
    return out;
}

/// Re-embeds a square-lattice encoding with extra locals and adds diagonal
/// edges: each is the two-step path product times Z on a fresh local of its
/// own cell. The fresh qubits carry only Z, so all relations follow from the
/// path products, and every triangle loop acquires a non-trivial image.
inline std::optional<EncodingCandidate> with_diagonals(const EncodingCandidate &sq, EdgeSet target) {
    int q = sq.layout.qubits_per_cell();
    int extra = target == EdgeSet::Triangular ? 1 : 2;
    UnitCellLayout l(sq.layout.scheme(), target, q + extra);
    EncodingCandidate out(l);
    auto lift = [&](const LatticeWord &w) -> std::optional<PauliWord> {
        PauliWord p = PauliWord::identity(l.window_slots());
        for (auto [c, local] : w.support()) {
            if (c.dx < -1 || c.dx > 1 || c.dy < -1 || c.dy > 1) return std::nullopt;
            p.set(slot_of({c.dx + 1, c.dy + 1}, local, l), w.letter(c, local));
        }
        return p;
    };
    for (const auto &[g, w] : sq.generators) out.generators[g] = *lift(LatticeWord::from_window(w, sq.layout));
    using K = GeneratorKind;
    auto path = [&](std::initializer_list<std::pair<K, CellOffset>> steps) {
        LatticeWord w(q);
        for (auto [k, at] : steps) w *= sq.image_at({k, 0}, at);
        return lift(w);
    };
    auto add = [&](K kind, int fresh, std::optional<PauliWord> a, std::optional<PauliWord> b) {
        std::optional<PauliWord> p = a ? a : b;
        if (!p) return false;
        p->set(slot_of(kCentralCell, fresh, l), 'Z');
        out.generators[{kind, 0}] = *p;
        return true;
    };
    // (0,0) -> (1,1): right then up, or up then right.
    if (!add(K::EdgeDiagUR, q, path({{K::EdgeRight, {0, 0}}, {K::EdgeUp, {1, 0}}}),
             path({{K::EdgeUp, {0, 0}}, {K::EdgeRight, {0, 1}}}))) {
        return std::nullopt;
    }
    // (0,0) -> (-1,1): left then up, or up then left.
    if (target == EdgeSet::NNNSquare &&
        !add(K::EdgeDiagUL, q + 1, path({{K::EdgeRight, {-1, 0}}, {K::EdgeUp, {-1, 0}}}),
             path({{K::EdgeUp, {0, 0}}, {K::EdgeRight, {-1, 1}}}))) {
        return std::nullopt;
    }
    auto s = try_derive_stabilizers(out);
    if (!s) return std::nullopt;
    out.stabilizers = *s;
    return out;
}

}  // namespace testing_support
