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
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fermenc/distance.hpp"
#include "fermenc/encoding.hpp"
#include "fermenc/lattice.hpp"
#include "fermenc/metrics.hpp"
#include "fermenc/pareto.hpp"
#include "fermenc/search_bruteforce.hpp"

namespace fermenc {

/// Images of (X, Y, Z) under the six phase-blind single-qubit Clifford classes.
inline constexpr std::array<std::array<char, 3>, 6> kLetterPermutations{{
    {'X', 'Y', 'Z'},
    {'X', 'Z', 'Y'},
    {'Y', 'X', 'Z'},
    {'Y', 'Z', 'X'},
    {'Z', 'X', 'Y'},
    {'Z', 'Y', 'X'},
}};

/// A gate applied to every unit cell. SingleQubit acts on local slot `local`;
/// CNOT couples local `control` of each cell k with local `target` of cell
/// k + delta.
struct CliffordGateOp {
    enum class Kind { SingleQubit, CNOT };
    Kind kind = Kind::SingleQubit;
    int local = 0;
    int permutation = 0;
    int control = 0;
    int target = 0;
    CellOffset delta;

    static CliffordGateOp single(int local, int perm) { return {Kind::SingleQubit, local, perm, 0, 0, {}}; }
    static CliffordGateOp cnot(int control, int target, CellOffset delta) {
        return {Kind::CNOT, 0, 0, control, target, delta};
    }

    friend bool operator==(const CliffordGateOp &, const CliffordGateOp &) = default;
    friend auto operator<=>(const CliffordGateOp &, const CliffordGateOp &) = default;
};

inline std::string format_gate(const CliffordGateOp &g) {
    if (g.kind == CliffordGateOp::Kind::SingleQubit) {
        const auto &p = kLetterPermutations[static_cast<size_t>(g.permutation)];
        return "1q:" + std::to_string(g.local) + ":" + std::string(p.begin(), p.end());
    }
    return "cx:" + std::to_string(g.control) + ">" + std::to_string(g.target) + "@(" + std::to_string(g.delta.dx) +
           "," + std::to_string(g.delta.dy) + ")";
}

inline CliffordGateOp parse_gate(const std::string &s) {
    auto bad = [&] { return ParseError("malformed gate '" + s + "'"); };
    try {
        if (s.rfind("1q:", 0) == 0) {
            size_t c = s.find(':', 3);
            if (c == std::string::npos) throw bad();
            int local = std::stoi(s.substr(3, c - 3));
            std::string p = s.substr(c + 1);
            for (size_t i = 0; i < kLetterPermutations.size(); ++i) {
                if (p == std::string(kLetterPermutations[i].begin(), kLetterPermutations[i].end())) {
                    return CliffordGateOp::single(local, static_cast<int>(i));
                }
            }
            throw bad();
        }
        if (s.rfind("cx:", 0) == 0) {
            size_t gt = s.find('>'), at = s.find("@("), comma = s.find(',', at == std::string::npos ? 0 : at);
            if (gt == std::string::npos || at == std::string::npos || comma == std::string::npos || s.back() != ')') {
                throw bad();
            }
            int c = std::stoi(s.substr(3, gt - 3));
            int t = std::stoi(s.substr(gt + 1, at - gt - 1));
            int dx = std::stoi(s.substr(at + 2, comma - at - 2));
            int dy = std::stoi(s.substr(comma + 1, s.size() - comma - 2));
            return CliffordGateOp::cnot(c, t, {dx, dy});
        }
    } catch (const std::logic_error &) {
        throw bad();
    }
    throw bad();
}

inline void check_gate(const CliffordGateOp &g, const UnitCellLayout &layout) {
    int q = layout.qubits_per_cell();
    if (g.kind == CliffordGateOp::Kind::SingleQubit) {
        if (g.local < 0 || g.local >= q) throw UsageError("gate local slot outside the unit cell");
        if (g.permutation < 0 || g.permutation >= 6) throw UsageError("letter permutation index out of range");
        return;
    }
    if (g.control < 0 || g.control >= q || g.target < 0 || g.target >= q) {
        throw UsageError("CNOT local slot outside the unit cell");
    }
    // Replicas of a same-local CNOT would chain control onto target across
    // cells, which no finite-depth translation-invariant circuit realises.
    if (g.control == g.target) throw UsageError("CNOT control and target must use distinct local slots");
    if (std::abs(g.delta.dx) > 1 || std::abs(g.delta.dy) > 1) throw UsageError("CNOT cells must be neighbours");
}

/// Conjugates a generator image by the translated gate layer. nullopt when
/// the result would need qubits outside the window.
inline std::optional<PauliWord> apply_gate_to_word(const PauliWord &w, const CliffordGateOp &g,
                                                   const UnitCellLayout &layout) {
    if (g.kind == CliffordGateOp::Kind::SingleQubit) {
        const auto &p = kLetterPermutations[static_cast<size_t>(g.permutation)];
        PauliWord out = w;
        for (int y = 0; y < kWindowSide; ++y) {
            for (int x = 0; x < kWindowSide; ++x) {
                int s = slot_of({x, y}, g.local, layout);
                char c = w.letter(s);
                if (c != 'I') out.set(s, p[c == 'X' ? 0 : (c == 'Y' ? 1 : 2)]);
            }
        }
        return out;
    }
    LatticeWord lw = LatticeWord::from_window(w, layout);
    LatticeWord out = lw;
    uint8_t cbit = static_cast<uint8_t>(1u << g.control), tbit = static_cast<uint8_t>(1u << g.target);
    for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
            CellOffset m{dx, dy};
            // X on a control spreads to the target one cell-step ahead.
            if (lw.cell_x(m - g.delta) & cbit) {
                out.set_cell(m, static_cast<uint8_t>(out.cell_x(m) ^ tbit), out.cell_z(m));
            }
            // Z on a target spreads back to its control.
            if (lw.cell_z(m + g.delta) & tbit) {
                out.set_cell(m, out.cell_x(m), static_cast<uint8_t>(out.cell_z(m) ^ cbit));
            }
        }
    }
    return out.to_window(layout);
}

struct CliffordResult {
    EncodingCandidate encoding;
    bool clipped = false;
};

/// Applies g to every generator image and re-derives stabilizers. Clipped
/// results keep the input images and are flagged.
inline CliffordResult apply_clifford(const EncodingCandidate &enc, const CliffordGateOp &g) {
    check_gate(g, enc.layout);
    CliffordResult r{EncodingCandidate(enc.layout), false};
    for (const auto &[id, w] : enc.generators) {
        auto nw = apply_gate_to_word(w, g, enc.layout);
        if (!nw) {
            return {enc, true};
        }
        r.encoding.generators[id] = *nw;
    }
    auto s = try_derive_stabilizers(r.encoding);
    if (!s) return {enc, true};
    r.encoding.stabilizers = std::move(*s);
    return r;
}

struct CliffordConfig {
    EncodingCandidate base;
    int n_single_qubit_samples = 2;
    int n_cnot_pairs = 2;
    int max_sequence_length = 2;
    uint64_t rng_seed = 0;
    int min_distance_filter = 1;
    int max_hopping_weight = 0;  // 0: unlimited
    int max_stab_weight = 0;     // 0: unlimited
    int distance_w_max = 3;
    uint64_t sequence_budget = 0;  // 0: unlimited
    int threads = 1;

    void check() const {
        if (n_single_qubit_samples < 0 || n_cnot_pairs < 0 || max_sequence_length < 0) {
            throw UsageError("sample counts and sequence length must be non-negative");
        }
        if (min_distance_filter < 1) throw UsageError("min_distance_filter must be at least 1");
        if (max_hopping_weight < 0 || max_stab_weight < 0) throw UsageError("caps must be non-negative");
        if (distance_w_max < 1 || distance_w_max > base.layout.window_slots()) {
            throw UsageError("distance_w_max out of range");
        }
        if (threads < 1) throw UsageError("threads must be at least 1");
    }
};

/// Uniform index in [0, n) by rejection, independent of library internals.
inline uint64_t uniform_index(std::mt19937_64 &rng, uint64_t n) {
    uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

/// k distinct items drawn uniformly, kept in population order.
template <typename T>
std::vector<T> sample_distinct(const std::vector<T> &population, int k, std::mt19937_64 &rng) {
    std::vector<size_t> idx(population.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    size_t take = std::min(population.size(), static_cast<size_t>(std::max(k, 0)));
    for (size_t i = 0; i < take; ++i) {
        size_t j = i + static_cast<size_t>(uniform_index(rng, idx.size() - i));
        std::swap(idx[i], idx[j]);
    }
    std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
    std::vector<T> out;
    for (size_t i = 0; i < take; ++i) out.push_back(population[idx[i]]);
    return out;
}

/// Cell offsets joined to the origin cell by an edge generator, both signs.
inline std::vector<CellOffset> connected_offsets(const UnitCellLayout &layout) {
    std::vector<CellOffset> out;
    for (FermionGeneratorId g : generator_order(layout)) {
        if (!g.is_edge()) continue;
        CellOffset d = edge_target(layout, g).cell;
        if (d == CellOffset{}) continue;
        for (CellOffset c : {d, -d}) {
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<CliffordGateOp> sample_gate_set(const CliffordConfig &cfg) {
    const UnitCellLayout &l = cfg.base.layout;
    int q = l.qubits_per_cell();
    std::mt19937_64 rng = stream_rng(cfg.rng_seed, 0);
    std::vector<CliffordGateOp> out;
    for (int local = 0; local < q; ++local) {
        std::vector<CliffordGateOp> pop;
        for (int p = 0; p < 6; ++p) pop.push_back(CliffordGateOp::single(local, p));
        for (auto &g : sample_distinct(pop, cfg.n_single_qubit_samples, rng)) out.push_back(g);
    }
    for (int c = 0; c < q; ++c) {
        for (int t = 0; t < q; ++t) {
            if (c != t) out.push_back(CliffordGateOp::cnot(c, t, {}));
        }
    }
    for (CellOffset d : connected_offsets(l)) {
        std::vector<CliffordGateOp> pop;
        for (int c = 0; c < q; ++c) {
            for (int t = 0; t < q; ++t) {
                if (c != t) pop.push_back(CliffordGateOp::cnot(c, t, d));
            }
        }
        for (auto &g : sample_distinct(pop, cfg.n_cnot_pairs, rng)) out.push_back(g);
    }
    return out;
}

struct CliffordFrontEntry {
    EncodingCandidate encoding;
    std::vector<CliffordGateOp> sequence;
};

struct CliffordReport {
    uint64_t sequences = 0;
    uint64_t clipped = 0;
    uint64_t unique_states = 0;
    uint64_t passed_filters = 0;
    uint64_t pareto_accepted = 0;
    bool truncated = false;
    std::optional<DistanceResult> best_distance;
    std::vector<CliffordFrontEntry> front;
};

using CliffordSink = std::function<void(const EncodingCandidate &, const std::vector<CliffordGateOp> &)>;

namespace detail {

using GeneratorMap = std::map<FermionGeneratorId, PauliWord>;

// Index sequences compare by length first, then lexicographically.
inline bool shorter_first(const std::vector<int> &a, const std::vector<int> &b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace detail

/// Applies every ordered sequence of distinct sampled gates up to the
/// maximum length, evaluates each distinct resulting encoding once (tagged
/// with its shortest, then lexicographically first, sequence) and keeps the
/// Pareto-optimal ones. Output does not depend on the thread count.
inline CliffordReport clifford_deform_search(const CliffordConfig &cfg, CliffordSink sink = {}) {
    cfg.check();
    if (!validate(cfg.base).empty()) throw EncodingError("base encoding does not validate");
    std::vector<CliffordGateOp> gates = sample_gate_set(cfg);
    for (const auto &g : gates) check_gate(g, cfg.base.layout);

    std::mutex mu;
    std::map<detail::GeneratorMap, std::vector<int>> states;
    std::atomic<uint64_t> sequences{0}, clipped{0};
    std::atomic<bool> stop{false};

    auto note = [&](std::map<detail::GeneratorMap, std::vector<int>> &local, const detail::GeneratorMap &m,
                    const std::vector<int> &seq) {
        auto it = local.find(m);
        if (it == local.end()) {
            local.emplace(m, seq);
        } else if (detail::shorter_first(seq, it->second)) {
            it->second = seq;
        }
    };
    auto count = [&]() {
        uint64_t n = sequences.fetch_add(1) + 1;
        if (cfg.sequence_budget != 0 && n > cfg.sequence_budget) {
            stop.store(true);
            return false;
        }
        return true;
    };

    // Sequence enumeration, split on the first gate.
    std::function<void(detail::GeneratorMap &, std::vector<int> &, std::vector<char> &,
                       std::map<detail::GeneratorMap, std::vector<int>> &)>
        extend = [&](detail::GeneratorMap &cur, std::vector<int> &seq, std::vector<char> &used,
                     std::map<detail::GeneratorMap, std::vector<int>> &local) {
            if (static_cast<int>(seq.size()) >= cfg.max_sequence_length) return;
            for (size_t k = 0; k < gates.size(); ++k) {
                if (used[k] || stop.load()) continue;
                if (!count()) return;
                detail::GeneratorMap next;
                bool ok = true;
                for (const auto &[id, w] : cur) {
                    auto nw = apply_gate_to_word(w, gates[k], cfg.base.layout);
                    if (!nw) {
                        ok = false;
                        break;
                    }
                    next[id] = *nw;
                }
                if (!ok) {
                    clipped.fetch_add(1);
                    continue;
                }
                seq.push_back(static_cast<int>(k));
                used[k] = 1;
                note(local, next, seq);
                extend(next, seq, used, local);
                used[k] = 0;
                seq.pop_back();
            }
        };

    count();
    states.emplace(cfg.base.generators, std::vector<int>{});
    if (cfg.max_sequence_length > 0) {
        std::atomic<size_t> next_first{0};
        auto worker = [&] {
            std::map<detail::GeneratorMap, std::vector<int>> local;
            for (;;) {
                size_t k = next_first.fetch_add(1);
                if (k >= gates.size() || stop.load()) break;
                if (!count()) break;
                detail::GeneratorMap first;
                bool ok = true;
                for (const auto &[id, w] : cfg.base.generators) {
                    auto nw = apply_gate_to_word(w, gates[k], cfg.base.layout);
                    if (!nw) {
                        ok = false;
                        break;
                    }
                    first[id] = *nw;
                }
                if (!ok) {
                    clipped.fetch_add(1);
                    continue;
                }
                std::vector<int> seq{static_cast<int>(k)};
                std::vector<char> used(gates.size(), 0);
                used[k] = 1;
                note(local, first, seq);
                extend(first, seq, used, local);
            }
            std::lock_guard<std::mutex> lock(mu);
            for (auto &[m, s] : local) note(states, m, s);
        };
        if (cfg.threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < cfg.threads; ++t) pool.emplace_back(worker);
            for (auto &t : pool) t.join();
        }
    }

    // Evaluate distinct states in order of their tagging sequence.
    std::vector<std::pair<std::vector<int>, const detail::GeneratorMap *>> order;
    for (auto &[m, s] : states) order.push_back({s, &m});
    std::sort(order.begin(), order.end(),
              [](const auto &a, const auto &b) { return detail::shorter_first(a.first, b.first); });
    std::vector<std::optional<EncodingCandidate>> evaluated(order.size());
    std::atomic<size_t> next_eval{0};
    auto evaluator = [&] {
        for (;;) {
            size_t i = next_eval.fetch_add(1);
            if (i >= order.size()) return;
            EncodingCandidate enc(cfg.base.layout);
            enc.generators = *order[i].second;
            auto stabs = try_derive_stabilizers(enc);
            if (!stabs) continue;
            enc.stabilizers = std::move(*stabs);
            if (cfg.max_stab_weight > 0 && max_stabilizer_weight(enc.stabilizers) > cfg.max_stab_weight) continue;
            if (cfg.max_hopping_weight > 0) {
                auto h = max_hopping_weight(enc, false);
                if (!h || *h > cfg.max_hopping_weight) continue;
            }
            Metrics m = compute_metrics(enc, DistanceBudget{cfg.distance_w_max, 1, 0});
            if (m.distance.value < cfg.min_distance_filter) continue;
            enc.metrics = m;
            evaluated[i] = std::move(enc);
        }
    };
    if (cfg.threads == 1) {
        evaluator();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < cfg.threads; ++t) pool.emplace_back(evaluator);
        for (auto &t : pool) t.join();
    }

    CliffordReport rep;
    rep.sequences = std::min<uint64_t>(sequences.load(), cfg.sequence_budget ? cfg.sequence_budget : ~uint64_t{0});
    rep.clipped = clipped.load();
    rep.unique_states = order.size();
    rep.truncated = stop.load();
    ParetoFront<CliffordFrontEntry> front;
    for (size_t i = 0; i < order.size(); ++i) {
        if (!evaluated[i]) continue;
        ++rep.passed_filters;
        const EncodingCandidate &enc = *evaluated[i];
        const Metrics &m = *enc.metrics;
        if (!rep.best_distance || detail::distance_rank(m.distance) > detail::distance_rank(*rep.best_distance)) {
            rep.best_distance = m.distance;
        }
        std::vector<CliffordGateOp> seq;
        for (int k : order[i].first) seq.push_back(gates[static_cast<size_t>(k)]);
        if (front.update(ParetoKey::of(m), {enc, seq})) {
            ++rep.pareto_accepted;
            if (sink) sink(enc, seq);
        }
    }
    for (const auto &e : front.entries()) rep.front.push_back(e.payload);
    std::sort(rep.front.begin(), rep.front.end(),
              [](const CliffordFrontEntry &a, const CliffordFrontEntry &b) {
                  if (encoding_less(a.encoding, b.encoding)) return true;
                  if (encoding_less(b.encoding, a.encoding)) return false;
                  return a.sequence < b.sequence;
              });
    return rep;
}

}  // namespace fermenc
