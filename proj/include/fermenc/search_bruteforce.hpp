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
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fermenc/distance.hpp"
#include "fermenc/encoding.hpp"
#include "fermenc/fermion.hpp"
#include "fermenc/lattice.hpp"
#include "fermenc/metrics.hpp"
#include "fermenc/pareto.hpp"
#include "fermenc/syndrome.hpp"

namespace fermenc {

enum class HoppingCapMode { NN, NNAndNNN };

/// What the edge weight cap limits: the hopping terms V·E (default) or the
/// edge images themselves.
enum class EdgeCapTarget { Hopping, Edge };

struct SearchConfig {
    UnitCellLayout layout;
    int max_vertex_weight = 2;
    int max_edge_or_hopping_weight = 2;
    EdgeCapTarget cap_target = EdgeCapTarget::Hopping;
    HoppingCapMode hopping_cap_mode = HoppingCapMode::NN;
    int max_stab_weight = 0;  // 0: unlimited
    int min_distance_filter = 1;
    std::optional<int> min_logical_weight_filter;
    double acceptance_probability = 1.0;
    uint64_t rng_seed = 0;
    uint64_t node_budget = 0;  // 0: unlimited
    int distance_w_max = 3;
    int threads = 1;

    void check() const {
        int n = layout.window_slots();
        if (max_vertex_weight < 1 || max_vertex_weight > n) throw UsageError("max_vertex_weight out of range");
        if (max_edge_or_hopping_weight < 1 || max_edge_or_hopping_weight > n) {
            throw UsageError("max_edge_or_hopping_weight out of range");
        }
        if (max_stab_weight < 0 || max_stab_weight > n) throw UsageError("max_stab_weight out of range");
        if (min_distance_filter < 1) throw UsageError("min_distance_filter must be at least 1");
        if (min_logical_weight_filter && *min_logical_weight_filter < 0) {
            throw UsageError("min_logical_weight_filter must be non-negative");
        }
        if (!(acceptance_probability > 0.0 && acceptance_probability <= 1.0)) {
            throw UsageError("acceptance_probability must lie in (0, 1]");
        }
        if (distance_w_max < 1 || distance_w_max > n) throw UsageError("distance_w_max out of range");
        if (threads < 1) throw UsageError("threads must be at least 1");
    }
};

struct SearchReport {
    uint64_t nodes = 0;
    uint64_t completions = 0;
    uint64_t passed_filters = 0;
    uint64_t pareto_accepted = 0;
    bool truncated = false;
    std::optional<DistanceResult> best_distance;
    std::vector<EncodingCandidate> front;
};

using EncodingSink = std::function<void(const EncodingCandidate &)>;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Generator for an independent stream, e.g. one top-level search branch.
inline std::mt19937_64 stream_rng(uint64_t seed, uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 1)));
}

/// Bernoulli(p) from 53 random bits. p >= 1 consumes nothing.
inline bool stochastic_gate(double p, std::mt19937_64 &rng) {
    if (p >= 1.0) return true;
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u < p;
}

/// Symmetry-breaking state: locals are activated in order, each first seen
/// as Z, and the first non-Z letter on a local is X.
struct CanonState {
    int active = 0;
    uint8_t non_z = 0;
};

/// Scans a window word in slot order against the rules; on success `st` is
/// advanced past it.
inline bool canon_advance(CanonState &st, const PauliWord &w, int q) {
    CanonState s = st;
    uint64_t sup = w.support();
    while (sup != 0) {
        int slot = std::countr_zero(sup);
        sup &= sup - 1;
        int l = slot % q;
        char c = w.letter(slot);
        if (l > s.active) return false;
        if (l == s.active) {
            if (c != 'Z') return false;
            ++s.active;
            continue;
        }
        if (!((s.non_z >> l) & 1)) {
            if (c == 'Y') return false;
            if (c == 'X') s.non_z = static_cast<uint8_t>(s.non_z | (1u << l));
        }
    }
    st = s;
    return true;
}

/// Orders encodings for stable output: metrics first, then generator words.
inline bool encoding_less(const EncodingCandidate &a, const EncodingCandidate &b) {
    if (a.metrics && b.metrics) {
        const Metrics &ma = *a.metrics, &mb = *b.metrics;
        int da = detail::distance_rank(ma.distance), db = detail::distance_rank(mb.distance);
        if (da != db) return da > db;
        if (ma.max_stab_weight != mb.max_stab_weight) return ma.max_stab_weight < mb.max_stab_weight;
        if (ma.sigma_nn != mb.sigma_nn) return ma.sigma_nn < mb.sigma_nn;
        int c = detail::cmp_nnn(ma.sigma_nnn, mb.sigma_nnn);
        if (c != 0) return c < 0;
    }
    return a.generators < b.generators;
}

namespace detail {

class BruteForceSearch {
  public:
    BruteForceSearch(const SearchConfig &cfg, EncodingSink sink)
        : cfg_(cfg), sink_(std::move(sink)), gens_(generator_order(cfg.layout)), required_(cfg.layout) {
        const UnitCellLayout &l = cfg_.layout;
        n_ = l.window_slots();
        q_ = l.qubits_per_cell();
        center_mask_ = cell_mask(kCentralCell, l);
        for (size_t i = 0; i < gens_.size(); ++i) {
            const FermionGeneratorId g = gens_[i];
            uint64_t far = center_mask_;
            int vk = -1;
            if (g.is_edge()) {
                ModeRef t = edge_target(l, g);
                far = cell_mask({1 + t.cell.dx, 1 + t.cell.dy}, l);
                vk = index_of({GeneratorKind::Vertex, t.mode});
                targets_.push_back(t);
            } else {
                targets_.push_back({});
            }
            far_mask_.push_back(far);
            vertex_k_.push_back(vk);
            vertex_j_.push_back(index_of({GeneratorKind::Vertex, g.mode}));
        }
    }

    SearchReport run() {
        cfg_.check();
        std::vector<PauliWord> images(gens_.size(), PauliWord::identity(n_));
        std::vector<std::pair<PauliWord, CanonState>> roots;
        candidates(0, images, CanonState{}, [&](const PauliWord &w, const CanonState &st) {
            roots.push_back({w, st});
            return true;
        });
        std::atomic<size_t> next{0};
        auto worker = [&] {
            std::vector<PauliWord> imgs(gens_.size(), PauliWord::identity(n_));
            for (;;) {
                size_t b = next.fetch_add(1);
                if (b >= roots.size() || stop_.load()) return;
                std::mt19937_64 rng = stream_rng(cfg_.rng_seed, b);
                if (!stochastic_gate(cfg_.acceptance_probability, rng)) continue;
                if (!count_node()) return;
                imgs[0] = roots[b].first;
                descend(1, imgs, roots[b].second, rng);
            }
        };
        if (cfg_.threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < cfg_.threads; ++t) pool.emplace_back(worker);
            for (auto &t : pool) t.join();
        }
        SearchReport rep;
        rep.nodes = nodes_.load();
        rep.completions = completions_.load();
        rep.passed_filters = passed_;
        rep.pareto_accepted = accepted_;
        rep.truncated = stop_.load();
        rep.best_distance = best_;
        for (const auto &e : front_.entries()) rep.front.push_back(e.payload);
        std::sort(rep.front.begin(), rep.front.end(), encoding_less);
        return rep;
    }

    /// Calls f(word, state_after) for every admissible image of generator i
    /// given images[0..i). Stops early when f returns false.
    template <typename F>
    void candidates(size_t i, const std::vector<PauliWord> &images, const CanonState &st, F &&f) const {
        const UnitCellLayout &l = cfg_.layout;
        const FermionGeneratorId g = gens_[i];
        SyndromeTable tab(n_);
        Syndrome target;
        for (size_t j = 0; j < i; ++j) {
            for (CellOffset s : all_window_shifts()) {
                PauliWord t = translate_clipped(images[j], s, l);
                int req = required_(i, j, s);
                if (t.is_identity()) {
                    if (req) return;
                    continue;
                }
                target.set(tab.rows(), req);
                tab.add_check(t);
            }
        }
        bool hop = g.is_edge() && cfg_.cap_target == EdgeCapTarget::Hopping;
        PauliWord base = hop ? images[static_cast<size_t>(vertex_j_[i])] : PauliWord::identity(n_);
        target ^= tab.of(base);
        int cap = g.is_edge() ? cfg_.max_edge_or_hopping_weight : cfg_.max_vertex_weight;
        std::optional<LatticeWord> vk;
        if (hop && static_cast<size_t>(vertex_k_[i]) < i) {
            vk = LatticeWord::from_window(images[static_cast<size_t>(vertex_k_[i])], l, targets_[i].cell);
        }

        int slots[kMaxSlots];
        int letter[kMaxSlots];
        bool keep_going = true;
        auto leaf = [&](int w, const Syndrome &syn) {
            if (!(syn == target)) return;
            uint64_t x = 0, z = 0;
            for (int k = 0; k < w; ++k) {
                uint64_t bit = uint64_t{1} << slots[k];
                if (letter[k] != 2) x |= bit;
                if (letter[k] != 0) z |= bit;
            }
            PauliWord e{x ^ base.x, z ^ base.z, n_};
            if (e.is_identity()) return;
            uint64_t sup = e.support();
            if ((sup & center_mask_) == 0 || (sup & far_mask_[i]) == 0) return;
            if (!g.is_edge() && weight(e) > cap) return;
            for (CellOffset s : all_window_shifts()) {
                if (s.dx == 0 && s.dy == 0) continue;
                if (commute_parity(e, translate_clipped(e, s, l)) != required_(i, i, s)) return;
            }
            if (vk) {
                LatticeWord term = *vk * LatticeWord::from_window(e, l);
                if (term.weight() > cap) return;
            }
            CanonState next = st;
            if (!canon_advance(next, e, q_)) return;
            if (!f(e, next)) keep_going = false;
        };
        // Words of weight 1..cap in colex slot order, letters X, Y, Z.
        std::function<void(int, int, int, const Syndrome &)> rec;
        rec = [&](int depth, int w, int start, const Syndrome &syn) {
            if (!keep_going) return;
            if (depth == w) {
                leaf(w, syn);
                return;
            }
            for (int s = start; s <= n_ - (w - depth); ++s) {
                slots[depth] = s;
                for (int c = 0; c < 3 && keep_going; ++c) {
                    letter[depth] = c;
                    rec(depth + 1, w, s + 1, syn ^ tab.at(s, c));
                }
            }
        };
        for (int w = 1; w <= cap && keep_going; ++w) {
            rec(0, w, 0, Syndrome{});
        }
    }

    const std::vector<FermionGeneratorId> &generators() const { return gens_; }

  private:
    int index_of(FermionGeneratorId g) const {
        for (size_t k = 0; k < gens_.size(); ++k) {
            if (gens_[k] == g) return static_cast<int>(k);
        }
        return -1;
    }

    bool count_node() {
        uint64_t n = nodes_.fetch_add(1) + 1;
        if (cfg_.node_budget != 0 && n > cfg_.node_budget) {
            stop_.store(true);
            return false;
        }
        return true;
    }

    void descend(size_t i, std::vector<PauliWord> &images, const CanonState &st, std::mt19937_64 &rng) {
        if (stop_.load()) return;
        if (i == gens_.size()) {
            complete(images);
            return;
        }
        std::vector<std::pair<PauliWord, CanonState>> cands;
        candidates(i, images, st, [&](const PauliWord &w, const CanonState &s) {
            cands.push_back({w, s});
            return true;
        });
        for (auto &[w, s] : cands) {
            if (stop_.load()) return;
            if (!stochastic_gate(cfg_.acceptance_probability, rng)) continue;
            if (!count_node()) return;
            images[i] = w;
            descend(i + 1, images, s, rng);
        }
    }

    void complete(const std::vector<PauliWord> &images) {
        completions_.fetch_add(1);
        EncodingCandidate enc(cfg_.layout);
        for (size_t k = 0; k < gens_.size(); ++k) enc.generators[gens_[k]] = images[k];
        if (cfg_.cap_target == EdgeCapTarget::Hopping) {
            auto h = max_hopping_weight(enc, cfg_.hopping_cap_mode == HoppingCapMode::NNAndNNN);
            if (!h && cfg_.hopping_cap_mode == HoppingCapMode::NNAndNNN) h = max_hopping_weight(enc, false);
            if (!h || *h > cfg_.max_edge_or_hopping_weight) return;
        }
        if (!validate(enc, required_).empty()) return;
        auto stabs = try_derive_stabilizers(enc);
        if (!stabs) return;
        enc.stabilizers = std::move(*stabs);
        if (cfg_.max_stab_weight > 0 && max_stabilizer_weight(enc.stabilizers) > cfg_.max_stab_weight) return;
        Metrics m = compute_metrics(enc, DistanceBudget{cfg_.distance_w_max, 1, 0});
        if (m.distance.value < cfg_.min_distance_filter) return;
        if (cfg_.min_logical_weight_filter) {
            for (const TermWeight &t : m.terms) {
                if (t.weight < *cfg_.min_logical_weight_filter) return;
            }
        }
        enc.metrics = m;
        std::lock_guard<std::mutex> lock(mu_);
        ++passed_;
        if (!best_ || detail::distance_rank(m.distance) > detail::distance_rank(*best_)) best_ = m.distance;
        if (front_.update(ParetoKey::of(m), enc)) {
            ++accepted_;
            if (sink_) sink_(enc);
        }
    }

    SearchConfig cfg_;
    EncodingSink sink_;
    std::vector<FermionGeneratorId> gens_;
    RequiredParityTable required_;
    int n_ = 0;
    int q_ = 1;
    uint64_t center_mask_ = 0;
    std::vector<uint64_t> far_mask_;
    std::vector<int> vertex_j_;
    std::vector<int> vertex_k_;
    std::vector<ModeRef> targets_;

    std::atomic<uint64_t> nodes_{0};
    std::atomic<uint64_t> completions_{0};
    std::atomic<bool> stop_{false};
    std::mutex mu_;
    uint64_t passed_ = 0;
    uint64_t accepted_ = 0;
    std::optional<DistanceResult> best_;
    ParetoFront<EncodingCandidate> front_;
};

}  // namespace detail

/// Depth-first enumeration of canonical encodings under the caps, with
/// filtered, Pareto-accepted completions sent to `sink`.
inline SearchReport brute_force_search(const SearchConfig &cfg, EncodingSink sink = {}) {
    detail::BruteForceSearch s(cfg, std::move(sink));
    return s.run();
}

}  // namespace fermenc
