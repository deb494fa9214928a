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
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "fermenc/encoding.hpp"
#include "fermenc/lattice.hpp"
#include "fermenc/symplectic.hpp"
#include "fermenc/syndrome.hpp"

namespace fermenc {

struct DistanceBudget {
    int w_max = 3;
    int threads = 1;
    // Rank ranges handed to workers per weight; 0 picks 8 per thread.
    int parallel_chunks = 0;
};

/// Stabilizer translates relevant to errors supported in the window.
///
/// Detection uses every translate within +-2 cells, cut to the window: an
/// error living in the window sees exactly that part of the full operator.
/// Triviality uses the span of the translates that fit entirely.
class StabilizerChecker {
  public:
    StabilizerChecker(const UnitCellLayout &layout, const std::vector<PauliWord> &stabilizers)
        : layout_(layout), detect_(layout.window_slots()) {
        for (const PauliWord &s : stabilizers) {
            if (s.n_slots != layout.window_slots()) {
                throw UsageError("stabilizer does not match the layout's window");
            }
            for (CellOffset sh : all_window_shifts()) {
                PauliWord t = translate_clipped(s, sh, layout);
                if (t.is_identity()) continue;
                detect_.add_check(t);
                if (auto full = translate_word(s, sh, layout)) {
                    span_.insert(*full);
                    fitting_.push_back(*full);
                }
            }
        }
    }

    bool detected(const PauliWord &e) const { return !detect_.of(e).none(); }
    bool trivial(const PauliWord &e) const { return span_.rank() == 0 ? e.is_identity() : span_.contains(e); }
    bool is_logical(const PauliWord &e) const { return !detected(e) && !trivial(e); }

    const SyndromeTable &table() const { return detect_; }
    const SymplecticBasis &span() const { return span_; }
    const std::vector<PauliWord> &fitting_translates() const { return fitting_; }
    const UnitCellLayout &layout() const { return layout_; }

  private:
    UnitCellLayout layout_;
    SyndromeTable detect_;
    SymplecticBasis span_;
    std::vector<PauliWord> fitting_;
};

inline bool is_logical(const PauliWord &e, const EncodingCandidate &enc) {
    return StabilizerChecker(enc.layout, enc.stabilizers).is_logical(e);
}

namespace detail {

inline uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return static_cast<uint64_t>(r);
}

/// Combination of rank r in colex order (the order Gosper's hack visits).
inline uint64_t unrank_colex(uint64_t r, int n, int k) {
    uint64_t mask = 0;
    for (int j = k; j >= 1; --j) {
        int c = j - 1;
        while (c + 1 < n && binomial(c + 1, j) <= r) ++c;
        r -= binomial(c, j);
        mask |= uint64_t{1} << c;
    }
    return mask;
}

inline uint64_t next_combination(uint64_t v) {
    uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

inline uint64_t ipow3(int w) {
    uint64_t r = 1;
    for (int i = 0; i < w; ++i) r *= 3;
    return r;
}

/// First logical of weight w among combinations [lo, hi) of the colex order;
/// returns its global rank comb_rank * 3^w + letter_index.
inline std::optional<uint64_t> scan_range(const StabilizerChecker &chk, int n, int w, uint64_t lo, uint64_t hi,
                                          const std::atomic<uint64_t> &best) {
    const SyndromeTable &tab = chk.table();
    uint64_t letters = ipow3(w);
    uint64_t comb = unrank_colex(lo, n, w);
    int slots[kMaxSlots];
    int digit[kMaxSlots];
    for (uint64_t r = lo; r < hi; ++r, comb = (r < hi ? next_combination(comb) : comb)) {
        if (r * letters >= best.load(std::memory_order_relaxed)) {
            return std::nullopt;
        }
        uint64_t m = comb;
        for (int i = 0; i < w; ++i) {
            slots[i] = std::countr_zero(m);
            m &= m - 1;
            digit[i] = 0;
        }
        Syndrome syn;
        uint64_t x = 0, z = 0;
        for (int i = 0; i < w; ++i) {
            syn ^= tab.at(slots[i], 0);
            x |= uint64_t{1} << slots[i];
        }
        for (uint64_t li = 0; li < letters; ++li) {
            if (li > 0) {
                // Odometer step: digit 0 fastest, X -> Y -> Z.
                int i = 0;
                while (digit[i] == 2) {
                    syn ^= tab.at(slots[i], 2) ^ tab.at(slots[i], 0);
                    z &= ~(uint64_t{1} << slots[i]);
                    x |= uint64_t{1} << slots[i];
                    digit[i] = 0;
                    ++i;
                }
                syn ^= tab.at(slots[i], digit[i]) ^ tab.at(slots[i], digit[i] + 1);
                ++digit[i];
                uint64_t bit = uint64_t{1} << slots[i];
                if (digit[i] == 1) {
                    z |= bit;
                } else {
                    x &= ~bit;
                }
            }
            if (syn.none() && !chk.span().contains_raw(x, z)) {
                return r * letters + li;
            }
        }
    }
    return std::nullopt;
}

/// Rebuilds the error word at a global rank.
inline PauliWord word_at_rank(uint64_t rank, int n, int w) {
    uint64_t letters = ipow3(w);
    uint64_t comb = unrank_colex(rank / letters, n, w);
    uint64_t li = rank % letters;
    PauliWord e = PauliWord::identity(n);
    for (int i = 0; i < w; ++i) {
        int s = std::countr_zero(comb);
        comb &= comb - 1;
        e.set(s, kLetters[li % 3]);
        li /= 3;
    }
    return e;
}

}  // namespace detail

struct DistanceReport {
    DistanceResult result;
    std::optional<PauliWord> witness;
};

/// Weight-ordered exhaustive scan of window errors. The witness is the first
/// logical in (combination colex rank, letter odometer) order, independent of
/// the worker count.
inline DistanceReport min_distance_report(const StabilizerChecker &chk, const DistanceBudget &budget) {
    int n = chk.layout().window_slots();
    if (budget.w_max < 1) {
        throw UsageError("w_max must be at least 1");
    }
    int w_max = std::min(budget.w_max, n);
    int threads = std::max(1, budget.threads);
    for (int w = 1; w <= w_max; ++w) {
        uint64_t combos = detail::binomial(n, w);
        std::atomic<uint64_t> best{std::numeric_limits<uint64_t>::max()};
        if (threads == 1) {
            if (auto r = detail::scan_range(chk, n, w, 0, combos, best)) best = *r;
        } else {
            uint64_t n_chunks = budget.parallel_chunks > 0 ? static_cast<uint64_t>(budget.parallel_chunks)
                                                           : static_cast<uint64_t>(threads) * 8;
            n_chunks = std::max<uint64_t>(1, std::min(n_chunks, combos));
            std::atomic<uint64_t> next{0};
            auto worker = [&] {
                for (;;) {
                    uint64_t c = next.fetch_add(1);
                    if (c >= n_chunks) return;
                    uint64_t lo = combos * c / n_chunks, hi = combos * (c + 1) / n_chunks;
                    if (auto r = detail::scan_range(chk, n, w, lo, hi, best)) {
                        uint64_t cur = best.load();
                        while (*r < cur && !best.compare_exchange_weak(cur, *r)) {
                        }
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto &t : pool) t.join();
        }
        if (best.load() != std::numeric_limits<uint64_t>::max()) {
            return {DistanceResult::Exact(w), detail::word_at_rank(best.load(), n, w)};
        }
    }
    return {DistanceResult::LowerBound(w_max + 1), std::nullopt};
}

inline DistanceResult min_distance(const EncodingCandidate &enc, const DistanceBudget &budget) {
    return min_distance_report(StabilizerChecker(enc.layout, enc.stabilizers), budget).result;
}

}  // namespace fermenc
