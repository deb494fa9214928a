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
#include <compare>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fermenc/encoding.hpp"

namespace fermenc {

/// The four objectives. Distance is maximised, the rest minimised; a missing
/// sigma_nnn ranks worse than any value.
struct ParetoKey {
    DistanceResult distance;
    int max_stab_weight = 0;
    Rational sigma_nn;
    std::optional<Rational> sigma_nnn;

    static ParetoKey of(const Metrics &m) { return {m.distance, m.max_stab_weight, m.sigma_nn, m.sigma_nnn}; }
    friend bool operator==(const ParetoKey &, const ParetoKey &) = default;
};

namespace detail {

// A lower bound of v guarantees at least v, so it ranks just above Exact(v).
inline int distance_rank(const DistanceResult &d) { return 2 * d.value + (d.exact ? 0 : 1); }

// -1: a better, 0: equal, 1: b better.
inline int cmp_nnn(const std::optional<Rational> &a, const std::optional<Rational> &b) {
    if (!a && !b) return 0;
    if (!a) return 1;
    if (!b) return -1;
    if (*a < *b) return -1;
    if (*b < *a) return 1;
    return 0;
}

}  // namespace detail

/// True iff a is at least as good as b everywhere and strictly better once.
inline bool dominates(const ParetoKey &a, const ParetoKey &b) {
    int c[4];
    int da = detail::distance_rank(a.distance), db = detail::distance_rank(b.distance);
    c[0] = da > db ? -1 : (da < db ? 1 : 0);
    c[1] = a.max_stab_weight < b.max_stab_weight ? -1 : (a.max_stab_weight > b.max_stab_weight ? 1 : 0);
    c[2] = a.sigma_nn < b.sigma_nn ? -1 : (b.sigma_nn < a.sigma_nn ? 1 : 0);
    c[3] = detail::cmp_nnn(a.sigma_nnn, b.sigma_nnn);
    bool strict = false;
    for (int v : c) {
        if (v > 0) return false;
        if (v < 0) strict = true;
    }
    return strict;
}

/// Non-dominated set with ties kept. The final contents do not depend on
/// insertion order: an entry is evicted only by a strictly dominating one,
/// and dominance is transitive.
template <typename Payload>
class ParetoFront {
  public:
    struct Entry {
        ParetoKey key;
        Payload payload;
    };

    bool update(const ParetoKey &key, Payload payload) {
        for (const Entry &e : entries_) {
            if (dominates(e.key, key)) return false;
        }
        std::erase_if(entries_, [&](const Entry &e) { return dominates(key, e.key); });
        entries_.push_back({key, std::move(payload)});
        return true;
    }

    const std::vector<Entry> &entries() const { return entries_; }
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

  private:
    std::vector<Entry> entries_;
};

}  // namespace fermenc
