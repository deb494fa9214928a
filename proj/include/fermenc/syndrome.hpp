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

#include <array>
#include <cstdint>

#include "fermenc/symplectic.hpp"

namespace fermenc {

/// Fixed 256-bit parity vector, one bit per check row.
struct Syndrome {
    static constexpr int kBits = 256;
    std::array<uint64_t, 4> w{};

    void flip(int i) { w[static_cast<size_t>(i >> 6)] ^= uint64_t{1} << (i & 63); }
    void set(int i, bool v) {
        uint64_t bit = uint64_t{1} << (i & 63);
        auto &word = w[static_cast<size_t>(i >> 6)];
        word = v ? (word | bit) : (word & ~bit);
    }
    bool test(int i) const { return (w[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1; }
    bool none() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }

    Syndrome &operator^=(const Syndrome &o) {
        w[0] ^= o.w[0];
        w[1] ^= o.w[1];
        w[2] ^= o.w[2];
        w[3] ^= o.w[3];
        return *this;
    }
    friend Syndrome operator^(Syndrome a, const Syndrome &b) { return a ^= b; }
    friend bool operator==(const Syndrome &, const Syndrome &) = default;
};

/// Per-slot syndrome contributions of the three letters against a fixed list
/// of check words: row r of letter L at slot s is the commutation parity of
/// L_s with check r. Index letters as 0 = X, 1 = Y, 2 = Z.
class SyndromeTable {
  public:
    SyndromeTable() = default;
    explicit SyndromeTable(int n_slots) : n_slots_(n_slots), rows_(0) {}

    void add_check(const PauliWord &c) {
        if (rows_ >= Syndrome::kBits) {
            throw UsageError("too many check rows for a 256-bit syndrome");
        }
        for (int s = 0; s < n_slots_; ++s) {
            bool cx = (c.x >> s) & 1, cz = (c.z >> s) & 1;
            // X anticommutes with a Z component, Z with an X component.
            table_[static_cast<size_t>(s)][0].set(rows_, cz);
            table_[static_cast<size_t>(s)][1].set(rows_, cx ^ cz);
            table_[static_cast<size_t>(s)][2].set(rows_, cx);
        }
        ++rows_;
    }

    const Syndrome &at(int slot, int letter) const { return table_[static_cast<size_t>(slot)][static_cast<size_t>(letter)]; }

    Syndrome of(const PauliWord &e) const {
        Syndrome out;
        uint64_t s = e.support();
        while (s != 0) {
            int q = std::countr_zero(s);
            s &= s - 1;
            int l = ((e.x >> q) & 1) ? (((e.z >> q) & 1) ? 1 : 0) : 2;
            out ^= at(q, l);
        }
        return out;
    }

    int rows() const { return rows_; }
    int n_slots() const { return n_slots_; }

  private:
    int n_slots_ = 0;
    int rows_ = 0;
    std::array<std::array<Syndrome, 3>, kMaxSlots> table_{};
};

inline constexpr char kLetters[3] = {'X', 'Y', 'Z'};

}  // namespace fermenc
