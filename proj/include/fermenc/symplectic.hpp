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
#include <bit>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fermenc {

/// Hard cap on the number of qubit slots a packed word can address.
inline constexpr int kMaxSlots = 64;

/// Raised when a caller violates an operation's preconditions.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when text cannot be parsed into a domain object.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr uint64_t low_bits(int n) {
    return n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
}

/// A Pauli string modulo phase, packed as an X mask and a Z mask.
///
/// Slot q carries X when only bit q of `x` is set, Z when only bit q of `z` is
/// set, and Y when both are set. Bits at or above `n_slots` are always zero.
struct PauliWord {
    uint64_t x = 0;
    uint64_t z = 0;
    int n_slots = 1;

    static PauliWord identity(int n_slots) {
        check_slots(n_slots);
        return PauliWord{0, 0, n_slots};
    }

    static PauliWord from_masks(uint64_t x, uint64_t z, int n_slots) {
        check_slots(n_slots);
        if (((x | z) & ~low_bits(n_slots)) != 0) {
            throw UsageError("PauliWord masks have bits beyond n_slots");
        }
        return PauliWord{x, z, n_slots};
    }

    /// Single-slot word; letter is one of I, X, Y, Z.
    static PauliWord single(int n_slots, int slot, char letter) {
        PauliWord w = identity(n_slots);
        w.set(slot, letter);
        return w;
    }

    char letter(int slot) const {
        bool bx = (x >> slot) & 1;
        bool bz = (z >> slot) & 1;
        return bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
    }

    void set(int slot, char letter) {
        if (slot < 0 || slot >= n_slots) {
            throw UsageError("slot " + std::to_string(slot) + " outside 0.." + std::to_string(n_slots - 1));
        }
        uint64_t bit = uint64_t{1} << slot;
        x &= ~bit;
        z &= ~bit;
        switch (letter) {
            case 'I': break;
            case 'X': x |= bit; break;
            case 'Y': x |= bit; z |= bit; break;
            case 'Z': z |= bit; break;
            default: throw ParseError(std::string("invalid Pauli letter '") + letter + "'");
        }
    }

    uint64_t support() const { return x | z; }
    bool is_identity() const { return (x | z) == 0; }

    friend bool operator==(const PauliWord &, const PauliWord &) = default;
    friend auto operator<=>(const PauliWord &, const PauliWord &) = default;

  private:
    static void check_slots(int n) {
        if (n < 1 || n > kMaxSlots) {
            throw UsageError("n_slots must be in 1..64, got " + std::to_string(n));
        }
    }
};

inline void require_same_slots(const PauliWord &a, const PauliWord &b) {
    if (a.n_slots != b.n_slots) {
        throw UsageError(
            "mismatched n_slots (" + std::to_string(a.n_slots) + " vs " + std::to_string(b.n_slots) + ")");
    }
}

/// Symplectic form: 0 when the words commute, 1 when they anticommute.
inline int commute_parity(const PauliWord &a, const PauliWord &b) {
    require_same_slots(a, b);
    return std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1;
}

/// Unchecked variant for hot loops where slot counts are known to agree.
inline int commute_parity_raw(uint64_t ax, uint64_t az, uint64_t bx, uint64_t bz) {
    return std::popcount((ax & bz) ^ (az & bx)) & 1;
}

/// Group product modulo phase.
inline PauliWord multiply(const PauliWord &a, const PauliWord &b) {
    require_same_slots(a, b);
    return PauliWord{a.x ^ b.x, a.z ^ b.z, a.n_slots};
}

inline int weight(const PauliWord &a) { return std::popcount(a.x | a.z); }

/// Parses either the dense form ("XIZ", slot 0 first) or the sparse form
/// ("X0 Z5 Y17"). Dense text shorter than n_slots is padded with identity.
inline PauliWord parse_pauli(std::string_view text, int n_slots) {
    PauliWord w = PauliWord::identity(n_slots);
    bool sparse = false;
    for (char c : text) {
        if (std::isdigit(static_cast<unsigned char>(c)) || std::isspace(static_cast<unsigned char>(c))) {
            sparse = true;
            break;
        }
    }
    if (!sparse) {
        if (static_cast<int>(text.size()) > n_slots) {
            throw ParseError("dense Pauli text longer than n_slots");
        }
        for (size_t i = 0; i < text.size(); ++i) {
            w.set(static_cast<int>(i), static_cast<char>(std::toupper(static_cast<unsigned char>(text[i]))));
        }
        return w;
    }
    size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
        if (letter != 'X' && letter != 'Y' && letter != 'Z' && letter != 'I') {
            throw ParseError(std::string("invalid Pauli letter '") + text[i] + "'");
        }
        ++i;
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (start == i) {
            throw ParseError("sparse Pauli token without slot index");
        }
        int slot = std::stoi(std::string(text.substr(start, i - start)));
        if (slot >= n_slots) {
            throw ParseError("slot index " + std::to_string(slot) + " >= n_slots " + std::to_string(n_slots));
        }
        if (w.letter(slot) != 'I') {
            throw ParseError("slot " + std::to_string(slot) + " given twice");
        }
        w.set(slot, letter);
    }
    return w;
}

/// Dense form, one letter per slot.
inline std::string format_pauli(const PauliWord &a) {
    std::string out(static_cast<size_t>(a.n_slots), 'I');
    for (int q = 0; q < a.n_slots; ++q) {
        out[static_cast<size_t>(q)] = a.letter(q);
    }
    return out;
}

/// Row-reduced echelon basis of a subspace of F2^(2n), rows being x||z.
///
/// Bit order: x bits 0..63 come before z bits 0..63. Every row's pivot is its
/// lowest set bit, and no other row has that bit set.
class SymplecticBasis {
  public:
    struct Row {
        uint64_t x = 0;
        uint64_t z = 0;
        int pivot = 0;
    };

    /// Inserts v; returns false iff v already lies in the span.
    bool insert(const PauliWord &v) {
        check_slots(v);
        uint64_t x = v.x, z = v.z;
        reduce(x, z);
        if ((x | z) == 0) {
            return false;
        }
        int p = lowest_bit(x, z);
        for (Row &r : rows_) {
            if (has_bit(r.x, r.z, p)) {
                r.x ^= x;
                r.z ^= z;
            }
        }
        Row row{x, z, p};
        auto it = std::lower_bound(rows_.begin(), rows_.end(), p, [](const Row &r, int q) { return r.pivot < q; });
        rows_.insert(it, row);
        return true;
    }

    bool contains(const PauliWord &v) const {
        uint64_t x = v.x, z = v.z;
        reduce(x, z);
        return (x | z) == 0;
    }

    bool contains_raw(uint64_t x, uint64_t z) const {
        reduce(x, z);
        return (x | z) == 0;
    }

    size_t rank() const { return rows_.size(); }
    const std::vector<Row> &rows() const { return rows_; }
    int n_slots() const { return n_slots_; }

    std::vector<int> pivots() const {
        std::vector<int> out;
        out.reserve(rows_.size());
        for (const Row &r : rows_) {
            out.push_back(r.pivot);
        }
        return out;
    }

  private:
    static bool has_bit(uint64_t x, uint64_t z, int p) { return p < 64 ? ((x >> p) & 1) : ((z >> (p - 64)) & 1); }

    static int lowest_bit(uint64_t x, uint64_t z) {
        return x != 0 ? std::countr_zero(x) : 64 + std::countr_zero(z);
    }

    void reduce(uint64_t &x, uint64_t &z) const {
        for (const Row &r : rows_) {
            if (has_bit(x, z, r.pivot)) {
                x ^= r.x;
                z ^= r.z;
            }
        }
    }

    void check_slots(const PauliWord &v) {
        if (n_slots_ == 0) {
            n_slots_ = v.n_slots;
        } else if (n_slots_ != v.n_slots) {
            throw UsageError("basis n_slots mismatch");
        }
    }

    std::vector<Row> rows_;
    int n_slots_ = 0;
};

}  // namespace fermenc
