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
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermenc/symplectic.hpp"

namespace fermenc {

/// How fermionic modes are placed into unit cells.
enum class Scheme {
    TwoGrids,           ///< one mode per cell; the spin-down grid is an identical copy
    Mixed,              ///< both spins of one site share a cell
    DoubledHorizontal,  ///< two horizontally adjacent sites (same spin) per cell
    DoubledOffset,      ///< as DoubledHorizontal, rows shifted by one site
};

/// Which edge operators are defined directly.
enum class EdgeSet {
    Chain,       ///< horizontal edges only (decoupled 1D chains)
    NNSquare,    ///< horizontal + vertical
    Triangular,  ///< + one diagonal
    NNNSquare,   ///< + both diagonals
};

inline std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::TwoGrids: return "two-grids";
        case Scheme::Mixed: return "mixed";
        case Scheme::DoubledHorizontal: return "doubled-h";
        case Scheme::DoubledOffset: return "doubled-offset";
    }
    return "?";
}

inline std::string_view to_string(EdgeSet e) {
    switch (e) {
        case EdgeSet::Chain: return "chain";
        case EdgeSet::NNSquare: return "nn-square";
        case EdgeSet::Triangular: return "triangular";
        case EdgeSet::NNNSquare: return "nnn-square";
    }
    return "?";
}

inline Scheme parse_scheme(std::string_view s) {
    if (s == "two-grids") return Scheme::TwoGrids;
    if (s == "mixed") return Scheme::Mixed;
    if (s == "doubled-h") return Scheme::DoubledHorizontal;
    if (s == "doubled-offset") return Scheme::DoubledOffset;
    throw ParseError("unknown scheme '" + std::string(s) + "'");
}

inline EdgeSet parse_edge_set(std::string_view s) {
    if (s == "chain") return EdgeSet::Chain;
    if (s == "nn-square") return EdgeSet::NNSquare;
    if (s == "triangular") return EdgeSet::Triangular;
    if (s == "nnn-square") return EdgeSet::NNNSquare;
    throw ParseError("unknown edge set '" + std::string(s) + "'");
}

/// A displacement measured in unit cells.
struct CellOffset {
    int dx = 0;
    int dy = 0;

    friend bool operator==(const CellOffset &, const CellOffset &) = default;
    friend auto operator<=>(const CellOffset &, const CellOffset &) = default;
    CellOffset operator+(CellOffset o) const { return {dx + o.dx, dy + o.dy}; }
    CellOffset operator-(CellOffset o) const { return {dx - o.dx, dy - o.dy}; }
    CellOffset operator-() const { return {-dx, -dy}; }
};

/// Cell position inside the 3x3 window; (1,1) is the central cell.
struct WindowCell {
    int x = 0;
    int y = 0;
    friend bool operator==(const WindowCell &, const WindowCell &) = default;
};

inline constexpr int kWindowSide = 3;
inline constexpr int kWindowCells = 9;
inline constexpr WindowCell kCentralCell{1, 1};

inline bool in_window(int x, int y) { return x >= 0 && x < kWindowSide && y >= 0 && y < kWindowSide; }

class UnitCellLayout {
  public:
    UnitCellLayout() = default;
    UnitCellLayout(Scheme scheme, EdgeSet edge_set, int qubits_per_cell)
        : scheme_(scheme), edge_set_(edge_set), qubits_per_cell_(qubits_per_cell) {
        if (qubits_per_cell < 1 || qubits_per_cell * kWindowCells > kMaxSlots) {
            throw UsageError("qubits_per_cell must satisfy 1 <= q and 9*q <= 64, got " + std::to_string(qubits_per_cell));
        }
    }

    Scheme scheme() const { return scheme_; }
    EdgeSet edge_set() const { return edge_set_; }
    int qubits_per_cell() const { return qubits_per_cell_; }
    int modes_per_cell() const { return scheme_ == Scheme::TwoGrids ? 1 : 2; }
    int window_slots() const { return qubits_per_cell_ * kWindowCells; }

    /// True when the two spin species live on separate, identical qubit grids.
    bool spin_copies() const { return scheme_ != Scheme::Mixed; }

    friend bool operator==(const UnitCellLayout &, const UnitCellLayout &) = default;

  private:
    Scheme scheme_ = Scheme::TwoGrids;
    EdgeSet edge_set_ = EdgeSet::NNSquare;
    int qubits_per_cell_ = 1;
};

/// Position of a window cell in the snake order: row 0 left-to-right, row 1
/// right-to-left, row 2 left-to-right.
inline int snake_index(int x, int y) { return y * kWindowSide + ((y & 1) ? (kWindowSide - 1 - x) : x); }

inline int cell_base_slot(int x, int y, int qubits_per_cell) { return snake_index(x, y) * qubits_per_cell; }

inline int slot_of(WindowCell cell, int local, const UnitCellLayout &layout) {
    if (!in_window(cell.x, cell.y)) {
        throw UsageError("cell (" + std::to_string(cell.x) + "," + std::to_string(cell.y) + ") outside the 3x3 window");
    }
    if (local < 0 || local >= layout.qubits_per_cell()) {
        throw UsageError("local index " + std::to_string(local) + " outside the unit cell");
    }
    return cell_base_slot(cell.x, cell.y, layout.qubits_per_cell()) + local;
}

struct SlotLocation {
    WindowCell cell;
    int local = 0;
};

inline SlotLocation location_of(int slot, const UnitCellLayout &layout) {
    if (slot < 0 || slot >= layout.window_slots()) {
        throw UsageError("slot " + std::to_string(slot) + " outside the window");
    }
    int q = layout.qubits_per_cell();
    int idx = slot / q;
    int y = idx / kWindowSide;
    int r = idx % kWindowSide;
    int x = (y & 1) ? (kWindowSide - 1 - r) : r;
    return {{x, y}, slot % q};
}

/// Slot mask of one window cell.
inline uint64_t cell_mask(WindowCell cell, const UnitCellLayout &layout) {
    return low_bits(layout.qubits_per_cell()) << cell_base_slot(cell.x, cell.y, layout.qubits_per_cell());
}

/// 9-bit set of window cells, bit (y*3 + x).
using CellSet = uint16_t;

inline CellSet support_cells(const PauliWord &a, const UnitCellLayout &layout) {
    CellSet out = 0;
    uint64_t s = a.support();
    int q = layout.qubits_per_cell();
    for (int y = 0; y < kWindowSide; ++y) {
        for (int x = 0; x < kWindowSide; ++x) {
            if ((s >> cell_base_slot(x, y, q)) & low_bits(q)) {
                out |= CellSet(1u << (y * kWindowSide + x));
            }
        }
    }
    return out;
}

namespace detail {

/// Moves each cell's bits by `shift`; cells leaving the window are dropped and
/// reported through `clipped`.
inline void translate_masks(uint64_t &x, uint64_t &z, CellOffset shift, int q, bool &clipped) {
    uint64_t nx = 0, nz = 0;
    uint64_t m = low_bits(q);
    clipped = false;
    for (int y = 0; y < kWindowSide; ++y) {
        for (int cx = 0; cx < kWindowSide; ++cx) {
            int base = cell_base_slot(cx, y, q);
            uint64_t bx = (x >> base) & m;
            uint64_t bz = (z >> base) & m;
            if ((bx | bz) == 0) {
                continue;
            }
            int tx = cx + shift.dx, ty = y + shift.dy;
            if (!in_window(tx, ty)) {
                clipped = true;
                continue;
            }
            int tb = cell_base_slot(tx, ty, q);
            nx |= bx << tb;
            nz |= bz << tb;
        }
    }
    x = nx;
    z = nz;
}

}  // namespace detail

/// Translates a window word by whole cells; nullopt when any supported slot
/// would leave the window.
inline std::optional<PauliWord> translate_word(const PauliWord &a, CellOffset shift, const UnitCellLayout &layout) {
    if (a.n_slots != layout.window_slots()) {
        throw UsageError("word does not match the layout's window");
    }
    uint64_t x = a.x, z = a.z;
    bool clipped = false;
    detail::translate_masks(x, z, shift, layout.qubits_per_cell(), clipped);
    if (clipped) {
        return std::nullopt;
    }
    return PauliWord{x, z, a.n_slots};
}

/// Translation that keeps only the part still inside the window. Commutation
/// against any word supported in the window is unaffected by the clipping.
inline PauliWord translate_clipped(const PauliWord &a, CellOffset shift, const UnitCellLayout &layout) {
    uint64_t x = a.x, z = a.z;
    bool clipped = false;
    detail::translate_masks(x, z, shift, layout.qubits_per_cell(), clipped);
    return PauliWord{x, z, a.n_slots};
}

/// Every shift with |dx|,|dy| <= 2 that makes the shifted `b` cells intersect `a`.
inline std::vector<CellOffset> overlapping_shifts(CellSet a_cells, CellSet b_cells) {
    std::vector<CellOffset> out;
    for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
            bool hit = false;
            for (int y = 0; y < kWindowSide && !hit; ++y) {
                for (int x = 0; x < kWindowSide && !hit; ++x) {
                    if (!((b_cells >> (y * kWindowSide + x)) & 1)) {
                        continue;
                    }
                    int tx = x + dx, ty = y + dy;
                    if (in_window(tx, ty) && ((a_cells >> (ty * kWindowSide + tx)) & 1)) {
                        hit = true;
                    }
                }
            }
            if (hit) {
                out.push_back({dx, dy});
            }
        }
    }
    return out;
}

/// Every shift in the 5x5 block |dx|,|dy| <= 2.
inline const std::vector<CellOffset> &all_window_shifts() {
    static const std::vector<CellOffset> shifts = [] {
        std::vector<CellOffset> v;
        for (int dy = -2; dy <= 2; ++dy) {
            for (int dx = -2; dx <= 2; ++dx) {
                v.push_back({dx, dy});
            }
        }
        return v;
    }();
    return shifts;
}

inline int shift_index(CellOffset s) { return (s.dy + 2) * 5 + (s.dx + 2); }

/// A Pauli operator on the infinite lattice with support inside a 7x7 block
/// of cells centred on the origin. Used where products of translated window
/// words can spill past the 3x3 window (loops, hopping terms).
class LatticeWord {
  public:
    static constexpr int kRadius = 3;
    static constexpr int kSide = 2 * kRadius + 1;
    static constexpr int kCells = kSide * kSide;

    LatticeWord() = default;
    explicit LatticeWord(int qubits_per_cell) : q_(qubits_per_cell) {}

    /// Window word placed so that window cell (1,1) lands on `anchor`.
    static LatticeWord from_window(const PauliWord &w, const UnitCellLayout &layout, CellOffset anchor = {}) {
        LatticeWord out(layout.qubits_per_cell());
        int q = layout.qubits_per_cell();
        for (int y = 0; y < kWindowSide; ++y) {
            for (int x = 0; x < kWindowSide; ++x) {
                int base = cell_base_slot(x, y, q);
                auto bx = static_cast<uint8_t>((w.x >> base) & low_bits(q));
                auto bz = static_cast<uint8_t>((w.z >> base) & low_bits(q));
                if ((bx | bz) == 0) {
                    continue;
                }
                CellOffset c{x - 1 + anchor.dx, y - 1 + anchor.dy};
                if (!in_frame(c)) {
                    throw UsageError("translated word leaves the lattice frame");
                }
                out.x_[index(c)] = bx;
                out.z_[index(c)] = bz;
            }
        }
        return out;
    }

    /// Places the block cell `center` at the window centre; nullopt if the
    /// support does not fit in the 3x3 window that way.
    std::optional<PauliWord> to_window(const UnitCellLayout &layout, CellOffset center = {}) const {
        int q = layout.qubits_per_cell();
        uint64_t wx = 0, wz = 0;
        for (int i = 0; i < kCells; ++i) {
            if ((x_[i] | z_[i]) == 0) {
                continue;
            }
            CellOffset c = cell(i);
            int wxc = c.dx - center.dx + 1, wyc = c.dy - center.dy + 1;
            if (!in_window(wxc, wyc)) {
                return std::nullopt;
            }
            int base = cell_base_slot(wxc, wyc, q);
            wx |= uint64_t{x_[i]} << base;
            wz |= uint64_t{z_[i]} << base;
        }
        return PauliWord{wx, wz, layout.window_slots()};
    }

    std::optional<LatticeWord> translated(CellOffset shift) const {
        LatticeWord out(q_);
        for (int i = 0; i < kCells; ++i) {
            if ((x_[i] | z_[i]) == 0) {
                continue;
            }
            CellOffset c = cell(i) + shift;
            if (!in_frame(c)) {
                return std::nullopt;
            }
            out.x_[index(c)] = x_[i];
            out.z_[index(c)] = z_[i];
        }
        return out;
    }

    LatticeWord &operator*=(const LatticeWord &o) {
        for (int i = 0; i < kCells; ++i) {
            x_[i] ^= o.x_[i];
            z_[i] ^= o.z_[i];
        }
        return *this;
    }

    friend LatticeWord operator*(LatticeWord a, const LatticeWord &b) { return a *= b; }

    int weight() const {
        int w = 0;
        for (int i = 0; i < kCells; ++i) {
            w += std::popcount(static_cast<unsigned>(x_[i] | z_[i]));
        }
        return w;
    }

    bool is_identity() const { return weight() == 0; }

    friend int commute_parity(const LatticeWord &a, const LatticeWord &b) {
        int p = 0;
        for (int i = 0; i < kCells; ++i) {
            p ^= std::popcount(static_cast<unsigned>((a.x_[i] & b.z_[i]) ^ (a.z_[i] & b.x_[i])));
        }
        return p & 1;
    }

    /// Letter at (cell, local) as one of I, X, Y, Z.
    char letter(CellOffset c, int local) const {
        if (!in_frame(c)) {
            return 'I';
        }
        bool bx = (x_[index(c)] >> local) & 1;
        bool bz = (z_[index(c)] >> local) & 1;
        return bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
    }

    void set(CellOffset c, int local, char letter) {
        if (!in_frame(c)) {
            throw UsageError("cell outside the lattice frame");
        }
        auto bit = static_cast<uint8_t>(1u << local);
        int i = index(c);
        x_[i] = static_cast<uint8_t>(x_[i] & ~bit);
        z_[i] = static_cast<uint8_t>(z_[i] & ~bit);
        if (letter == 'X' || letter == 'Y') x_[i] |= bit;
        if (letter == 'Z' || letter == 'Y') z_[i] |= bit;
    }

    /// Supported (cell, local) pairs, cells in row-major frame order.
    std::vector<std::pair<CellOffset, int>> support() const {
        std::vector<std::pair<CellOffset, int>> out;
        for (int i = 0; i < kCells; ++i) {
            unsigned s = x_[i] | z_[i];
            for (int l = 0; s != 0; ++l, s >>= 1) {
                if (s & 1) {
                    out.push_back({cell(i), l});
                }
            }
        }
        return out;
    }

    uint8_t cell_x(CellOffset c) const { return in_frame(c) ? x_[index(c)] : 0; }
    uint8_t cell_z(CellOffset c) const { return in_frame(c) ? z_[index(c)] : 0; }
    void set_cell(CellOffset c, uint8_t bx, uint8_t bz) {
        x_[index(c)] = bx;
        z_[index(c)] = bz;
    }

    int qubits_per_cell() const { return q_; }

    friend bool operator==(const LatticeWord &, const LatticeWord &) = default;

    static bool in_frame(CellOffset c) {
        return c.dx >= -kRadius && c.dx <= kRadius && c.dy >= -kRadius && c.dy <= kRadius;
    }

  private:
    static int index(CellOffset c) { return (c.dy + kRadius) * kSide + (c.dx + kRadius); }
    static CellOffset cell(int i) { return {i % kSide - kRadius, i / kSide - kRadius}; }

    int q_ = 1;
    std::array<uint8_t, kCells> x_{};
    std::array<uint8_t, kCells> z_{};
};

/// Smallest-area placement of `w` into the window: keeps `preferred` at the
/// window centre when that fits, otherwise shifts the bounding box inside.
inline std::optional<PauliWord> fit_to_window(const LatticeWord &w, const UnitCellLayout &layout,
                                              CellOffset preferred = {}) {
    if (auto direct = w.to_window(layout, preferred)) {
        return direct;
    }
    auto cells = w.support();
    if (cells.empty()) {
        return PauliWord::identity(layout.window_slots());
    }
    int minx = cells.front().first.dx, maxx = minx, miny = cells.front().first.dy, maxy = miny;
    for (auto &[c, l] : cells) {
        minx = std::min(minx, c.dx);
        maxx = std::max(maxx, c.dx);
        miny = std::min(miny, c.dy);
        maxy = std::max(maxy, c.dy);
    }
    if (maxx - minx >= kWindowSide || maxy - miny >= kWindowSide) {
        return std::nullopt;
    }
    return w.to_window(layout, {minx + 1, miny + 1});
}

}  // namespace fermenc
