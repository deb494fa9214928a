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
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermenc/lattice.hpp"
#include "fermenc/symplectic.hpp"

namespace fermenc {

/// Majorana monomial (modulo phase) over 2m Majorana operators: bit j < m
/// marks gamma_j, bit m + j marks gamma-bar_j.
class MajoranaWord {
  public:
    MajoranaWord() = default;
    explicit MajoranaWord(int modes) : modes_(modes), bits_(static_cast<size_t>((2 * modes + 63) / 64), 0) {
        if (modes < 1) {
            throw UsageError("MajoranaWord needs at least one mode");
        }
    }

    int modes() const { return modes_; }
    int size() const { return 2 * modes_; }

    bool test(int j) const { return (bits_[static_cast<size_t>(j / 64)] >> (j % 64)) & 1; }
    void flip(int j) {
        check(j);
        bits_[static_cast<size_t>(j / 64)] ^= uint64_t{1} << (j % 64);
    }
    void flip_gamma(int mode) { flip(mode); }
    void flip_gamma_bar(int mode) { flip(modes_ + mode); }

    int popcount() const {
        int c = 0;
        for (uint64_t b : bits_) c += std::popcount(b);
        return c;
    }

    MajoranaWord &operator*=(const MajoranaWord &o) {
        same_size(o);
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= o.bits_[i];
        return *this;
    }

    const std::vector<uint64_t> &bits() const { return bits_; }

    void same_size(const MajoranaWord &o) const {
        if (modes_ != o.modes_) {
            throw UsageError("mismatched Majorana mode counts");
        }
    }

    friend bool operator==(const MajoranaWord &, const MajoranaWord &) = default;

  private:
    void check(int j) const {
        if (j < 0 || j >= 2 * modes_) {
            throw UsageError("Majorana index out of range");
        }
    }

    int modes_ = 0;
    std::vector<uint64_t> bits_;
};

/// Commutation parity of Majorana monomials: a^T (I + J) b over F2, where J is
/// the all-ones matrix, i.e. (a.b) xor (|a||b| mod 2).
inline int majorana_commute_parity(const MajoranaWord &a, const MajoranaWord &b) {
    a.same_size(b);
    int dot = 0;
    for (size_t i = 0; i < a.bits().size(); ++i) {
        dot ^= std::popcount(a.bits()[i] & b.bits()[i]);
    }
    return (dot ^ (a.popcount() * b.popcount())) & 1;
}

enum class GeneratorKind { Vertex, EdgeRight, EdgeUp, EdgeDiagUR, EdgeDiagUL };

/// A vertex or outgoing edge operator of one mode of the unit cell.
struct FermionGeneratorId {
    GeneratorKind kind = GeneratorKind::Vertex;
    int mode = 0;

    bool is_edge() const { return kind != GeneratorKind::Vertex; }
    friend bool operator==(const FermionGeneratorId &, const FermionGeneratorId &) = default;
    friend auto operator<=>(const FermionGeneratorId &, const FermionGeneratorId &) = default;
};

inline std::string generator_name(FermionGeneratorId g) {
    std::string base;
    switch (g.kind) {
        case GeneratorKind::Vertex: base = "vertex"; break;
        case GeneratorKind::EdgeRight: base = "right"; break;
        case GeneratorKind::EdgeUp: base = "up"; break;
        case GeneratorKind::EdgeDiagUR: base = "diag_ur"; break;
        case GeneratorKind::EdgeDiagUL: base = "diag_ul"; break;
    }
    return base + std::to_string(g.mode);
}

inline FermionGeneratorId parse_generator_name(const std::string &name) {
    static const std::array<std::pair<const char *, GeneratorKind>, 5> kinds{{
        {"vertex", GeneratorKind::Vertex},
        {"right", GeneratorKind::EdgeRight},
        {"up", GeneratorKind::EdgeUp},
        {"diag_ur", GeneratorKind::EdgeDiagUR},
        {"diag_ul", GeneratorKind::EdgeDiagUL},
    }};
    for (auto &[prefix, kind] : kinds) {
        std::string p = prefix;
        if (name.size() == p.size() + 1 && name.compare(0, p.size(), p) == 0 && (name.back() == '0' || name.back() == '1')) {
            return {kind, name.back() - '0'};
        }
    }
    throw ParseError("unknown generator name '" + name + "'");
}

/// Displacement on the square site lattice of an edge kind.
inline CellOffset edge_direction(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::EdgeRight: return {1, 0};
        case GeneratorKind::EdgeUp: return {0, 1};
        case GeneratorKind::EdgeDiagUR: return {1, 1};
        case GeneratorKind::EdgeDiagUL: return {-1, 1};
        case GeneratorKind::Vertex: break;
    }
    throw UsageError("vertex has no direction");
}

inline std::vector<GeneratorKind> edge_kinds(EdgeSet e) {
    switch (e) {
        case EdgeSet::Chain: return {GeneratorKind::EdgeRight};
        case EdgeSet::NNSquare: return {GeneratorKind::EdgeRight, GeneratorKind::EdgeUp};
        case EdgeSet::Triangular:
            return {GeneratorKind::EdgeRight, GeneratorKind::EdgeUp, GeneratorKind::EdgeDiagUR};
        case EdgeSet::NNNSquare:
            return {GeneratorKind::EdgeRight, GeneratorKind::EdgeUp, GeneratorKind::EdgeDiagUR,
                    GeneratorKind::EdgeDiagUL};
    }
    return {};
}

/// Search order: vertex, horizontal, vertical, diagonal, second diagonal;
/// all generators of mode 0 before those of mode 1.
inline std::vector<FermionGeneratorId> generator_order(const UnitCellLayout &layout) {
    std::vector<FermionGeneratorId> out;
    for (int m = 0; m < layout.modes_per_cell(); ++m) {
        out.push_back({GeneratorKind::Vertex, m});
        for (GeneratorKind k : edge_kinds(layout.edge_set())) {
            out.push_back({k, m});
        }
    }
    return out;
}

/// A fermionic site of the square lattice. `spin` is only meaningful for the
/// mixed scheme, where both species share cells.
struct Site {
    int x = 0;
    int y = 0;
    int spin = 0;
    friend bool operator==(const Site &, const Site &) = default;
    Site operator+(CellOffset d) const { return {x + d.dx, y + d.dy, spin}; }
};

/// (cell, mode) hosting a site.
struct ModeRef {
    CellOffset cell;
    int mode = 0;
    friend bool operator==(const ModeRef &, const ModeRef &) = default;
};

inline int floor_div2(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

inline Site site_of(const UnitCellLayout &layout, CellOffset cell, int mode) {
    switch (layout.scheme()) {
        case Scheme::TwoGrids: return {cell.dx, cell.dy, 0};
        case Scheme::Mixed: return {cell.dx, cell.dy, mode};
        case Scheme::DoubledHorizontal: return {2 * cell.dx + mode, cell.dy, 0};
        // Lattice vectors (2,0) and (1,1): each row of doubled cells sits one
        // site further right than the row below.
        case Scheme::DoubledOffset: return {2 * cell.dx + cell.dy + mode, cell.dy, 0};
    }
    return {};
}

inline ModeRef locate(const UnitCellLayout &layout, Site s) {
    switch (layout.scheme()) {
        case Scheme::TwoGrids: return {{s.x, s.y}, 0};
        case Scheme::Mixed: return {{s.x, s.y}, s.spin};
        case Scheme::DoubledHorizontal: return {{floor_div2(s.x), s.y}, s.x - 2 * floor_div2(s.x)};
        case Scheme::DoubledOffset: {
            int t = s.x - s.y;
            return {{floor_div2(t), s.y}, t - 2 * floor_div2(t)};
        }
    }
    return {};
}

/// Far endpoint of an edge generator anchored at the origin cell.
inline ModeRef edge_target(const UnitCellLayout &layout, FermionGeneratorId g) {
    Site s = site_of(layout, {}, g.mode) + edge_direction(g.kind);
    return locate(layout, s);
}

namespace detail {

inline constexpr int kMajoranaRadius = 4;
inline constexpr int kMajoranaSide = 2 * kMajoranaRadius + 1;

inline int majorana_mode_index(const UnitCellLayout &layout, ModeRef r) {
    if (std::abs(r.cell.dx) > kMajoranaRadius || std::abs(r.cell.dy) > kMajoranaRadius) {
        throw UsageError("generator offset outside the Majorana frame");
    }
    int cell = (r.cell.dy + kMajoranaRadius) * kMajoranaSide + (r.cell.dx + kMajoranaRadius);
    return cell * layout.modes_per_cell() + r.mode;
}

}  // namespace detail

/// Majorana word of a generator anchored at `anchor`, over a 9x9-cell frame.
/// Vertex = gamma_i gammabar_i, edge = gamma_i gamma_j.
inline MajoranaWord generator_majorana(const UnitCellLayout &layout, FermionGeneratorId g, CellOffset anchor) {
    MajoranaWord w(detail::kMajoranaSide * detail::kMajoranaSide * layout.modes_per_cell());
    int i = detail::majorana_mode_index(layout, {anchor, g.mode});
    if (!g.is_edge()) {
        w.flip_gamma(i);
        w.flip_gamma_bar(i);
        return w;
    }
    ModeRef t = edge_target(layout, g);
    int j = detail::majorana_mode_index(layout, {anchor + t.cell, t.mode});
    w.flip_gamma(i);
    w.flip_gamma(j);
    return w;
}

/// Commutation parity the fermionic algebra demands between generator `a`
/// anchored at `ka` and generator `b` anchored at `kb`.
inline int edge_vertex_required_parity(const UnitCellLayout &layout, FermionGeneratorId a, CellOffset ka,
                                       FermionGeneratorId b, CellOffset kb) {
    return majorana_commute_parity(generator_majorana(layout, a, ka), generator_majorana(layout, b, kb));
}

/// required(a, b, s): parity between a at the origin and b shifted by s, for
/// all |s| <= 2.
class RequiredParityTable {
  public:
    explicit RequiredParityTable(const UnitCellLayout &layout) : gens_(generator_order(layout)) {
        size_t n = gens_.size();
        table_.assign(n * n * 25, 0);
        for (size_t a = 0; a < n; ++a) {
            MajoranaWord ma = generator_majorana(layout, gens_[a], {});
            for (size_t b = 0; b < n; ++b) {
                for (CellOffset s : all_window_shifts()) {
                    MajoranaWord mb = generator_majorana(layout, gens_[b], s);
                    table_[(a * n + b) * 25 + static_cast<size_t>(shift_index(s))] =
                        static_cast<uint8_t>(majorana_commute_parity(ma, mb));
                }
            }
        }
    }

    int operator()(size_t a, size_t b, CellOffset s) const {
        return table_[(a * gens_.size() + b) * 25 + static_cast<size_t>(shift_index(s))];
    }

    const std::vector<FermionGeneratorId> &generators() const { return gens_; }

  private:
    std::vector<FermionGeneratorId> gens_;
    std::vector<uint8_t> table_;
};

/// Fermi-Hubbard parameters: NN hopping t, NNN hopping t', on-site U.
struct HamiltonianSpec {
    double t = 1.0;
    double t_prime = 0.0;
    double U = 4.0;

    bool has_nnn() const { return t_prime != 0.0; }
};

enum class TermKind { Hopping, OnSite };

/// One distinct Pauli-level logical term of the Hamiltonian.
///
/// A hopping between site j (of `mode`, at the origin cell) and k = j + `direction`
/// expands into V_k E_jk and V_j E_jk; `endpoint` selects which vertex
/// multiplies the edge (0 -> V_j, 1 -> V_k). On-site terms are V_up V_down of
/// the site hosted by `mode`.
struct TermDescriptor {
    TermKind kind = TermKind::Hopping;
    int mode = 0;
    GeneratorKind direction = GeneratorKind::EdgeRight;
    int endpoint = 0;
    bool next_nearest = false;

    friend bool operator==(const TermDescriptor &, const TermDescriptor &) = default;
};

inline std::string term_name(const TermDescriptor &t) {
    if (t.kind == TermKind::OnSite) {
        return "onsite" + std::to_string(t.mode);
    }
    FermionGeneratorId g{t.direction, t.mode};
    return "hop_" + generator_name(g) + (t.endpoint == 0 ? "_Vj" : "_Vk");
}

inline std::vector<GeneratorKind> nn_hopping_directions(EdgeSet e) {
    if (e == EdgeSet::Chain) return {GeneratorKind::EdgeRight};
    return {GeneratorKind::EdgeRight, GeneratorKind::EdgeUp};
}

inline std::vector<GeneratorKind> nnn_hopping_directions(EdgeSet e) {
    if (e == EdgeSet::Chain) return {};
    return {GeneratorKind::EdgeDiagUR, GeneratorKind::EdgeDiagUL};
}

/// Number of distinct sites hosted per unit cell (per spin species).
inline int sites_per_cell(const UnitCellLayout &layout) {
    return layout.scheme() == Scheme::DoubledHorizontal || layout.scheme() == Scheme::DoubledOffset ? 2 : 1;
}

/// Distinct logical terms per unit cell: two Pauli terms per hopping direction
/// and hopping mode, plus one on-site term per site.
inline std::vector<TermDescriptor> enumerate_hamiltonian_terms(const HamiltonianSpec &spec,
                                                               const UnitCellLayout &layout) {
    std::vector<TermDescriptor> out;
    auto add_hops = [&](const std::vector<GeneratorKind> &dirs, bool nnn) {
        for (int m = 0; m < layout.modes_per_cell(); ++m) {
            for (GeneratorKind d : dirs) {
                out.push_back({TermKind::Hopping, m, d, 0, nnn});
                out.push_back({TermKind::Hopping, m, d, 1, nnn});
            }
        }
    };
    add_hops(nn_hopping_directions(layout.edge_set()), false);
    if (spec.has_nnn()) {
        add_hops(nnn_hopping_directions(layout.edge_set()), true);
    }
    for (int s = 0; s < sites_per_cell(layout); ++s) {
        out.push_back({TermKind::OnSite, s, GeneratorKind::Vertex, 0, false});
    }
    return out;
}

}  // namespace fermenc
