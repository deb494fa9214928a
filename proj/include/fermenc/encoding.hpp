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

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fermenc/fermion.hpp"
#include "fermenc/lattice.hpp"
#include "fermenc/symplectic.hpp"

namespace fermenc {

/// Raised for encodings that cannot support the requested operation.
struct EncodingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-negative exact fraction, always stored reduced.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    static Rational of(int64_t n, int64_t d) {
        if (d == 0) throw UsageError("zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g == 0) g = 1;
        return {n / g, d / g};
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.num == b.num && a.den == b.den; }
    friend auto operator<=>(const Rational &a, const Rational &b) { return a.num * b.den <=> b.num * a.den; }
};

/// Outcome of a distance scan: exact when a logical of weight `value` was
/// found, otherwise a lower bound w_max + 1.
struct DistanceResult {
    bool exact = false;
    int value = 1;

    static DistanceResult Exact(int d) { return {true, d}; }
    static DistanceResult LowerBound(int d) { return {false, d}; }

    std::string str() const { return (exact ? "Exact " : "LowerBound ") + std::to_string(value); }
    friend bool operator==(const DistanceResult &, const DistanceResult &) = default;
};

struct TermWeight {
    TermDescriptor term;
    int weight = 0;
};

/// Quality metrics of an encoding. `sigma_nnn` is absent when diagonal
/// hoppings cannot be built from the layout's edges.
struct Metrics {
    DistanceResult distance;
    int max_stab_weight = 0;
    Rational sigma_nn;
    std::optional<Rational> sigma_nnn;
    Rational qubit_ratio;
    std::vector<TermWeight> terms;

    friend bool operator==(const Metrics &a, const Metrics &b) {
        return a.distance == b.distance && a.max_stab_weight == b.max_stab_weight && a.sigma_nn == b.sigma_nn &&
               a.sigma_nnn == b.sigma_nnn && a.qubit_ratio == b.qubit_ratio;
    }
};

/// A translation-invariant fermion-to-qubit encoding: one Pauli image per
/// generator, anchored so that window cell (1,1) is the generator's own cell.
struct EncodingCandidate {
    UnitCellLayout layout;
    std::map<FermionGeneratorId, PauliWord> generators;
    std::vector<PauliWord> stabilizers;
    std::optional<Metrics> metrics;

    explicit EncodingCandidate(UnitCellLayout l = {}) : layout(l) {}

    const PauliWord &image(FermionGeneratorId g) const {
        auto it = generators.find(g);
        if (it == generators.end()) {
            throw EncodingError("generator " + generator_name(g) + " is not assigned");
        }
        return it->second;
    }

    /// Generator image translated so that its anchor sits at `anchor`.
    LatticeWord image_at(FermionGeneratorId g, CellOffset anchor) const {
        return LatticeWord::from_window(image(g), layout, anchor);
    }

    /// Same generator map (stabilizers and metrics ignored).
    bool same_images(const EncodingCandidate &o) const { return layout == o.layout && generators == o.generators; }
};

// ---------------------------------------------------------------------------
// Operator-level constructions over sites.

/// Generator and anchor realising the edge between two neighbouring sites,
/// if the layout defines it directly (in either orientation).
inline std::optional<std::pair<FermionGeneratorId, CellOffset>> edge_between(const UnitCellLayout &layout, Site u,
                                                                              Site v) {
    if (u.spin != v.spin) {
        return std::nullopt;
    }
    for (GeneratorKind k : edge_kinds(layout.edge_set())) {
        CellOffset d = edge_direction(k);
        if (v == u + d) {
            ModeRef r = locate(layout, u);
            return std::make_pair(FermionGeneratorId{k, r.mode}, r.cell);
        }
        if (u == v + d) {
            ModeRef r = locate(layout, v);
            return std::make_pair(FermionGeneratorId{k, r.mode}, r.cell);
        }
    }
    return std::nullopt;
}

inline LatticeWord vertex_image(const EncodingCandidate &enc, Site s) {
    ModeRef r = locate(enc.layout, s);
    return enc.image_at({GeneratorKind::Vertex, r.mode}, r.cell);
}

/// Product of edge images along a path of sites (phase dropped). A path of a
/// single edge returns that edge's image.
inline LatticeWord composite_edge(const std::vector<Site> &path, const EncodingCandidate &enc) {
    if (path.size() < 2) {
        throw UsageError("a path needs at least two sites");
    }
    LatticeWord out(enc.layout.qubits_per_cell());
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        auto e = edge_between(enc.layout, path[i], path[i + 1]);
        if (!e) {
            throw EncodingError("no edge between consecutive path sites (" + std::to_string(path[i].x) + "," +
                                std::to_string(path[i].y) + ") and (" + std::to_string(path[i + 1].x) + "," +
                                std::to_string(path[i + 1].y) + ")");
        }
        out *= enc.image_at(e->first, e->second);
    }
    return out;
}

/// Product of the edge images around a closed cycle; first and last sites
/// must coincide.
inline LatticeWord loop_stabilizer(const std::vector<Site> &cycle, const EncodingCandidate &enc) {
    if (cycle.size() < 3 || !(cycle.front() == cycle.back())) {
        throw UsageError("loop must be closed (first site == last site)");
    }
    return composite_edge(cycle, enc);
}

/// Elementary loops based at `base` for the layout's edge set.
inline std::vector<std::vector<Site>> elementary_loops(EdgeSet e, Site b) {
    Site r = b + CellOffset{1, 0}, u = b + CellOffset{0, 1}, ru = b + CellOffset{1, 1};
    switch (e) {
        case EdgeSet::Chain: return {};
        case EdgeSet::NNSquare: return {{b, r, ru, u, b}};
        case EdgeSet::Triangular: return {{b, r, ru, b}, {b, ru, u, b}};
        case EdgeSet::NNNSquare: return {{b, r, ru, b}, {b, ru, u, b}, {b, r, u, b}, {r, ru, u, r}};
    }
    return {};
}

/// The edge operator between site j and j + direction, directly or through
/// an L-shaped two-edge path. Of the two L paths the lighter hopping wins,
/// horizontal-first on ties.
inline std::optional<LatticeWord> hopping_edge(const EncodingCandidate &enc, Site j, GeneratorKind direction) {
    CellOffset d = edge_direction(direction);
    Site k = j + d;
    if (auto e = edge_between(enc.layout, j, k)) {
        return enc.image_at(e->first, e->second);
    }
    if (d.dx == 0 || d.dy == 0) {
        return std::nullopt;
    }
    std::optional<LatticeWord> best;
    int best_w = 0;
    for (Site mid : {j + CellOffset{d.dx, 0}, j + CellOffset{0, d.dy}}) {
        if (!edge_between(enc.layout, j, mid) || !edge_between(enc.layout, mid, k)) {
            continue;
        }
        LatticeWord e = composite_edge({j, mid, k}, enc);
        int w = std::max((vertex_image(enc, j) * e).weight(), (vertex_image(enc, k) * e).weight());
        if (!best || w < best_w) {
            best = e;
            best_w = w;
        }
    }
    return best;
}

/// The two Pauli terms {V_j E_jk, V_k E_jk} of the hopping from the site of
/// `mode` in the origin cell along `direction`.
inline std::optional<std::pair<LatticeWord, LatticeWord>> hopping_pauli_terms(const EncodingCandidate &enc, int mode,
                                                                            GeneratorKind direction) {
    Site j = site_of(enc.layout, {}, mode);
    Site k = j + edge_direction(direction);
    auto e = hopping_edge(enc, j, direction);
    if (!e) {
        return std::nullopt;
    }
    return std::make_pair(vertex_image(enc, j) * *e, vertex_image(enc, k) * *e);
}

/// V_up V_down for the site hosted by `site_index` of the origin cell. With
/// separate spin grids the two factors act on disjoint qubits, so only the
/// up-spin factor is stored and the weight doubles.
struct OnSiteTerm {
    LatticeWord word;
    bool separate_grids = false;

    int weight() const { return separate_grids ? 2 * word.weight() : word.weight(); }
};

inline OnSiteTerm onsite_pauli_term(const EncodingCandidate &enc, int site_index) {
    const UnitCellLayout &l = enc.layout;
    if (l.scheme() == Scheme::Mixed) {
        if (site_index != 0) {
            throw UsageError("mixed cells host a single site");
        }
        return {enc.image_at({GeneratorKind::Vertex, 0}, {}) * enc.image_at({GeneratorKind::Vertex, 1}, {}), false};
    }
    if (site_index < 0 || site_index >= sites_per_cell(l)) {
        throw UsageError("site index outside the unit cell");
    }
    return {enc.image_at({GeneratorKind::Vertex, site_index}, {}), true};
}

/// Weight of one logical term; nullopt when the layout cannot build it.
inline std::optional<int> term_weight(const EncodingCandidate &enc, const TermDescriptor &t) {
    if (t.kind == TermKind::OnSite) {
        return onsite_pauli_term(enc, t.mode).weight();
    }
    auto terms = hopping_pauli_terms(enc, t.mode, t.direction);
    if (!terms) {
        return std::nullopt;
    }
    return t.endpoint == 0 ? terms->first.weight() : terms->second.weight();
}

// ---------------------------------------------------------------------------
// Validation.

struct Violation {
    enum class Kind { Missing, SlotCount, Commutation };
    Kind kind = Kind::Commutation;
    FermionGeneratorId a;
    FermionGeneratorId b;
    CellOffset shift;
    int expected = 0;
    int actual = 0;

    std::string str() const {
        switch (kind) {
            case Kind::Missing: return "missing generator " + generator_name(a);
            case Kind::SlotCount: return "generator " + generator_name(a) + " has the wrong number of slots";
            case Kind::Commutation:
                return generator_name(a) + " vs " + generator_name(b) + " shifted by (" + std::to_string(shift.dx) +
                       "," + std::to_string(shift.dy) + "): expected parity " + std::to_string(expected) + ", got " +
                       std::to_string(actual);
        }
        return "?";
    }
};

/// Checks every generator pair at every relative shift within +-2 cells
/// against the parity of the fermionic algebra. Beyond that range neither
/// the Pauli images nor the Majorana words can overlap.
inline std::vector<Violation> validate(const EncodingCandidate &enc, const RequiredParityTable &required) {
    std::vector<Violation> out;
    const auto &gens = required.generators();
    const UnitCellLayout &layout = enc.layout;
    std::vector<const PauliWord *> images(gens.size(), nullptr);
    for (size_t i = 0; i < gens.size(); ++i) {
        auto it = enc.generators.find(gens[i]);
        if (it == enc.generators.end()) {
            out.push_back({Violation::Kind::Missing, gens[i], gens[i], {}, 0, 0});
        } else if (it->second.n_slots != layout.window_slots()) {
            out.push_back({Violation::Kind::SlotCount, gens[i], gens[i], {}, 0, 0});
        } else {
            images[i] = &it->second;
        }
    }
    for (size_t a = 0; a < gens.size(); ++a) {
        if (!images[a]) continue;
        for (size_t b = a; b < gens.size(); ++b) {
            if (!images[b]) continue;
            for (CellOffset s : all_window_shifts()) {
                PauliWord tb = translate_clipped(*images[b], s, layout);
                int actual = commute_parity(*images[a], tb);
                int expected = required(a, b, s);
                if (actual != expected) {
                    out.push_back({Violation::Kind::Commutation, gens[a], gens[b], s, expected, actual});
                }
            }
        }
    }
    return out;
}

inline std::vector<Violation> validate(const EncodingCandidate &enc) {
    return validate(enc, RequiredParityTable(enc.layout));
}

/// Stabilizer generators of one unit cell: the images of the elementary
/// loops based at every site the cell hosts, each placed in the window with
/// its base cell at the centre when possible. nullopt if some loop image
/// does not fit in 3x3 cells. One entry per elementary loop, in loop order.
inline std::optional<std::vector<PauliWord>> try_derive_stabilizers(const EncodingCandidate &enc) {
    std::vector<PauliWord> out;
    const UnitCellLayout &l = enc.layout;
    for (int m = 0; m < l.modes_per_cell(); ++m) {
        if (l.scheme() == Scheme::TwoGrids && m > 0) break;
        Site base = site_of(l, {}, m);
        for (const auto &loop : elementary_loops(l.edge_set(), base)) {
            LatticeWord s = loop_stabilizer(loop, enc);
            // A loop whose edges multiply out is kept as the identity so the
            // list stays aligned with the elementary loops.
            if (s.is_identity()) {
                out.push_back(PauliWord::identity(l.window_slots()));
                continue;
            }
            auto w = fit_to_window(s, l);
            if (!w) {
                return std::nullopt;
            }
            out.push_back(*w);
        }
    }
    return out;
}

inline std::vector<PauliWord> derive_stabilizers(const EncodingCandidate &enc) {
    auto s = try_derive_stabilizers(enc);
    if (!s) {
        throw EncodingError("a loop stabilizer spans more than 3x3 cells");
    }
    return *s;
}

/// Number of elementary loops per unit cell for the layout.
inline int loops_per_cell(const UnitCellLayout &layout) {
    int per_site = static_cast<int>(elementary_loops(layout.edge_set(), {}).size());
    return per_site * layout.modes_per_cell();
}

}  // namespace fermenc
