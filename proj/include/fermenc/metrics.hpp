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
#include <optional>
#include <vector>

#include "fermenc/distance.hpp"
#include "fermenc/encoding.hpp"
#include "fermenc/fermion.hpp"

namespace fermenc {

/// Weights of every Hamiltonian term; NNN terms are always included when the
/// layout can build them, so that both averages are available.
inline std::vector<TermWeight> term_weights(const EncodingCandidate &enc, bool *nnn_available = nullptr) {
    HamiltonianSpec all;
    all.t_prime = 1.0;
    std::vector<TermWeight> out;
    bool ok = true;
    for (const TermDescriptor &t : enumerate_hamiltonian_terms(all, enc.layout)) {
        auto w = term_weight(enc, t);
        if (!w) {
            ok = false;
            continue;
        }
        out.push_back({t, *w});
    }
    if (nnn_available) *nnn_available = ok && !nnn_hopping_directions(enc.layout.edge_set()).empty();
    return out;
}

inline int max_stabilizer_weight(const std::vector<PauliWord> &stabilizers) {
    int m = 0;
    for (const PauliWord &s : stabilizers) m = std::max(m, weight(s));
    return m;
}

/// Metrics of an encoding whose stabilizers are already populated. The
/// Hamiltonian only matters through which terms exist; both averages are
/// always reported.
inline Metrics compute_metrics(const EncodingCandidate &enc, const DistanceBudget &budget) {
    Metrics m;
    m.distance = min_distance(enc, budget);
    m.max_stab_weight = max_stabilizer_weight(enc.stabilizers);
    bool nnn = false;
    m.terms = term_weights(enc, &nnn);
    int64_t sum_nn = 0, n_nn = 0, sum_all = 0, n_all = 0;
    for (const TermWeight &tw : m.terms) {
        sum_all += tw.weight;
        ++n_all;
        if (!tw.term.next_nearest) {
            sum_nn += tw.weight;
            ++n_nn;
        }
    }
    m.sigma_nn = Rational::of(sum_nn, std::max<int64_t>(n_nn, 1));
    if (nnn) m.sigma_nnn = Rational::of(sum_all, n_all);
    m.qubit_ratio = Rational::of(enc.layout.qubits_per_cell(), enc.layout.modes_per_cell());
    return m;
}

inline Metrics compute_metrics(const EncodingCandidate &enc, const HamiltonianSpec &, int w_max, int threads = 1) {
    return compute_metrics(enc, DistanceBudget{w_max, threads, 0});
}

/// Largest weight among the two Pauli terms of each hopping; nullopt when a
/// hopping cannot be built.
inline std::optional<int> max_hopping_weight(const EncodingCandidate &enc, bool include_nnn) {
    int m = 0;
    for (int mode = 0; mode < enc.layout.modes_per_cell(); ++mode) {
        std::vector<GeneratorKind> dirs = nn_hopping_directions(enc.layout.edge_set());
        if (include_nnn) {
            for (GeneratorKind d : nnn_hopping_directions(enc.layout.edge_set())) dirs.push_back(d);
        }
        for (GeneratorKind d : dirs) {
            auto t = hopping_pauli_terms(enc, mode, d);
            if (!t) return std::nullopt;
            m = std::max({m, t->first.weight(), t->second.weight()});
        }
    }
    return m;
}

}  // namespace fermenc
