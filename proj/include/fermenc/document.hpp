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
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fermenc/connectivity.hpp"
#include "fermenc/encoding.hpp"
#include "fermenc/metrics.hpp"
#include "fermenc/search_clifford.hpp"

namespace fermenc {

using Json = nlohmann::ordered_json;

inline constexpr const char *kSchemaVersion = "1";

/// Raised for documents that parse but describe an invalid encoding.
struct DocumentError : std::runtime_error {
    explicit DocumentError(const std::string &msg, std::vector<std::string> details = {})
        : std::runtime_error(msg), details(std::move(details)) {}
    std::vector<std::string> details;
};

/// Sparse text "cell(dx,dy):local:letter ..." with offsets relative to the
/// central window cell, tokens in slot order.
inline std::string format_cell_word(const PauliWord &w, const UnitCellLayout &layout) {
    std::string out;
    uint64_t s = w.support();
    while (s != 0) {
        int slot = std::countr_zero(s);
        s &= s - 1;
        SlotLocation loc = location_of(slot, layout);
        if (!out.empty()) out += ' ';
        out += "cell(" + std::to_string(loc.cell.x - 1) + "," + std::to_string(loc.cell.y - 1) +
               "):" + std::to_string(loc.local) + ":" + w.letter(slot);
    }
    return out;
}

inline PauliWord parse_cell_word(const std::string &text, const UnitCellLayout &layout) {
    PauliWord w = PauliWord::identity(layout.window_slots());
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        int dx = 0, dy = 0, local = 0;
        char letter = 0;
        int consumed = 0;
        if (std::sscanf(tok.c_str(), "cell(%d,%d):%d:%c%n", &dx, &dy, &local, &letter, &consumed) != 4 ||
            consumed != static_cast<int>(tok.size())) {
            throw ParseError("malformed token '" + tok + "' (expected cell(dx,dy):local:letter)");
        }
        if (dx < -1 || dx > 1 || dy < -1 || dy > 1) throw ParseError("cell offset outside the 3x3 window in '" + tok + "'");
        if (local < 0 || local >= layout.qubits_per_cell()) throw ParseError("local index out of range in '" + tok + "'");
        if (letter != 'X' && letter != 'Y' && letter != 'Z') throw ParseError("invalid Pauli letter in '" + tok + "'");
        int slot = slot_of({dx + 1, dy + 1}, local, layout);
        if (w.letter(slot) != 'I') throw ParseError("qubit given twice in '" + text + "'");
        w.set(slot, letter);
    }
    return w;
}

inline Rational parse_rational(const std::string &s) {
    try {
        size_t slash = s.find('/');
        size_t used = 0;
        if (slash == std::string::npos) {
            int64_t v = std::stoll(s, &used);
            if (used != s.size()) throw ParseError("");
            return Rational::of(v, 1);
        }
        int64_t n = std::stoll(s.substr(0, slash), &used);
        if (used != slash) throw ParseError("");
        std::string d = s.substr(slash + 1);
        int64_t den = std::stoll(d, &used);
        if (used != d.size() || den == 0) throw ParseError("");
        return Rational::of(n, den);
    } catch (const std::logic_error &) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

inline Json distance_json(const DistanceResult &d) { return Json{{"exact", d.exact}, {"value", d.value}}; }

inline Json metrics_json(const Metrics &m) {
    Json j;
    j["distance"] = distance_json(m.distance);
    j["max_stab_weight"] = m.max_stab_weight;
    j["sigma_nn"] = m.sigma_nn.str();
    j["sigma_nnn"] = m.sigma_nnn ? Json(m.sigma_nnn->str()) : Json(nullptr);
    j["qubit_ratio"] = m.qubit_ratio.str();
    Json terms = Json::object();
    for (const TermWeight &t : m.terms) terms[term_name(t.term)] = t.weight;
    j["terms"] = terms;
    return j;
}

struct Provenance {
    std::string command;
    std::string config_hash;
    std::vector<std::string> clifford_sequence;

    bool empty() const { return command.empty() && config_hash.empty() && clifford_sequence.empty(); }
};

inline Json encoding_json(const EncodingCandidate &enc, const Provenance &prov = {}) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["layout"] = Json{{"scheme", std::string(to_string(enc.layout.scheme()))},
                       {"edge_set", std::string(to_string(enc.layout.edge_set()))},
                       {"qubits_per_cell", enc.layout.qubits_per_cell()}};
    Json gens = Json::object();
    for (FermionGeneratorId g : generator_order(enc.layout)) {
        auto it = enc.generators.find(g);
        if (it != enc.generators.end()) gens[generator_name(g)] = format_cell_word(it->second, enc.layout);
    }
    j["generators"] = gens;
    Json stabs = Json::array();
    for (const PauliWord &s : enc.stabilizers) stabs.push_back(format_cell_word(s, enc.layout));
    j["stabilizers"] = stabs;
    if (enc.metrics) j["metrics"] = metrics_json(*enc.metrics);
    if (!prov.empty()) {
        Json p = Json::object();
        if (!prov.command.empty()) p["command"] = prov.command;
        if (!prov.config_hash.empty()) p["config_hash"] = prov.config_hash;
        if (!prov.clifford_sequence.empty()) p["clifford_sequence"] = prov.clifford_sequence;
        j["provenance"] = p;
    }
    return j;
}

namespace detail {

inline void only_keys(const Json &j, std::initializer_list<const char *> keys, const std::string &where) {
    if (!j.is_object()) throw ParseError(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char *k : keys) ok = ok || it.key() == k;
        if (!ok) throw ParseError("unknown field '" + it.key() + "' in " + where);
    }
}

template <typename T>
T get_field(const Json &j, const char *key, const std::string &where) {
    if (!j.contains(key)) throw ParseError("missing field '" + std::string(key) + "' in " + where);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw ParseError("field '" + std::string(key) + "' in " + where + " has the wrong type");
    }
}

inline Metrics parse_metrics(const Json &j, const EncodingCandidate &enc) {
    only_keys(j, {"distance", "max_stab_weight", "sigma_nn", "sigma_nnn", "qubit_ratio", "terms"}, "metrics");
    Metrics m;
    const Json &d = j.at("distance");
    only_keys(d, {"exact", "value"}, "metrics.distance");
    m.distance = {get_field<bool>(d, "exact", "metrics.distance"), get_field<int>(d, "value", "metrics.distance")};
    m.max_stab_weight = get_field<int>(j, "max_stab_weight", "metrics");
    m.sigma_nn = parse_rational(get_field<std::string>(j, "sigma_nn", "metrics"));
    if (j.contains("sigma_nnn") && !j.at("sigma_nnn").is_null()) {
        m.sigma_nnn = parse_rational(get_field<std::string>(j, "sigma_nnn", "metrics"));
    }
    m.qubit_ratio = parse_rational(get_field<std::string>(j, "qubit_ratio", "metrics"));
    m.terms = term_weights(enc);
    return m;
}

}  // namespace detail

/// Strict import: unknown fields, bad layouts, malformed words, validation
/// violations and stabilizers that differ from the derived ones are errors.
/// Missing stabilizers are derived.
inline EncodingCandidate parse_encoding(const Json &j, Provenance *prov = nullptr) {
    detail::only_keys(j, {"schema_version", "layout", "generators", "stabilizers", "metrics", "provenance"}, "document");
    std::string ver = detail::get_field<std::string>(j, "schema_version", "document");
    if (ver != kSchemaVersion) throw ParseError("unsupported schema_version '" + ver + "'");
    const Json &lj = j.at("layout");
    detail::only_keys(lj, {"scheme", "edge_set", "qubits_per_cell"}, "layout");
    UnitCellLayout layout(parse_scheme(detail::get_field<std::string>(lj, "scheme", "layout")),
                          parse_edge_set(detail::get_field<std::string>(lj, "edge_set", "layout")),
                          detail::get_field<int>(lj, "qubits_per_cell", "layout"));
    EncodingCandidate enc(layout);
    if (!j.contains("generators") || !j.at("generators").is_object()) {
        throw ParseError("missing object 'generators' in document");
    }
    std::vector<FermionGeneratorId> order = generator_order(layout);
    for (auto it = j.at("generators").begin(); it != j.at("generators").end(); ++it) {
        FermionGeneratorId g = parse_generator_name(it.key());
        if (std::find(order.begin(), order.end(), g) == order.end()) {
            throw ParseError("generator '" + it.key() + "' does not belong to the layout");
        }
        if (!it.value().is_string()) throw ParseError("generator '" + it.key() + "' must be a string");
        enc.generators[g] = parse_cell_word(it.value().get<std::string>(), layout);
    }
    auto violations = validate(enc);
    if (!violations.empty()) {
        std::vector<std::string> details;
        for (const auto &v : violations) details.push_back(v.str());
        throw DocumentError("encoding does not validate (" + std::to_string(violations.size()) + " violations)",
                            std::move(details));
    }
    auto derived = try_derive_stabilizers(enc);
    if (!derived) throw DocumentError("a loop stabilizer spans more than 3x3 cells");
    if (j.contains("stabilizers")) {
        if (!j.at("stabilizers").is_array()) throw ParseError("'stabilizers' must be an array");
        std::vector<PauliWord> given;
        for (const Json &s : j.at("stabilizers")) {
            if (!s.is_string()) throw ParseError("stabilizer entries must be strings");
            given.push_back(parse_cell_word(s.get<std::string>(), layout));
        }
        if (given != *derived) throw DocumentError("stabilizers differ from the ones derived from the generators");
    }
    enc.stabilizers = *derived;
    if (j.contains("metrics")) enc.metrics = detail::parse_metrics(j.at("metrics"), enc);
    if (j.contains("provenance")) {
        const Json &p = j.at("provenance");
        detail::only_keys(p, {"command", "config_hash", "clifford_sequence"}, "provenance");
        Provenance pv;
        if (p.contains("command")) pv.command = detail::get_field<std::string>(p, "command", "provenance");
        if (p.contains("config_hash")) pv.config_hash = detail::get_field<std::string>(p, "config_hash", "provenance");
        if (p.contains("clifford_sequence")) {
            pv.clifford_sequence = detail::get_field<std::vector<std::string>>(p, "clifford_sequence", "provenance");
            for (const auto &g : pv.clifford_sequence) parse_gate(g);
        }
        if (prov) *prov = pv;
    }
    return enc;
}

inline EncodingCandidate parse_encoding_text(const std::string &text, Provenance *prov = nullptr) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_encoding(j, prov);
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline EncodingCandidate load_encoding(const std::string &path, Provenance *prov = nullptr) {
    return parse_encoding_text(read_file(path), prov);
}

inline Json graph_json(const ConnectivityGraph &g) {
    Json nodes = Json::array();
    for (const auto &n : g.nodes) nodes.push_back(Json{{"id", n.name}, {"ancilla", n.ancilla}});
    Json edges = Json::array();
    for (const auto &e : g.edges) {
        edges.push_back(Json{{"source", g.nodes[static_cast<size_t>(e.u)].name},
                             {"target", g.nodes[static_cast<size_t>(e.v)].name},
                             {"origin", std::string(to_string(e.origin))}});
    }
    return Json{{"nodes", nodes}, {"edges", edges}, {"max_degree", max_degree(g)},
                {"thickness_ub", thickness_upper_bound(g)}};
}

}  // namespace fermenc
