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

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "fermenc/search_bruteforce.hpp"
#include "fermenc/search_clifford.hpp"
#include "fermenc/symplectic.hpp"

namespace fermenc {

/// Flat "key = value" file. Blank lines and lines starting with '#' are
/// ignored; keys may appear once. Every error names the file and line.
class ConfigFile {
  public:
    struct Value {
        std::string text;
        int line = 0;
    };

    static ConfigFile parse(const std::string &text, const std::string &name = "config") {
        ConfigFile c;
        c.name_ = name;
        c.hash_ = fnv1a(text);
        std::istringstream is(text);
        std::string raw;
        int line = 0;
        while (std::getline(is, raw)) {
            ++line;
            std::string s = trim(raw);
            if (s.empty() || s[0] == '#') continue;
            size_t eq = s.find('=');
            if (eq == std::string::npos) throw c.error(line, "expected 'key = value'");
            std::string key = trim(s.substr(0, eq));
            std::string val = trim(s.substr(eq + 1));
            if (key.empty()) throw c.error(line, "empty key");
            for (char ch : key) {
                if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) {
                    throw c.error(line, "invalid key '" + key + "'");
                }
            }
            if (c.values_.count(key)) throw c.error(line, "duplicate key '" + key + "'");
            c.values_[key] = {val, line};
        }
        return c;
    }

    static ConfigFile load(const std::string &path) {
        std::FILE *f = std::fopen(path.c_str(), "rb");
        if (!f) throw ParseError("cannot open config '" + path + "'");
        std::string text;
        char buf[4096];
        size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
        std::fclose(f);
        ConfigFile c = parse(text, path);
        c.dir_ = std::filesystem::path(path).parent_path();
        return c;
    }

    ParseError error(int line, const std::string &msg) const {
        return ParseError(name_ + ":" + std::to_string(line) + ": " + msg);
    }

    bool has(const std::string &key) const { return values_.count(key) != 0; }

    std::optional<std::string> str(const std::string &key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        used_.insert(key);
        return it->second.text;
    }

    template <typename T>
    std::optional<T> number(const std::string &key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        used_.insert(key);
        const std::string &s = it->second.text;
        try {
            size_t used = 0;
            T v;
            if constexpr (std::is_floating_point_v<T>) {
                v = static_cast<T>(std::stod(s, &used));
            } else if constexpr (std::is_unsigned_v<T>) {
                if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
                v = static_cast<T>(std::stoull(s, &used));
            } else {
                v = static_cast<T>(std::stoll(s, &used));
            }
            if (used != s.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::logic_error &) {
            throw error(it->second.line, "invalid number '" + s + "' for '" + key + "'");
        }
    }

    /// Path values are resolved against the config file's directory.
    std::optional<std::string> path(const std::string &key) {
        auto s = str(key);
        if (!s) return s;
        std::filesystem::path p(*s);
        if (p.is_relative() && !dir_.empty()) p = dir_ / p;
        return p.string();
    }

    int line_of(const std::string &key) const {
        auto it = values_.find(key);
        return it == values_.end() ? 0 : it->second.line;
    }

    /// Rejects keys no reader asked for.
    void finish() const {
        for (const auto &[k, v] : values_) {
            if (!used_.count(k)) throw error(v.line, "unknown key '" + k + "'");
        }
    }

    /// Wraps a validation failure tied to one key.
    template <typename F>
    void check(const std::string &key, F &&f) const {
        try {
            f();
        } catch (const std::invalid_argument &e) {
            throw error(line_of(key), e.what());
        }
    }

    const std::string &hash() const { return hash_; }
    const std::string &name() const { return name_; }

  private:
    static std::string trim(const std::string &s) {
        size_t a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return "";
        size_t b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    }

    static std::string fnv1a(const std::string &s) {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    std::string name_;
    std::string hash_;
    std::filesystem::path dir_;
    std::map<std::string, Value> values_;
    std::set<std::string> used_;
};

/// Output destinations shared by the search commands.
struct OutputPaths {
    std::optional<std::string> output;
    std::optional<std::string> report;
    std::optional<std::string> front;
};

inline OutputPaths read_output_paths(ConfigFile &c) {
    return {c.path("output"), c.path("report"), c.path("front")};
}

inline SearchConfig read_search_config(ConfigFile &c) {
    SearchConfig cfg;
    auto scheme = c.str("scheme").value_or("two-grids");
    auto edges = c.str("edge_set").value_or("nn-square");
    int q = c.number<int>("qubits_per_cell").value_or(1);
    c.check("scheme", [&] { parse_scheme(scheme); });
    c.check("edge_set", [&] { parse_edge_set(edges); });
    c.check("qubits_per_cell", [&] { cfg.layout = UnitCellLayout(parse_scheme(scheme), parse_edge_set(edges), q); });
    cfg.max_vertex_weight = c.number<int>("max_vertex_weight").value_or(cfg.max_vertex_weight);
    cfg.max_edge_or_hopping_weight = c.number<int>("max_hopping_weight").value_or(cfg.max_edge_or_hopping_weight);
    if (auto t = c.str("cap_target")) {
        if (*t == "hopping") {
            cfg.cap_target = EdgeCapTarget::Hopping;
        } else if (*t == "edge") {
            cfg.cap_target = EdgeCapTarget::Edge;
        } else {
            throw c.error(c.line_of("cap_target"), "cap_target must be 'hopping' or 'edge'");
        }
    }
    if (auto m = c.str("hopping_cap_mode")) {
        if (*m == "nn") {
            cfg.hopping_cap_mode = HoppingCapMode::NN;
        } else if (*m == "nn+nnn") {
            cfg.hopping_cap_mode = HoppingCapMode::NNAndNNN;
        } else {
            throw c.error(c.line_of("hopping_cap_mode"), "hopping_cap_mode must be 'nn' or 'nn+nnn'");
        }
    }
    cfg.max_stab_weight = c.number<int>("max_stab_weight").value_or(0);
    cfg.min_distance_filter = c.number<int>("min_distance_filter").value_or(1);
    cfg.min_logical_weight_filter = c.number<int>("min_logical_weight_filter");
    cfg.acceptance_probability = c.number<double>("acceptance_probability").value_or(1.0);
    cfg.rng_seed = c.number<uint64_t>("seed").value_or(0);
    cfg.node_budget = c.number<uint64_t>("node_budget").value_or(0);
    cfg.distance_w_max = c.number<int>("distance_w_max").value_or(3);
    cfg.threads = c.number<int>("threads").value_or(1);
    // Point range errors at the offending key.
    auto n = cfg.layout.window_slots();
    auto range = [&](const char *key, long long v, long long lo, long long hi) {
        if (c.has(key) && (v < lo || v > hi)) {
            throw c.error(c.line_of(key), std::string(key) + " must lie in " + std::to_string(lo) + ".." +
                                              std::to_string(hi));
        }
    };
    range("max_vertex_weight", cfg.max_vertex_weight, 1, n);
    range("max_hopping_weight", cfg.max_edge_or_hopping_weight, 1, n);
    range("max_stab_weight", cfg.max_stab_weight, 0, n);
    range("min_distance_filter", cfg.min_distance_filter, 1, n);
    if (cfg.min_logical_weight_filter) range("min_logical_weight_filter", *cfg.min_logical_weight_filter, 0, n);
    range("distance_w_max", cfg.distance_w_max, 1, n);
    range("threads", cfg.threads, 1, 1024);
    if (!(cfg.acceptance_probability > 0.0 && cfg.acceptance_probability <= 1.0)) {
        throw c.error(c.line_of("acceptance_probability"), "acceptance_probability must lie in (0, 1]");
    }
    cfg.check();
    return cfg;
}

/// Reads the deformation settings; the base document path is returned and
/// loaded by the caller.
inline CliffordConfig read_clifford_config(ConfigFile &c, std::string &base_path) {
    CliffordConfig cfg;
    auto base = c.path("base");
    if (!base) throw ParseError(c.name() + ": missing required key 'base'");
    base_path = *base;
    cfg.n_single_qubit_samples = c.number<int>("n_single_qubit_samples").value_or(cfg.n_single_qubit_samples);
    cfg.n_cnot_pairs = c.number<int>("n_cnot_pairs").value_or(cfg.n_cnot_pairs);
    cfg.max_sequence_length = c.number<int>("max_sequence_length").value_or(cfg.max_sequence_length);
    cfg.rng_seed = c.number<uint64_t>("seed").value_or(0);
    cfg.min_distance_filter = c.number<int>("min_distance_filter").value_or(1);
    cfg.max_hopping_weight = c.number<int>("max_hopping_weight").value_or(0);
    cfg.max_stab_weight = c.number<int>("max_stab_weight").value_or(0);
    cfg.distance_w_max = c.number<int>("distance_w_max").value_or(3);
    cfg.sequence_budget = c.number<uint64_t>("sequence_budget").value_or(0);
    cfg.threads = c.number<int>("threads").value_or(1);
    auto nonneg = [&](const char *key, long long v) {
        if (v < 0) throw c.error(c.line_of(key), std::string(key) + " must be non-negative");
    };
    nonneg("n_single_qubit_samples", cfg.n_single_qubit_samples);
    nonneg("n_cnot_pairs", cfg.n_cnot_pairs);
    nonneg("max_sequence_length", cfg.max_sequence_length);
    nonneg("max_hopping_weight", cfg.max_hopping_weight);
    nonneg("max_stab_weight", cfg.max_stab_weight);
    if (cfg.min_distance_filter < 1) throw c.error(c.line_of("min_distance_filter"), "min_distance_filter must be >= 1");
    if (cfg.distance_w_max < 1) throw c.error(c.line_of("distance_w_max"), "distance_w_max must be >= 1");
    if (cfg.threads < 1) throw c.error(c.line_of("threads"), "threads must be >= 1");
    return cfg;
}

}  // namespace fermenc
