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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fermenc/config.hpp"
#include "fermenc/connectivity.hpp"
#include "fermenc/document.hpp"
#include "fermenc/metrics.hpp"
#include "fermenc/search_bruteforce.hpp"
#include "fermenc/search_clifford.hpp"

namespace fermenc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitTruncated = 2;

inline HamiltonianSpec parse_hamiltonian(const std::string &s) {
    HamiltonianSpec h;
    std::vector<double> v;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument("");
        } catch (const std::logic_error &) {
            throw ParseError("--hamiltonian expects three numbers t,tp,U");
        }
    }
    if (v.size() != 3) throw ParseError("--hamiltonian expects three numbers t,tp,U");
    h.t = v[0];
    h.t_prime = v[1];
    h.U = v[2];
    return h;
}

inline std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline std::string distance_cell(const DistanceResult &d) {
    return d.exact ? std::to_string(d.value) : ">=" + std::to_string(d.value);
}

inline const char *kCsvHeader = "distance,max_stab_weight,sigma_nn,sigma_nnn,qubit_ratio,max_degree,thickness_ub";

inline std::string csv_row(const Metrics &m, const ConnectivityGraph &g) {
    return distance_cell(m.distance) + "," + std::to_string(m.max_stab_weight) + "," + fixed4(m.sigma_nn.value()) +
           "," + (m.sigma_nnn ? fixed4(m.sigma_nnn->value()) : std::string()) + "," + fixed4(m.qubit_ratio.value()) +
           "," + std::to_string(max_degree(g)) + "," + std::to_string(thickness_upper_bound(g));
}

/// Output sink: a file when a path is given, otherwise the fallback stream.
class Output {
  public:
    Output(const std::optional<std::string> &path, std::ostream &fallback) : os_(&fallback) {
        if (path && !path->empty() && *path != "-") {
            file_ = std::make_unique<std::ofstream>(*path, std::ios::binary | std::ios::trunc);
            if (!*file_) throw ParseError("cannot write '" + *path + "'");
            os_ = file_.get();
        }
    }
    std::ostream &stream() { return *os_; }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *os_;
};

inline void write_text(const std::optional<std::string> &path, const std::string &text, std::ostream &fallback) {
    Output o(path, fallback);
    o.stream() << text;
}

struct Options {
    int threads = 0;  // 0: keep the config value
    std::optional<uint64_t> seed;
    int w_max = 3;
    std::string output;
    std::string format;
    std::string hamiltonian = "1,0,4";
    bool csv = false;
    int patch = 3;
    std::string path;
};

inline int cmd_search(const Options &o, std::ostream &out, std::ostream &err) {
    ConfigFile c = ConfigFile::load(o.path);
    SearchConfig cfg = read_search_config(c);
    OutputPaths paths = read_output_paths(c);
    c.finish();
    if (o.seed) cfg.rng_seed = *o.seed;
    if (o.threads > 0) cfg.threads = o.threads;
    if (!o.output.empty()) paths.output = o.output;

    Provenance prov{"search", c.hash(), {}};
    Output stream(paths.output, out);
    SearchReport rep = brute_force_search(cfg, [&](const EncodingCandidate &e) {
        stream.stream() << encoding_json(e, prov).dump() << "\n";
        stream.stream().flush();
    });
    Json r{{"command", "search"},
           {"config_hash", c.hash()},
           {"nodes", rep.nodes},
           {"completions", rep.completions},
           {"passed_filters", rep.passed_filters},
           {"pareto_accepted", rep.pareto_accepted},
           {"front_size", rep.front.size()},
           {"best_distance", rep.best_distance ? distance_json(*rep.best_distance) : Json(nullptr)},
           {"truncated", rep.truncated}};
    if (paths.report) {
        write_text(paths.report, r.dump(2) + "\n", err);
    } else {
        err << r.dump() << "\n";
    }
    if (paths.front) {
        std::string text;
        for (const auto &e : rep.front) text += encoding_json(e, prov).dump() + "\n";
        write_text(paths.front, text, err);
    }
    return rep.truncated ? kExitTruncated : kExitOk;
}

inline int cmd_deform(const Options &o, std::ostream &out, std::ostream &err) {
    ConfigFile c = ConfigFile::load(o.path);
    std::string base_path;
    CliffordConfig cfg = read_clifford_config(c, base_path);
    OutputPaths paths = read_output_paths(c);
    c.finish();
    cfg.base = load_encoding(base_path);
    c.check("distance_w_max", [&] { cfg.check(); });
    if (o.seed) cfg.rng_seed = *o.seed;
    if (o.threads > 0) cfg.threads = o.threads;
    if (!o.output.empty()) paths.output = o.output;

    Output stream(paths.output, out);
    auto prov_of = [&](const std::vector<CliffordGateOp> &seq) {
        Provenance p{"deform", c.hash(), {}};
        for (const auto &g : seq) p.clifford_sequence.push_back(format_gate(g));
        return p;
    };
    CliffordReport rep = clifford_deform_search(cfg, [&](const EncodingCandidate &e, const std::vector<CliffordGateOp> &s) {
        stream.stream() << encoding_json(e, prov_of(s)).dump() << "\n";
    });
    Json r{{"command", "deform"},
           {"config_hash", c.hash()},
           {"sequences", rep.sequences},
           {"clipped", rep.clipped},
           {"unique_states", rep.unique_states},
           {"passed_filters", rep.passed_filters},
           {"pareto_accepted", rep.pareto_accepted},
           {"front_size", rep.front.size()},
           {"best_distance", rep.best_distance ? distance_json(*rep.best_distance) : Json(nullptr)},
           {"truncated", rep.truncated}};
    if (paths.report) {
        write_text(paths.report, r.dump(2) + "\n", err);
    } else {
        err << r.dump() << "\n";
    }
    if (paths.front) {
        std::string text;
        for (const auto &e : rep.front) text += encoding_json(e.encoding, prov_of(e.sequence)).dump() + "\n";
        write_text(paths.front, text, err);
    }
    return rep.truncated ? kExitTruncated : kExitOk;
}

inline int cmd_distance(const Options &o, std::ostream &out, std::ostream &) {
    EncodingCandidate enc = load_encoding(o.path);
    if (o.w_max < 1 || o.w_max > enc.layout.window_slots()) throw UsageError("--w-max out of range");
    DistanceReport r =
        min_distance_report(StabilizerChecker(enc.layout, enc.stabilizers), {o.w_max, std::max(1, o.threads), 0});
    std::string text;
    if (o.format == "json") {
        Json j = distance_json(r.result);
        j["witness"] = r.witness ? Json(format_cell_word(*r.witness, enc.layout)) : Json(nullptr);
        text = j.dump() + "\n";
    } else if (o.format.empty() || o.format == "text") {
        text = r.result.str() + "\n";
    } else {
        throw UsageError("distance supports --format text or json");
    }
    write_text(o.output.empty() ? std::nullopt : std::optional<std::string>(o.output), text, out);
    return kExitOk;
}

inline int cmd_metrics(const Options &o, std::ostream &out, std::ostream &) {
    EncodingCandidate enc = load_encoding(o.path);
    HamiltonianSpec spec = parse_hamiltonian(o.hamiltonian);
    if (o.w_max < 1 || o.w_max > enc.layout.window_slots()) throw UsageError("--w-max out of range");
    Metrics m = compute_metrics(enc, spec, o.w_max, std::max(1, o.threads));
    std::string text;
    if (o.format == "json") {
        text = metrics_json(m).dump(2) + "\n";
    } else if (o.format == "csv") {
        text = std::string(kCsvHeader) + "\n" + csv_row(m, build_graph(enc, spec, o.patch)) + "\n";
    } else if (o.format.empty() || o.format == "text") {
        std::ostringstream os;
        os << "distance: " << m.distance.str() << "\n"
           << "max_stab_weight: " << m.max_stab_weight << "\n"
           << "sigma_nn: " << m.sigma_nn.str() << " (" << fixed4(m.sigma_nn.value()) << ")\n";
        if (m.sigma_nnn) {
            os << "sigma_nnn: " << m.sigma_nnn->str() << " (" << fixed4(m.sigma_nnn->value()) << ")\n";
        } else {
            os << "sigma_nnn: n/a\n";
        }
        os << "qubit_ratio: " << m.qubit_ratio.str() << " (" << fixed4(m.qubit_ratio.value()) << ")\n";
        for (const TermWeight &t : m.terms) {
            if (t.term.next_nearest && !spec.has_nnn()) continue;
            os << "  " << term_name(t.term) << ": " << t.weight << "\n";
        }
        text = os.str();
    } else {
        throw UsageError("metrics supports --format text, json or csv");
    }
    write_text(o.output.empty() ? std::nullopt : std::optional<std::string>(o.output), text, out);
    return kExitOk;
}

inline int cmd_graph(const Options &o, std::ostream &out, std::ostream &) {
    EncodingCandidate enc = load_encoding(o.path);
    HamiltonianSpec spec = parse_hamiltonian(o.hamiltonian);
    ConnectivityGraph g = build_graph(enc, spec, o.patch);
    std::string text;
    if (o.format.empty() || o.format == "dot") {
        text = to_dot(g);
    } else if (o.format == "json") {
        text = graph_json(g).dump(2) + "\n";
    } else if (o.format == "text") {
        text = "data_nodes: " + std::to_string(g.data_count()) + "\nancilla_nodes: " +
               std::to_string(g.ancilla_count()) + "\nedges: " + std::to_string(g.edges.size()) +
               "\nmax_degree: " + std::to_string(max_degree(g)) +
               "\nthickness_ub: " + std::to_string(thickness_upper_bound(g)) + "\n";
    } else {
        throw UsageError("graph supports --format dot, json or text");
    }
    write_text(o.output.empty() ? std::nullopt : std::optional<std::string>(o.output), text, out);
    return kExitOk;
}

inline int cmd_export(const Options &o, std::ostream &out, std::ostream &) {
    std::istringstream in(read_file(o.path));
    HamiltonianSpec spec = parse_hamiltonian(o.hamiltonian);
    std::string fmt = o.csv ? "csv" : (o.format.empty() ? "csv" : o.format);
    if (fmt != "csv" && fmt != "json") throw UsageError("export supports --csv or --format json");
    std::string text = fmt == "csv" ? std::string(kCsvHeader) + "\n" : "";
    Json rows = Json::array();
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        EncodingCandidate enc;
        try {
            enc = parse_encoding_text(line);
        } catch (const std::exception &e) {
            throw ParseError(o.path + ":" + std::to_string(n) + ": " + e.what());
        }
        if (!enc.metrics) throw ParseError(o.path + ":" + std::to_string(n) + ": entry has no metrics");
        ConnectivityGraph g = build_graph(enc, spec, o.patch);
        if (fmt == "csv") {
            text += csv_row(*enc.metrics, g) + "\n";
        } else {
            const Metrics &m = *enc.metrics;
            rows.push_back(Json{{"distance", distance_json(m.distance)},
                                {"max_stab_weight", m.max_stab_weight},
                                {"sigma_nn", m.sigma_nn.str()},
                                {"sigma_nnn", m.sigma_nnn ? Json(m.sigma_nnn->str()) : Json(nullptr)},
                                {"qubit_ratio", m.qubit_ratio.str()},
                                {"max_degree", max_degree(g)},
                                {"thickness_ub", thickness_upper_bound(g)}});
        }
    }
    if (fmt == "json") text = rows.dump(2) + "\n";
    write_text(o.output.empty() ? std::nullopt : std::optional<std::string>(o.output), text, out);
    return kExitOk;
}

/// Entry point shared by the binary and the tests.
inline int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
    CLI::App app{"Search and analyse translation-invariant fermion-to-qubit encodings", "fermenc"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App *sub, const char *what) {
        sub->add_option("path", o.path, what)->required();
        sub->add_option("--output,-o", o.output, "output path (default: stdout)");
    };
    auto *search = app.add_subcommand("search", "run the brute-force search described by a config file");
    common(search, "config file");
    search->add_option("--threads", o.threads, "worker threads (overrides config)")->check(CLI::PositiveNumber);
    search->add_option("--seed", o.seed, "RNG seed (overrides config)");

    auto *deform = app.add_subcommand("deform", "run the Clifford deformation search described by a config file");
    common(deform, "config file");
    deform->add_option("--threads", o.threads, "worker threads (overrides config)")->check(CLI::PositiveNumber);
    deform->add_option("--seed", o.seed, "RNG seed (overrides config)");

    auto *distance = app.add_subcommand("distance", "exact code distance of an encoding document");
    common(distance, "encoding document (JSON)");
    distance->add_option("--w-max", o.w_max, "largest error weight to enumerate");
    distance->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    distance->add_option("--format", o.format, "text or json");

    auto *metrics = app.add_subcommand("metrics", "quality metrics of an encoding document");
    common(metrics, "encoding document (JSON)");
    metrics->add_option("--w-max", o.w_max, "largest error weight for the distance");
    metrics->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    metrics->add_option("--hamiltonian", o.hamiltonian, "t,tp,U");
    metrics->add_option("--format", o.format, "text, json or csv");
    metrics->add_option("--patch", o.patch, "patch side for connectivity columns")->check(CLI::PositiveNumber);

    auto *graph = app.add_subcommand("graph", "qubit connectivity graph of an encoding document");
    common(graph, "encoding document (JSON)");
    graph->add_option("--hamiltonian", o.hamiltonian, "t,tp,U");
    graph->add_option("--format", o.format, "dot, json or text");
    graph->add_option("--patch", o.patch, "patch side in unit cells")->check(CLI::PositiveNumber);

    auto *exp = app.add_subcommand("export", "tabulate a front file (JSON lines)");
    common(exp, "front file (JSON lines)");
    exp->add_flag("--csv", o.csv, "CSV output (default)");
    exp->add_option("--format", o.format, "csv or json");
    exp->add_option("--hamiltonian", o.hamiltonian, "t,tp,U");
    exp->add_option("--patch", o.patch, "patch side for connectivity columns")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }
    try {
        if (*search) return cmd_search(o, out, err);
        if (*deform) return cmd_deform(o, out, err);
        if (*distance) return cmd_distance(o, out, err);
        if (*metrics) return cmd_metrics(o, out, err);
        if (*graph) return cmd_graph(o, out, err);
        if (*exp) return cmd_export(o, out, err);
    } catch (const DocumentError &e) {
        err << "error: " << e.what() << "\n";
        for (const auto &d : e.details) err << "  " << d << "\n";
        return kExitInput;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const EncodingError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace fermenc::cli
