// neuromst: benchmark harness for the spiking-network MST algorithms.
// Subcommands: gen (random graphs), run (one algorithm), compare (cost
// table + speedups), analyze (pipe-vs-seq-radix bottleneck advisor).

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "neuromst/costmodel.hpp"
#include "neuromst/error.hpp"
#include "neuromst/graph.hpp"
#include "neuromst/graphio.hpp"
#include "neuromst/mst.hpp"

using neuromst::Error;
using neuromst::ErrorKind;
using neuromst::Graph;
using neuromst::GraphStats;
using neuromst::MstAlgo;
using neuromst::MstReport;
using ordered_json = nlohmann::ordered_json;

namespace {

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::GuardTripped: return 4;
        case ErrorKind::Precondition: return 3;
        default: return 2;
    }
}

std::string format_ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", static_cast<double>(num) / static_cast<double>(den));
    return buf;
}

struct LoadOptions {
    std::string path;
    std::string weights = "from-values";
    std::uint64_t wmin = 1;
    std::uint64_t wmax = 100;
    std::uint64_t wseed = 0;
    std::string quantize;
};

void add_load_flags(CLI::App* cmd, LoadOptions& opt) {
    cmd->add_option("-i,--input", opt.path, "Matrix Market graph file")->required();
    cmd->add_option("--weights", opt.weights, "from-values | synth")
        ->check(CLI::IsMember({"from-values", "synth"}));
    cmd->add_option("--wmin", opt.wmin, "synthetic weight lower bound");
    cmd->add_option("--wmax", opt.wmax, "synthetic weight upper bound");
    cmd->add_option("--wseed", opt.wseed, "synthetic weight seed");
    cmd->add_option("--quantize", opt.quantize, "real-valued entries: round | scale:10^k");
}

Graph load_graph(const LoadOptions& opt) {
    neuromst::QuantizeSpec q = neuromst::parse_quantize_flag(opt.quantize);
    if (opt.weights == "synth") {
        neuromst::SynthSpec spec{opt.wmin, opt.wmax, opt.wseed};
        return neuromst::load_matrix_market(opt.path, neuromst::WeightMode::Synth, spec, q);
    }
    return neuromst::load_matrix_market(opt.path, neuromst::WeightMode::FromValues, {}, q);
}

ordered_json graph_json(const std::string& path, const Graph& g, const GraphStats& stats) {
    ordered_json j;
    j["path"] = path;
    j["vertices"] = stats.vertices;
    j["edges"] = stats.edges;
    j["min_weight"] = stats.min_weight;
    j["max_weight"] = stats.max_weight;
    j["bit_width"] = stats.bit_width;
    j["components"] = stats.components;
    j["dropped_self_loops"] = g.dropped_self_loops;
    j["collapsed_duplicates"] = g.collapsed_duplicates;
    return j;
}

ordered_json meter_json(const neuromst::CostMeter& m) {
    ordered_json j;
    j["setup_steps"] = m.setup_steps;
    j["run_steps"] = m.run_steps;
    j["charged_structural_steps"] = m.charged_structural_steps;
    j["charged_time"] = m.charged_time();
    j["physical_mods"] = m.physical_mods;
    j["neurons"] = m.neuron_count;
    j["synapses"] = m.synapse_count;
    j["spikes"] = m.spike_count;
    return j;
}

ordered_json prediction_json(const neuromst::CostPrediction& p) {
    ordered_json j;
    j["time"] = p.time_steps;
    j["neurons"] = p.neuron_count;
    j["synapses"] = p.synapse_count;
    j["spikes"] = p.spike_count;
    j["alpha"] = p.alpha;
    j["bits"] = p.bits;
    j["e_proc"] = p.e_proc_used;
    return j;
}

MstReport run_algo(const Graph& g, MstAlgo algo, std::uint64_t seed,
                   std::optional<std::uint32_t> bits, std::uint32_t default_bits) {
    switch (algo) {
        case MstAlgo::Prim: return neuromst::mst_prim(g, seed);
        case MstAlgo::SeqNeuro: return neuromst::mst_seq(g, false);
        case MstAlgo::SeqRadix: return neuromst::mst_seq(g, true, bits.value_or(default_bits));
        case MstAlgo::Pipe: return neuromst::mst_pipe(g);
    }
    neuromst::fail(ErrorKind::InvalidArgument, "unknown algorithm");
}

ordered_json report_json(const MstReport& r, const Graph& g) {
    std::string diag;
    if (!neuromst::verify_mst(g, r, &diag))
        neuromst::fail(ErrorKind::Precondition, "internal: report failed verification: " + diag);
    ordered_json j;
    j["algo"] = neuromst::algo_name(r.algo);
    j["complete"] = r.complete;
    j["mst_edge_count"] = r.mst_edges.size();
    j["total_weight"] = r.total_weight;
    j["e_proc"] = r.edges_processed;
    j["t_stop"] = r.t_stop;
    if (r.algo == MstAlgo::SeqRadix) j["bits"] = r.bits_used;
    if (r.algo == MstAlgo::Prim) j["start_vertex"] = r.start_vertex;
    j["verified"] = true;
    j["measured"] = meter_json(r.measured);
    j["predicted_exact"] = prediction_json(r.predicted_exact);
    j["predicted_literal"] = prediction_json(r.predicted_literal);
    j["prediction_match"] = r.prediction_match;
    return j;
}

void emit(const ordered_json& j, const std::string& json_path) {
    std::string text = j.dump(2);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) neuromst::fail(ErrorKind::Io, json_path + ": cannot open for writing");
        out << text << '\n';
    } else {
        std::cout << text << '\n';
    }
}

int cmd_gen(std::uint32_t vertices, std::uint64_t edges, std::uint64_t wmin, std::uint64_t wmax,
            std::uint64_t seed, const std::string& out_path) {
    Graph g = neuromst::gen_random_graph(vertices, edges, wmin, wmax, seed);
    neuromst::write_matrix_market(out_path, g);
    std::cout << "wrote " << out_path << ": " << g.num_vertices << " vertices, "
              << g.edges.size() << " edges\n";
    return 0;
}

int cmd_run(const LoadOptions& load, const std::string& algo_name, std::uint64_t seed,
            std::optional<std::uint32_t> bits, const std::string& json_path) {
    auto algo = neuromst::parse_algo(algo_name);
    if (!algo) neuromst::fail(ErrorKind::InvalidArgument, "unknown --algo: " + algo_name);
    Graph g = load_graph(load);
    GraphStats stats = neuromst::graph_stats(g);

    auto t0 = std::chrono::steady_clock::now();
    MstReport r = run_algo(g, *algo, seed, bits, stats.bit_width);
    auto t1 = std::chrono::steady_clock::now();

    ordered_json j;
    j["schema"] = 1;
    j["graph"] = graph_json(load.path, g, stats);
    ordered_json config;
    config["algo"] = algo_name;
    config["seed"] = seed;
    config["bits"] = bits ? ordered_json(*bits) : ordered_json(nullptr);
    config["weights"] = load.weights;
    config["quantize"] = load.quantize.empty() ? "none" : load.quantize;
    j["config"] = config;
    ordered_json body = report_json(r, g);
    for (auto& [k, v] : body.items()) j[k] = v;
    j["wall_clock_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    emit(j, json_path);
    return 0;
}

int cmd_compare(const LoadOptions& load, const std::string& algos_csv, std::uint64_t seed,
                std::optional<std::uint32_t> bits, unsigned jobs, const std::string& csv_path,
                const std::string& json_path) {
    Graph g = load_graph(load);
    GraphStats stats = neuromst::graph_stats(g);

    std::vector<MstAlgo> algos;
    {
        std::stringstream ss(algos_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            auto a = neuromst::parse_algo(tok);
            if (!a) neuromst::fail(ErrorKind::InvalidArgument, "unknown algorithm: " + tok);
            algos.push_back(*a);
        }
        if (algos.empty()) neuromst::fail(ErrorKind::InvalidArgument, "no algorithms selected");
    }

    struct Row {
        MstAlgo algo;
        bool ok = false;
        std::string error;
        MstReport report;
    };
    std::vector<Row> rows(algos.size());
    for (std::size_t i = 0; i < algos.size(); ++i) rows[i].algo = algos[i];

    // Runs are pure per-network; workers pick rows, assembly stays ordered.
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= rows.size()) return;
            try {
                rows[i].report = run_algo(g, rows[i].algo, seed, bits, stats.bit_width);
                rows[i].ok = true;
            } catch (const std::exception& e) {
                rows[i].error = e.what();
            }
        }
    };
    unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, rows.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::uint64_t prim_time = 0, radix_time = 0, pipe_time = 0;
    for (const Row& row : rows) {
        if (!row.ok) continue;
        std::uint64_t t = row.report.measured.charged_time();
        if (row.algo == MstAlgo::Prim) prim_time = t;
        if (row.algo == MstAlgo::SeqRadix) radix_time = t;
        if (row.algo == MstAlgo::Pipe) pipe_time = t;
    }
    std::string pipe_over_radix = (radix_time && pipe_time) ? format_ratio(radix_time, pipe_time) : "";

    // CSV: fixed columns, speedups at two decimals, wall clock excluded so
    // output is byte-stable across --jobs.
    std::ostringstream csv;
    csv << "graph,algo,time,neurons,synapses,spikes,E_proc,speedup_vs_prim,pipe_over_seqradix\n";
    for (const Row& row : rows) {
        if (!row.ok) {
            std::cerr << "compare: " << neuromst::algo_name(row.algo) << " failed: " << row.error
                      << '\n';
            continue;
        }
        const auto& m = row.report.measured;
        csv << load.path << ',' << neuromst::algo_name(row.algo) << ',' << m.charged_time() << ','
            << m.neuron_count << ',' << m.synapse_count << ',' << m.spike_count << ','
            << row.report.edges_processed << ','
            << (prim_time ? format_ratio(prim_time, m.charged_time()) : "") << ','
            << pipe_over_radix << '\n';
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) neuromst::fail(ErrorKind::Io, csv_path + ": cannot open for writing");
        out << csv.str();
    } else {
        std::cout << csv.str();
    }

    if (!json_path.empty() || csv_path.empty()) {
        ordered_json j;
        j["schema"] = 1;
        j["graph"] = graph_json(load.path, g, stats);
        ordered_json jrows = ordered_json::array();
        for (const Row& row : rows) {
            if (!row.ok) {
                ordered_json jr;
                jr["algo"] = neuromst::algo_name(row.algo);
                jr["error"] = row.error;
                jrows.push_back(jr);
                continue;
            }
            ordered_json jr = report_json(row.report, g);
            jr["speedup_vs_prim"] =
                prim_time ? ordered_json(format_ratio(prim_time, row.report.measured.charged_time()))
                          : ordered_json(nullptr);
            jrows.push_back(jr);
        }
        j["rows"] = jrows;
        j["pipe_over_seqradix"] =
            pipe_over_radix.empty() ? ordered_json(nullptr) : ordered_json(pipe_over_radix);
        if (!json_path.empty()) emit(j, json_path);
    }
    return 0;
}

int cmd_analyze(const LoadOptions& load, const std::string& json_path) {
    Graph g = load_graph(load);
    GraphStats stats = neuromst::graph_stats(g);

    ordered_json j;
    j["schema"] = 1;
    j["graph"] = graph_json(load.path, g, stats);
    ordered_json comps = ordered_json::array();

    auto analyze_one = [&](const Graph& sub) {
        GraphStats s = neuromst::graph_stats(sub);
        auto advice = neuromst::bottleneck_advice(s, s.t_last);
        ordered_json c;
        c["vertices"] = s.vertices;
        c["edges"] = s.edges;
        c["bit_width"] = s.bit_width;
        c["radix_sort_steps"] = advice.radix_sort_steps;
        c["enumeration_steps"] =
            advice.enumeration_steps ? ordered_json(*advice.enumeration_steps) : ordered_json(nullptr);
        c["margin"] = advice.margin;
        c["recommendation"] =
            advice.recommendation == neuromst::BottleneckAdvice::Choice::Pipe ? "pipe" : "seq-radix";
        c["rationale"] = advice.rationale;
        comps.push_back(c);
    };

    if (stats.components <= 1) {
        analyze_one(g);
    } else {
        j["warning"] = "graph is disconnected; analysis is per component";
        // Split into component subgraphs with dense local ids.
        std::vector<std::uint32_t> parent(g.num_vertices);
        for (std::uint32_t v = 0; v < g.num_vertices; ++v) parent[v] = v;
        std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (const auto& e : g.edges) parent[find(e.u)] = find(e.v);
        std::unordered_map<std::uint32_t, std::uint32_t> comp_of_root;
        std::vector<Graph> subs;
        std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> local;
        for (std::uint32_t v = 0; v < g.num_vertices; ++v) {
            std::uint32_t root = find(v);
            auto [it, fresh] = comp_of_root.try_emplace(root, static_cast<std::uint32_t>(subs.size()));
            if (fresh) {
                subs.emplace_back();
                local.emplace_back();
            }
            Graph& sub = subs[it->second];
            local[it->second].emplace(v, sub.num_vertices);
            sub.num_vertices += 1;
        }
        for (const auto& e : g.edges) {
            std::uint32_t c = comp_of_root.at(find(e.u));
            Graph& sub = subs[c];
            sub.edges.push_back(neuromst::Edge{e.weight, local[c].at(e.u), local[c].at(e.v),
                                               static_cast<std::uint32_t>(sub.edges.size())});
        }
        for (const Graph& sub : subs) analyze_one(sub);
    }
    j["components_analyzed"] = comps;
    emit(j, json_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spiking-network MST benchmark harness"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded random connected graph");
    std::uint32_t gen_vertices = 0;
    std::uint64_t gen_edges = 0, gen_wmin = 1, gen_wmax = 100, gen_seed = 0;
    std::string gen_out;
    gen->add_option("-v,--vertices", gen_vertices)->required();
    gen->add_option("-e,--edges", gen_edges)->required();
    gen->add_option("--wmin", gen_wmin);
    gen->add_option("--wmax", gen_wmax);
    gen->add_option("-s,--seed", gen_seed);
    gen->add_option("-o,--out", gen_out)->required();

    // run
    auto* run = app.add_subcommand("run", "run one MST algorithm and report costs");
    LoadOptions run_load;
    std::string run_algo_name;
    std::uint64_t run_seed = 0;
    std::uint32_t run_bits = 0;
    std::string run_json;
    add_load_flags(run, run_load);
    run->add_option("-a,--algo", run_algo_name, "prim | seq-neuro | seq-radix | pipe")->required();
    run->add_option("-s,--seed", run_seed, "Prim start-vertex seed");
    run->add_option("-b,--bits", run_bits, "preset radix bit width");
    run->add_option("--json", run_json, "write the JSON report here instead of stdout");

    // compare
    auto* cmp = app.add_subcommand("compare", "run several algorithms and tabulate");
    LoadOptions cmp_load;
    std::string cmp_algos = "prim,seq-neuro,seq-radix,pipe";
    std::uint64_t cmp_seed = 0;
    std::uint32_t cmp_bits = 0;
    unsigned cmp_jobs = 1;
    std::string cmp_csv, cmp_json;
    add_load_flags(cmp, cmp_load);
    cmp->add_option("--algos", cmp_algos, "comma-separated algorithm list");
    cmp->add_option("-s,--seed", cmp_seed);
    cmp->add_option("-b,--bits", cmp_bits);
    cmp->add_option("-j,--jobs", cmp_jobs, "worker threads");
    cmp->add_option("--csv", cmp_csv, "write the CSV table here");
    cmp->add_option("--json", cmp_json, "write the JSON table here");

    // analyze
    auto* anl = app.add_subcommand("analyze", "pipe vs seq-radix bottleneck analysis");
    LoadOptions anl_load;
    std::string anl_json;
    add_load_flags(anl, anl_load);
    anl->add_option("--json", anl_json, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_vertices, gen_edges, gen_wmin, gen_wmax, gen_seed, gen_out);
        if (run->parsed())
            return cmd_run(run_load, run_algo_name, run_seed,
                           run_bits ? std::optional<std::uint32_t>(run_bits) : std::nullopt, run_json);
        if (cmp->parsed())
            return cmd_compare(cmp_load, cmp_algos, cmp_seed,
                               cmp_bits ? std::optional<std::uint32_t>(cmp_bits) : std::nullopt,
                               cmp_jobs, cmp_csv, cmp_json);
        if (anl->parsed()) return cmd_analyze(anl_load, anl_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
