#include "neuromst/mst.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "neuromst/error.hpp"
#include "neuromst/graphio.hpp"
#include "neuromst/sorters.hpp"
#include "neuromst/unionfind.hpp"

namespace neuromst {

namespace {

void require_simple_edges(const Graph& g) {
    if (g.num_vertices == 0)
        fail(ErrorKind::Precondition, "mst: empty graph");
    for (const Edge& e : g.edges) {
        if (e.u >= g.num_vertices || e.v >= g.num_vertices)
            fail(ErrorKind::InvalidArgument, "mst: edge endpoint out of range");
        if (e.u == e.v)
            fail(ErrorKind::Precondition, "mst: self-loop edges must be dropped at ingestion");
    }
}

// Non-termination guard: generous multiple of the worst honest run, or the
// NEUROMST_MAX_STEPS override.
void apply_guard(Network& net, const Graph& g) {
    std::uint64_t max_w = 0;
    for (const Edge& e : g.edges) max_w = std::max(max_w, e.weight);
    std::uint64_t alpha = inverse_ackermann(g.num_vertices);
    std::uint64_t guard = 2 * (max_w + (2 + alpha) * (g.edges.size() + 1)) + 16;
    if (const char* env = std::getenv("NEUROMST_MAX_STEPS")) {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') guard = v;
    }
    net.set_max_time(guard);
}

void fill_predictions(MstReport& r, const Graph& g, const MstOracleInfo& info,
                      std::optional<std::uint32_t> bits) {
    GraphStats stats;
    stats.vertices = g.num_vertices;
    stats.edges = g.edges.size();
    for (const Edge& e : g.edges) stats.max_weight = std::max(stats.max_weight, e.weight);
    stats.bit_width = weight_bit_width(stats.max_weight);
    r.predicted_exact = predict(r.algo, stats, info, true, bits);
    r.predicted_literal = predict(r.algo, stats, info, false, bits);
    r.prediction_match = r.predicted_exact.time_steps == r.measured.charged_time() &&
                         r.predicted_exact.spike_count == r.measured.spike_count &&
                         r.predicted_exact.neuron_count == r.measured.neuron_count &&
                         r.predicted_exact.synapse_count == r.measured.synapse_count;
}

} // namespace

std::vector<EffectiveEdge> deduplicate(std::span<const Edge> edges) {
    std::vector<std::uint32_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return edges[a].input_index < edges[b].input_index;
    });
    std::unordered_map<std::uint64_t, std::uint64_t> next_offset;
    std::vector<EffectiveEdge> out(edges.size());
    for (std::uint32_t idx : order) {
        std::uint64_t w = edges[idx].weight;
        out[idx] = EffectiveEdge{w, next_offset[w]++};
    }
    return out;
}

std::uint64_t predict_prim_spikes(const Graph& g, std::uint32_t start_vertex) {
    // Component sizes in deterministic join order: the start's component
    // first, then components by smallest remaining vertex id.
    std::vector<std::int64_t> comp(g.num_vertices, -1);
    std::vector<std::vector<std::uint32_t>> adj(g.num_vertices);
    for (const Edge& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<std::uint64_t> comp_size;
    std::vector<std::uint32_t> comp_min;
    for (std::uint32_t v = 0; v < g.num_vertices; ++v) {
        if (comp[v] >= 0) continue;
        std::uint32_t id = static_cast<std::uint32_t>(comp_size.size());
        std::uint64_t size = 0;
        std::vector<std::uint32_t> stack{v};
        comp[v] = id;
        while (!stack.empty()) {
            std::uint32_t x = stack.back();
            stack.pop_back();
            ++size;
            for (std::uint32_t y : adj[x]) {
                if (comp[y] < 0) {
                    comp[y] = id;
                    stack.push_back(y);
                }
            }
        }
        comp_size.push_back(size);
        comp_min.push_back(v);
    }
    std::vector<std::uint32_t> join_order;
    join_order.push_back(static_cast<std::uint32_t>(comp[start_vertex]));
    for (std::uint32_t c = 0; c < comp_size.size(); ++c) {
        if (c != join_order.front()) join_order.push_back(c);
    }
    std::sort(join_order.begin() + 1, join_order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return comp_min[a] < comp_min[b]; });

    std::uint64_t spikes = 0;
    std::uint64_t joined = 0;
    bool first = true;
    for (std::uint32_t c : join_order) {
        if (!first) spikes += joined; // dead scan before switching components
        first = false;
        joined += 1; // the component's start joins silently
        for (std::uint64_t j = 1; j < comp_size[c]; ++j) {
            spikes += joined + 1; // members re-fire plus the accepted vertex
            joined += 1;
        }
    }
    return spikes;
}

MstOracleInfo oracle_info_for(const Graph& g, MstAlgo algo, std::uint32_t prim_start) {
    OracleMst oracle = classical_kruskal(g);
    MstOracleInfo info;
    info.mst_weight = oracle.total_weight;
    info.e_proc = oracle.e_proc;
    std::uint64_t max_w = 0;
    for (const Edge& e : g.edges) max_w = std::max(max_w, e.weight);
    // A disconnected run exhausts the sort kernel, so the pipeline stops at
    // the largest weight rather than the heaviest forest edge.
    info.t_last = (oracle.components <= 1) ? oracle.heaviest_edge : max_w;
    if (algo == MstAlgo::Prim) info.prim_spikes = predict_prim_spikes(g, prim_start);
    return info;
}

MstReport mst_prim(const Graph& g, std::uint64_t seed) {
    require_simple_edges(g);
    const std::uint32_t V = g.num_vertices;
    MstReport report;
    report.algo = MstAlgo::Prim;

    Network net;
    apply_guard(net, g);
    std::vector<NeuronId> vertex(V);
    for (std::uint32_t x = 0; x < V; ++x) vertex[x] = net.add_neuron(1, 1, NeuronRole::Value);

    std::vector<EffectiveEdge> eff = deduplicate(g.edges);
    struct EdgeSynapses {
        SynapseId forward = kNoSynapse;
        SynapseId backward = kNoSynapse;
    };
    std::vector<EdgeSynapses> edge_syn(g.edges.size());
    std::unordered_map<SynapseId, std::uint32_t> edge_of_synapse;
    std::vector<std::vector<std::uint32_t>> incident(V);
    for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
        const Edge& e = g.edges[i];
        try {
            edge_syn[i].forward = net.add_synapse(vertex[e.u], vertex[e.v], 1,
                                                  static_cast<std::int64_t>(e.weight),
                                                  eff[i].offset);
            edge_syn[i].backward = net.add_synapse(vertex[e.v], vertex[e.u], 1,
                                                   static_cast<std::int64_t>(e.weight),
                                                   eff[i].offset);
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::DuplicateSynapse)
                fail(ErrorKind::Precondition,
                     "prim: cannot operate on graphs with multiple edges between a vertex pair");
            throw;
        }
        edge_of_synapse.emplace(edge_syn[i].forward, i);
        edge_of_synapse.emplace(edge_syn[i].backward, i);
        incident[e.u].push_back(i);
        incident[e.v].push_back(i);
    }

    SplitRng rng(seed);
    const std::uint32_t start = static_cast<std::uint32_t>(rng.below(V));
    report.start_vertex = start;

    std::vector<bool> member(V, false);
    std::vector<std::uint32_t> members;
    members.reserve(V);
    auto join = [&](std::uint32_t x) {
        member[x] = true;
        members.push_back(x);
        // Edges closed inside the tree go quiet: zero weight and delay so
        // they can never fire a vertex nor stretch a scan.
        std::vector<SynapseMod> mods;
        for (std::uint32_t i : incident[x]) {
            std::uint32_t other = (g.edges[i].u == x) ? g.edges[i].v : g.edges[i].u;
            if (!member[other]) continue;
            mods.push_back(SynapseMod{edge_syn[i].forward, {}, 0, 0, {}});
            mods.push_back(SynapseMod{edge_syn[i].backward, {}, 0, 0, {}});
        }
        if (!mods.empty()) net.rewire(mods, 0);
    };
    join(start);

    std::uint32_t accepted_vertex = 0;
    std::uint32_t accepted_edge = 0;
    bool accepted = false;
    RunObserver obs;
    obs.on_fire = [&](const FireEvent& ev) {
        std::uint32_t x = ev.neuron; // vertex ids equal neuron ids here
        if (member[x]) return Directive::Continue;
        accepted_vertex = x;
        accepted_edge = edge_of_synapse.at(ev.cause);
        accepted = true;
        return Directive::Stop; // stop activity; the scan restarts from t = 0
    };

    std::uint32_t next_unvisited = 0;
    while (members.size() < V) {
        net.reset_activity();
        for (std::uint32_t m : members) net.inject(m, 0);
        accepted = false;
        net.run(obs);
        if (accepted) {
            join(accepted_vertex);
            report.mst_edges.push_back(g.edges[accepted_edge]);
            report.total_weight += g.edges[accepted_edge].weight;
        } else {
            // Component exhausted: continue the forest from the smallest
            // unvisited vertex.
            while (next_unvisited < V && member[next_unvisited]) ++next_unvisited;
            join(next_unvisited);
        }
    }

    report.complete = report.mst_edges.size() + 1 == V;
    report.t_stop = 0;
    report.measured = net.meter_snapshot();
    fill_predictions(report, g, oracle_info_for(g, MstAlgo::Prim, start), {});
    return report;
}

MstReport mst_seq(const Graph& g, bool radix, std::optional<std::uint32_t> bits) {
    require_simple_edges(g);
    const std::uint32_t V = g.num_vertices;
    MstReport report;
    report.algo = radix ? MstAlgo::SeqRadix : MstAlgo::SeqNeuro;

    std::vector<std::uint64_t> weights(g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) weights[i] = g.edges[i].weight;

    Network net;
    apply_guard(net, g);
    SortKernel kernel(net, weights);
    UnionFindNet uf(net, V, true);

    std::vector<std::uint32_t> order;
    if (radix) {
        std::uint64_t max_w = 0;
        for (std::uint64_t w : weights) max_w = std::max(max_w, w);
        report.bits_used = bits.value_or(weight_bit_width(max_w));
        if (report.bits_used < 64) {
            for (std::uint64_t w : weights)
                if (w >= (1ull << report.bits_used))
                    fail(ErrorKind::InvalidArgument, "seq-radix: weight exceeds the preset bit width");
        }
        order.resize(weights.size());
        std::iota(order.begin(), order.end(), 0u);
        for (std::uint32_t b = 0; b < report.bits_used; ++b) order = kernel.run_radix_pass(b, order);
    } else {
        order = kernel.run_delay_sort();
    }
    report.t_stop = net.clock();

    // The sort always runs to completion; only the union-find stage exits
    // early once the tree is spanned.
    for (std::uint32_t idx : order) {
        if (uf.accepted_count() + 1 == V) break;
        const Edge& e = g.edges[idx];
        report.edges_processed += 1;
        if (uf.query_edge(e.u, e.v)) {
            report.mst_edges.push_back(e);
            report.total_weight += e.weight;
        }
    }

    report.complete = (uf.accepted_count() + 1 == V);
    report.measured = net.meter_snapshot();
    fill_predictions(report, g, oracle_info_for(g, report.algo), report.bits_used
                                                                     ? std::optional<std::uint32_t>(report.bits_used)
                                                                     : std::nullopt);
    return report;
}

MstReport mst_pipe(const Graph& g) {
    require_simple_edges(g);
    const std::uint32_t V = g.num_vertices;
    MstReport report;
    report.algo = MstAlgo::Pipe;

    std::vector<std::uint64_t> weights(g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) weights[i] = g.edges[i].weight;

    Network net;
    apply_guard(net, g);
    const std::uint64_t K = static_cast<std::uint64_t>(V) + 8; // one rank window per probe
    // Each edge neuron owns three windows of the timestep it fires in: its
    // own fire, then one probe window per endpoint.
    SortKernel kernel(net, weights, 3 * K);
    UnionFindNet uf(net, V, false);
    net.set_spike_weight(NeuronRole::Value, 2); // a sort firing drives two pipes

    struct Pipes {
        SynapseId to_u = kNoSynapse;
        SynapseId to_v = kNoSynapse;
    };
    std::vector<Pipes> pipes(g.edges.size());
    for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
        pipes[i].to_u = net.add_synapse(kernel.value_neuron(i), uf.vertex_neuron(g.edges[i].u), 1, 0, 0);
        pipes[i].to_v = net.add_synapse(kernel.value_neuron(i), uf.vertex_neuron(g.edges[i].v), 1, 0, 0);
    }

    std::deque<std::uint32_t> submitted; // edge indices, FIFO with completions
    bool done = (V == 1);
    RunObserver obs;
    obs.on_fire = [&](const FireEvent& ev) {
        if (ev.role == NeuronRole::UfVertex) {
            uf.note_vertex_fire(ev);
            return Directive::Continue;
        }
        if (ev.role != NeuronRole::Value) return Directive::Continue;
        // A sort-kernel firing: configure this edge's pipes (the submission
        // serialization), then let the spike transmit.
        std::uint32_t i = kernel.index_of_neuron(ev.neuron);
        uf.begin_submission(g.edges[i].u, g.edges[i].v, ev.window + 1, ev.window + 2);
        SynapseMod mods[2];
        mods[0].synapse = pipes[i].to_u;
        mods[0].rank = K - 1; // lands in the next rank window
        mods[1].synapse = pipes[i].to_v;
        mods[1].rank = 2 * K - 1;
        net.rewire(mods, 2);
        submitted.push_back(i);
        return Directive::Continue;
    };
    obs.on_boundary = [&](std::uint64_t t, std::uint64_t w) {
        auto completed = uf.handle_boundary(t, w);
        if (!completed) return Directive::Continue;
        report.edges_processed += 1;
        std::uint32_t i = submitted.front();
        submitted.pop_front();
        if (*completed) {
            report.mst_edges.push_back(g.edges[i]);
            report.total_weight += g.edges[i].weight;
            if (uf.accepted_count() + 1 == V) {
                done = true;
                return Directive::Stop; // cancel in-flight sorting; clock stays here
            }
        }
        return Directive::Continue;
    };

    if (!done) {
        net.inject(kernel.source(), 0);
        net.run(obs);
        done = (uf.accepted_count() + 1 == V);
    }

    report.complete = (V == 1) || done;
    report.t_stop = net.clock();
    report.measured = net.meter_snapshot();
    fill_predictions(report, g, oracle_info_for(g, MstAlgo::Pipe), {});
    return report;
}

bool verify_mst(const Graph& g, const MstReport& report, std::string* diagnostic) {
    auto explain = [&](const std::string& msg) {
        if (diagnostic) *diagnostic = msg;
        return false;
    };
    OracleMst oracle = classical_kruskal(g);

    if (report.complete != (oracle.components <= 1))
        return explain("completeness flag disagrees with the component count");
    if (report.mst_edges.size() != oracle.edge_count)
        return explain("forest edge count differs from the oracle");

    // Spanning forest validity: every reported edge must merge two sets.
    std::vector<std::uint32_t> parent(g.num_vertices);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::uint64_t total = 0;
    for (const Edge& e : report.mst_edges) {
        if (e.u >= g.num_vertices || e.v >= g.num_vertices)
            return explain("reported edge endpoint out of range");
        std::uint32_t a = find(e.u), b = find(e.v);
        if (a == b) return explain("reported edges contain a cycle");
        parent[a] = b;
        total += e.weight;
    }
    if (total != report.total_weight)
        return explain("reported total weight does not match its edges");
    if (total != oracle.total_weight)
        return explain("forest weight differs from the oracle");

    // All minimum spanning forests share one weight multiset.
    std::vector<std::uint64_t> got, want;
    for (const Edge& e : report.mst_edges) got.push_back(e.weight);
    for (std::uint32_t idx : oracle.chosen) want.push_back(g.edges[idx].weight);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) return explain("forest weight multiset differs from the oracle");
    return true;
}

} // namespace neuromst
