#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "neuromst/substrate.hpp"

namespace neuromst {

// Spike-driven union-find: a source with two retargetable query synapses plus
// one neuron and one parent synapse per vertex (self-loops at roots). A find
// retargets the source synapses to the queried endpoints (charge 2) and fires
// the source once; each endpoint's spike walks its parent chain at frozen
// logical time inside a private sub-step rank window, and the probe's root is
// the last neuron to fire in that window. Unions happen under suspension:
// union-by-rank plus path compression in one rewire batch charged alpha(|V|).
// Every query costs 2 + alpha(|V|) charged steps and four spikes.
class UnionFindNet {
public:
    // Standalone net (owns its substrate).
    explicit UnionFindNet(std::uint32_t num_vertices);
    // Builds into a shared substrate. with_query_source=false is the
    // pipelined layout: no source, queries arrive over pipe synapses.
    UnionFindNet(Network& net, std::uint32_t num_vertices, bool with_query_source);

    struct FindResult {
        std::uint32_t root_a = 0;
        std::uint32_t root_b = 0;
        std::uint32_t root_count = 1;
    };

    // Charge 2, four spikes; no structural change to the forest.
    FindResult find(std::uint32_t u, std::uint32_t v);
    // Requires the immediately preceding find of the same pair with two
    // roots; one rewire batch charged alpha(|V|).
    void unite(std::uint32_t u, std::uint32_t v);
    // find + (unite | reject); charged 2 + alpha(|V|) and four spikes per
    // query whether or not the edge is accepted.
    bool query_edge(std::uint32_t u, std::uint32_t v);

    std::uint32_t num_vertices() const { return n_; }
    std::uint32_t accepted_count() const { return accepted_; }
    std::uint32_t alpha() const { return alpha_; }
    Network& network() { return *net_; }
    const Network& network() const { return *net_; }
    std::uint64_t rank_window() const { return window_; }
    NeuronId vertex_neuron(std::uint32_t x) const { return vertex_[x]; }
    bool is_vertex_neuron(NeuronId n) const {
        return n < vertex_of_neuron_.size() && vertex_of_neuron_[n] != kNotVertex;
    }

    // Diagnostics: pure reads of the parent-synapse forest, no activity.
    std::uint32_t peek_parent(std::uint32_t x) const;
    std::uint32_t peek_root(std::uint32_t x) const;

    // --- pipelined driving (no query source) ---
    // Announce that the two probes of edge (u, v) will arrive in the given
    // rank windows of the current timestep.
    void begin_submission(std::uint32_t u, std::uint32_t v, std::uint64_t window_u,
                          std::uint64_t window_v);
    // Feed vertex-neuron fires observed by the caller's run observer.
    void note_vertex_fire(const FireEvent& ev);
    // Called on (time, window) group boundaries; when the boundary completes
    // a pipelined submission (union or reject applied, query charged),
    // returns whether the edge was accepted.
    std::optional<bool> handle_boundary(std::uint64_t time, std::uint64_t window);

private:
    static constexpr std::uint32_t kNotVertex = 0xffffffffu;

    void build(std::uint32_t num_vertices, bool with_query_source);
    void resolve_probe(int stage); // 0: endpoint u, 1: endpoint v
    void apply_union(std::uint32_t root_a, std::uint32_t root_b,
                     const std::vector<std::uint32_t>& visited_a,
                     const std::vector<std::uint32_t>& visited_b);
    bool complete_submission(bool full_query); // -> accepted (full_query mode)

    std::unique_ptr<Network> owned_;
    Network* net_ = nullptr;
    std::uint32_t n_ = 0;
    std::uint32_t alpha_ = 0;
    std::uint64_t window_ = 0;

    NeuronId source_ = kNoNeuron;
    SynapseId query_a_ = kNoSynapse;
    SynapseId query_b_ = kNoSynapse;
    std::vector<NeuronId> vertex_;
    std::vector<SynapseId> parent_syn_;
    std::vector<std::uint32_t> vertex_of_neuron_;
    std::vector<std::uint32_t> rank_;
    std::uint32_t accepted_ = 0;

    // In-flight probes of one query.
    struct Submission {
        bool active = false;
        bool full_query = false; // pipelined: union/reject on completion
        std::uint32_t u = 0, v = 0;
        std::uint64_t window_u = 0, window_v = 0;
        int resolved_stages = 0;
        std::uint32_t root[2] = {0, 0};
        bool have_root[2] = {false, false};
        std::vector<std::uint32_t> visited[2];
        std::vector<std::uint32_t> fires[2];
    };
    Submission sub_;

    // Result of the latest find, consumed by unite/query_edge.
    struct LastFind {
        bool valid = false;
        std::uint32_t u = 0, v = 0;
        FindResult result;
        std::vector<std::uint32_t> visited_a, visited_b;
    };
    LastFind last_find_;
};

} // namespace neuromst
