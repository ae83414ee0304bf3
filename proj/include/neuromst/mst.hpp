#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neuromst/costmodel.hpp"
#include "neuromst/graph.hpp"
#include "neuromst/substrate.hpp"

namespace neuromst {

// Fractional-offset deduplication realized as sub-step ranks: edges sharing a
// base weight get distinct offsets (by input index) so exactly one neuron
// fires first per scan. Base weights are untouched; meters count them only.
struct EffectiveEdge {
    std::uint64_t base = 0;
    std::uint64_t offset = 0;
};

std::vector<EffectiveEdge> deduplicate(std::span<const Edge> edges);

struct MstReport {
    MstAlgo algo = MstAlgo::Prim;
    std::vector<Edge> mst_edges;
    std::uint64_t total_weight = 0;
    bool complete = false;
    std::uint64_t edges_processed = 0; // union-find submissions (E_proc)
    std::uint64_t t_stop = 0;          // logical time the run ended at
    std::uint32_t bits_used = 0;       // radix sorts only
    std::uint32_t start_vertex = 0;    // Prim only
    CostMeter measured;
    CostPrediction predicted_exact;
    CostPrediction predicted_literal;
    bool prediction_match = false;
};

// Neuromorphic Prim's: graph embedded as vertex neurons plus two directed
// synapses per edge; every scan re-fires the tree vertices and the first
// outside fire is the accepted crossing edge. Seeded start vertex.
MstReport mst_prim(const Graph& g, std::uint64_t seed);

// Sequential Kruskal's: full delay sort (or radix with the given bit width),
// then sorted edges submitted to the union-find SNN until |V|-1 accepted.
MstReport mst_seq(const Graph& g, bool radix, std::optional<std::uint32_t> bits = {});

// Pipelined Kruskal's: sort kernel and union-find joined by per-edge pipe
// pairs in one network; each sort firing reconfigures its pipes and submits
// immediately, and the run stops the moment the tree completes.
MstReport mst_pipe(const Graph& g);

// Classical cross-check of a report: spanning forest validity, weight
// equality and MST weight-multiset equality against the oracle.
bool verify_mst(const Graph& g, const MstReport& report, std::string* diagnostic = nullptr);

// Deterministic fire count of the Prim embedding, derived classically from
// the component structure and the join-order rule (exact-mode prediction).
std::uint64_t predict_prim_spikes(const Graph& g, std::uint32_t start_vertex);

// Oracle facts packaged for predict(); never read from a simulator.
MstOracleInfo oracle_info_for(const Graph& g, MstAlgo algo, std::uint32_t prim_start = 0);

} // namespace neuromst
