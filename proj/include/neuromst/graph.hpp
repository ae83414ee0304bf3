#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace neuromst {

// Undirected weighted edge; weights are whole numbers because they are used
// as synaptic delays. input_index is the tie-break identity for stable
// orderings and fractional-offset deduplication.
struct Edge {
    std::uint64_t weight = 0;
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    std::uint32_t input_index = 0;
};

struct Graph {
    std::uint32_t num_vertices = 0;
    std::vector<Edge> edges;
    // Ingestion diagnostics surfaced in reports.
    std::uint64_t dropped_self_loops = 0;
    std::uint64_t collapsed_duplicates = 0;
};

// Classical (non-neuromorphic) Kruskal reference: the independent oracle the
// simulators are checked against.
struct OracleMst {
    std::uint64_t total_weight = 0;
    std::uint32_t edge_count = 0;
    std::uint64_t heaviest_edge = 0; // t_last: weight of the heaviest chosen edge
    std::uint32_t components = 1;
    // Edges a sorted-order Kruskal submits before the forest completes:
    // 1-based position of the last accepted edge, or |E| when no spanning
    // tree exists (the whole list is exhausted).
    std::uint64_t e_proc = 0;
    std::vector<std::uint32_t> chosen; // input indices of forest edges
};

OracleMst classical_kruskal(const Graph& g);

std::uint32_t count_components(const Graph& g);

// b: bits needed for the largest weight (1 for an all-zero range).
std::uint32_t weight_bit_width(std::uint64_t max_weight);

struct GraphStats {
    std::uint32_t vertices = 0;
    std::uint64_t edges = 0;
    std::uint64_t min_weight = 0;
    std::uint64_t max_weight = 0;
    std::uint32_t bit_width = 1;
    std::uint32_t components = 1;
    // Oracle-derived; absent for disconnected graphs.
    std::optional<std::uint64_t> t_last;
    std::optional<std::uint64_t> mst_weight;
    // Forest values (defined for any graph).
    std::uint64_t forest_weight = 0;
    std::uint64_t forest_heaviest = 0;
};

GraphStats graph_stats(const Graph& g);

} // namespace neuromst
