#include "neuromst/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace neuromst {

namespace {

// Plain array DSU for the oracle path; rank and tie rules match the SNN
// union-find so partitions can be compared 1:1 in tests.
struct Dsu {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> rank;

    explicit Dsu(std::uint32_t n) : parent(n), rank(n, 0) {
        std::iota(parent.begin(), parent.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            std::uint32_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }

    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank[a] < rank[b]) std::swap(a, b);
        if (rank[a] == rank[b]) {
            if (b < a) std::swap(a, b); // tie: smaller id becomes the parent
            ++rank[a];
        }
        parent[b] = a;
        return true;
    }
};

} // namespace

OracleMst classical_kruskal(const Graph& g) {
    OracleMst out;
    std::vector<std::uint32_t> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (g.edges[a].weight != g.edges[b].weight) return g.edges[a].weight < g.edges[b].weight;
        return g.edges[a].input_index < g.edges[b].input_index;
    });
    Dsu dsu(g.num_vertices);
    std::uint64_t position = 0;
    std::uint64_t last_accept_position = 0;
    for (std::uint32_t idx : order) {
        const Edge& e = g.edges[idx];
        ++position;
        if (e.u == e.v) continue;
        if (dsu.unite(e.u, e.v)) {
            out.total_weight += e.weight;
            out.heaviest_edge = std::max(out.heaviest_edge, e.weight);
            out.edge_count += 1;
            out.chosen.push_back(e.input_index);
            last_accept_position = position;
        }
    }
    out.components = g.num_vertices == 0 ? 0 : g.num_vertices - out.edge_count;
    out.e_proc = (out.components <= 1) ? last_accept_position : g.edges.size();
    return out;
}

std::uint32_t count_components(const Graph& g) {
    Dsu dsu(g.num_vertices);
    std::uint32_t merges = 0;
    for (const Edge& e : g.edges) {
        if (e.u != e.v && dsu.unite(e.u, e.v)) ++merges;
    }
    return g.num_vertices - merges;
}

std::uint32_t weight_bit_width(std::uint64_t max_weight) {
    return max_weight == 0 ? 1u : static_cast<std::uint32_t>(std::bit_width(max_weight));
}

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    s.vertices = g.num_vertices;
    s.edges = g.edges.size();
    if (!g.edges.empty()) {
        s.min_weight = g.edges.front().weight;
        s.max_weight = g.edges.front().weight;
        for (const Edge& e : g.edges) {
            s.min_weight = std::min(s.min_weight, e.weight);
            s.max_weight = std::max(s.max_weight, e.weight);
        }
    }
    s.bit_width = weight_bit_width(s.max_weight);
    OracleMst mst = classical_kruskal(g);
    s.components = g.num_vertices == 0 ? 0 : mst.components;
    s.forest_weight = mst.total_weight;
    s.forest_heaviest = mst.heaviest_edge;
    if (s.components <= 1) {
        s.t_last = mst.heaviest_edge;
        s.mst_weight = mst.total_weight;
    }
    return s;
}

} // namespace neuromst
