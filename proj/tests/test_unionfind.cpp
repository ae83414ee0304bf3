#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "neuromst/costmodel.hpp"
#include "neuromst/graphio.hpp"
#include "neuromst/unionfind.hpp"

using namespace neuromst;

namespace {

// Test-side classical disjoint set with the same rank and tie rules.
struct OracleDsu {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> rank;

    explicit OracleDsu(std::uint32_t n) : parent(n), rank(n, 0) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank[a] < rank[b]) std::swap(a, b);
        if (rank[a] == rank[b]) {
            if (b < a) std::swap(a, b);
            ++rank[a];
        }
        parent[b] = a;
        return true;
    }
};

// Partition signature: canonical root per vertex.
std::vector<std::uint32_t> partition_of(UnionFindNet& uf) {
    std::vector<std::uint32_t> roots(uf.num_vertices());
    std::vector<std::int64_t> label(uf.num_vertices(), -1);
    for (std::uint32_t v = 0; v < uf.num_vertices(); ++v) {
        std::uint32_t r = uf.peek_root(v);
        if (label[r] < 0) label[r] = v;
        roots[v] = static_cast<std::uint32_t>(label[r]);
    }
    return roots;
}

std::vector<std::uint32_t> partition_of(OracleDsu& dsu) {
    std::vector<std::uint32_t> roots(dsu.parent.size());
    std::vector<std::int64_t> label(dsu.parent.size(), -1);
    for (std::uint32_t v = 0; v < dsu.parent.size(); ++v) {
        std::uint32_t r = dsu.find(v);
        if (label[r] < 0) label[r] = v;
        roots[v] = static_cast<std::uint32_t>(label[r]);
    }
    return roots;
}

void check_forest(UnionFindNet& uf) {
    for (std::uint32_t v = 0; v < uf.num_vertices(); ++v) uf.peek_root(v); // throws on cycles
}

} // namespace

TEST_CASE("uf_build: structure counts match the published layout") {
    UnionFindNet uf(3);
    CHECK(uf.network().meter().neuron_count == 4);  // three vertices + the source
    CHECK(uf.network().meter().synapse_count == 5); // |V| parents + two query synapses
    CHECK(uf.network().meter().setup_steps == 4 + 5);
}

TEST_CASE("uf_build: single vertex still answers queries") {
    UnionFindNet uf(1);
    auto r = uf.find(0, 0);
    CHECK(r.root_count == 1);
    CHECK(r.root_a == 0);
}

TEST_CASE("uf_build: zero vertices is an error") {
    CHECK_THROWS_AS(UnionFindNet{0}, Error);
}

TEST_CASE("find: fresh net has self-parents") {
    UnionFindNet uf(4);
    auto r = uf.find(0, 1);
    CHECK(r.root_count == 2);
    CHECK(r.root_a == 0);
    CHECK(r.root_b == 1);
}

TEST_CASE("find: costs charge 2 and four spikes, no run steps") {
    UnionFindNet uf(5);
    CostMeter before = uf.network().meter_snapshot();
    uf.find(2, 4);
    const CostMeter& after = uf.network().meter();
    CHECK(after.charged_structural_steps - before.charged_structural_steps == 2);
    CHECK(after.spike_count - before.spike_count == 4);
    CHECK(after.run_steps == before.run_steps);
    CHECK(after.physical_mods - before.physical_mods == 2);
}

TEST_CASE("find(u, u) reports a single root") {
    UnionFindNet uf(3);
    auto r = uf.find(2, 2);
    CHECK(r.root_count == 1);
    CHECK(r.root_a == 2);
}

TEST_CASE("unite then find: one root") {
    UnionFindNet uf(3);
    auto r = uf.find(0, 1);
    REQUIRE(r.root_count == 2);
    uf.unite(0, 1);
    auto r2 = uf.find(0, 1);
    CHECK(r2.root_count == 1);
}

TEST_CASE("unite: tie goes to the smaller id which gains rank") {
    UnionFindNet uf(4);
    std::uint64_t alpha = inverse_ackermann(4);
    CostMeter before = uf.network().meter_snapshot();
    uf.find(0, 1);
    uf.unite(0, 1);
    CHECK(uf.peek_parent(1) == 0);
    CHECK(uf.peek_parent(0) == 0);
    const CostMeter& after = uf.network().meter();
    CHECK(after.charged_structural_steps - before.charged_structural_steps == 2 + alpha);
}

TEST_CASE("unite without a preceding find of the pair is an error") {
    UnionFindNet uf(4);
    CHECK_THROWS_AS(uf.unite(0, 1), Error);
    uf.find(0, 1);
    uf.unite(0, 1);
    CHECK_THROWS_AS(uf.unite(0, 1), Error); // the find was consumed
    uf.find(0, 1);
    CHECK_THROWS_AS(uf.unite(0, 1), Error); // same set now
}

TEST_CASE("chain unions compress paths") {
    const std::uint32_t n = 9;
    UnionFindNet uf(n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) uf.query_edge(i, i + 1);
    uf.find(0, n - 1);
    // After compression every vertex points at the root directly or via one hop.
    for (std::uint32_t v = 0; v < n; ++v) {
        std::uint32_t p = uf.peek_parent(v);
        CHECK(uf.peek_parent(p) == uf.peek_root(v));
    }
    check_forest(uf);
}

TEST_CASE("query_edge: accepts fresh pairs, rejects repeats and self-loops at uniform cost") {
    UnionFindNet uf(5);
    std::uint64_t alpha = inverse_ackermann(5);
    CostMeter m0 = uf.network().meter_snapshot();
    CHECK(uf.query_edge(0, 1));
    CostMeter m1 = uf.network().meter_snapshot();
    CHECK(m1.charged_structural_steps - m0.charged_structural_steps == 2 + alpha);
    CHECK(m1.spike_count - m0.spike_count == 4);

    CHECK_FALSE(uf.query_edge(0, 1)); // repeat
    CostMeter m2 = uf.network().meter_snapshot();
    CHECK(m2.charged_structural_steps - m1.charged_structural_steps == 2 + alpha);
    CHECK(m2.spike_count - m1.spike_count == 4);

    CHECK_FALSE(uf.query_edge(3, 3)); // self-loop edge
    CostMeter m3 = uf.network().meter_snapshot();
    CHECK(m3.charged_structural_steps - m2.charged_structural_steps == 2 + alpha);
    CHECK(uf.accepted_count() == 1);
}

TEST_CASE("query costs over a sequence: Q*(2+alpha) charged, 4Q spikes, zero run steps") {
    const std::uint32_t n = 12;
    UnionFindNet uf(n);
    SplitRng rng(5);
    std::uint64_t q = 0;
    for (int i = 0; i < 200; ++i) {
        std::uint32_t u = static_cast<std::uint32_t>(rng.below(n));
        std::uint32_t v = static_cast<std::uint32_t>(rng.below(n));
        if (u == v) continue;
        uf.query_edge(u, v);
        ++q;
    }
    const CostMeter& m = uf.network().meter();
    CHECK(m.charged_structural_steps == q * (2 + inverse_ackermann(n)));
    CHECK(m.spike_count == 4 * q);
    CHECK(m.run_steps == 0);
}

TEST_CASE("oracle equivalence: exhaustive short query sequences on small sets") {
    for (std::uint32_t n = 2; n <= 6; ++n) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        // All sequences of three queries over the pair alphabet.
        for (std::size_t a = 0; a < pairs.size(); ++a)
            for (std::size_t b = 0; b < pairs.size(); ++b)
                for (std::size_t c = 0; c < pairs.size(); ++c) {
                    UnionFindNet uf(n);
                    OracleDsu dsu(n);
                    for (std::size_t pick : {a, b, c}) {
                        auto [u, v] = pairs[pick];
                        bool got = uf.query_edge(u, v);
                        bool want = dsu.unite(u, v);
                        REQUIRE(got == want);
                    }
                    REQUIRE(partition_of(uf) == partition_of(dsu));
                    check_forest(uf);
                }
    }
}

TEST_CASE("oracle equivalence: randomized long sequences") {
    const std::uint32_t n = 400;
    UnionFindNet uf(n);
    OracleDsu dsu(n);
    SplitRng rng(2024);
    for (int i = 0; i < 3000; ++i) {
        std::uint32_t u = static_cast<std::uint32_t>(rng.below(n));
        std::uint32_t v = static_cast<std::uint32_t>(rng.below(n));
        if (u == v) continue;
        bool got = uf.query_edge(u, v);
        bool want = dsu.unite(u, v);
        REQUIRE(got == want);
    }
    CHECK(partition_of(uf) == partition_of(dsu));
    check_forest(uf);
}

TEST_CASE("rank bound: root rank stays logarithmic in its set size") {
    const std::uint32_t n = 128;
    UnionFindNet uf(n);
    OracleDsu dsu(n);
    SplitRng rng(11);
    std::vector<std::uint32_t> size(n, 1);
    for (int i = 0; i < 600; ++i) {
        std::uint32_t u = static_cast<std::uint32_t>(rng.below(n));
        std::uint32_t v = static_cast<std::uint32_t>(rng.below(n));
        if (u == v) continue;
        std::uint32_t ru = uf.peek_root(u), rv = uf.peek_root(v);
        if (uf.query_edge(u, v)) {
            dsu.unite(u, v);
            std::uint32_t r = uf.peek_root(u);
            size[r] = size[ru] + size[rv];
        }
    }
    // Walk depth from any vertex is bounded by log2(set size) + 1.
    for (std::uint32_t v = 0; v < n; ++v) {
        std::uint32_t depth = 0, cur = v;
        while (uf.peek_parent(cur) != cur) {
            cur = uf.peek_parent(cur);
            ++depth;
        }
        std::uint32_t bound = weight_bit_width(size[uf.peek_root(v)]) + 1;
        CHECK(depth <= bound);
    }
}

TEST_CASE("energy bound holds for union-find runs") {
    UnionFindNet uf(10);
    SplitRng rng(3);
    for (int i = 0; i < 50; ++i) {
        std::uint32_t u = static_cast<std::uint32_t>(rng.below(10));
        std::uint32_t v = static_cast<std::uint32_t>(rng.below(10));
        if (u != v) uf.query_edge(u, v);
    }
    const CostMeter& m = uf.network().meter();
    CHECK(m.spike_count <= m.charged_time() * (m.neuron_count + m.synapse_count));
}
