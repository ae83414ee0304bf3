#include <doctest.h>

#include "neuromst/costmodel.hpp"
#include "neuromst/graphio.hpp"
#include "neuromst/mst.hpp"

using namespace neuromst;

namespace {

Graph triangle() {
    Graph g;
    g.num_vertices = 3;
    g.edges = {Edge{1, 0, 1, 0}, Edge{2, 1, 2, 1}, Edge{3, 0, 2, 2}};
    return g;
}

} // namespace

TEST_CASE("inverse ackermann threshold table") {
    CHECK(inverse_ackermann(0) == 0);
    CHECK(inverse_ackermann(2) == 0);
    CHECK(inverse_ackermann(3) == 1);
    CHECK(inverse_ackermann(4) == 1);
    CHECK(inverse_ackermann(16) == 2);
    CHECK(inverse_ackermann(17) == 3);
    CHECK(inverse_ackermann(65536) == 3);
    CHECK(inverse_ackermann(1000000) == 4);
}

TEST_CASE("inverse ackermann is monotone and bounded by 4") {
    std::uint32_t prev = 0;
    for (std::uint64_t n = 0; n < 200000; n += 97) {
        std::uint32_t a = inverse_ackermann(n);
        CHECK(a >= prev);
        CHECK(a <= 4);
        prev = a;
    }
    CHECK(inverse_ackermann(~0ull) == 4);
}

TEST_CASE("predict: triangle closed forms") {
    Graph g = triangle();
    GraphStats stats = graph_stats(g);
    MstOracleInfo info = oracle_info_for(g, MstAlgo::SeqNeuro);

    CostPrediction literal = predict(MstAlgo::SeqNeuro, stats, info, false);
    CHECK(literal.time_steps == 3 + 3 * (2 + 1)); // max w + |E| (2 + alpha(3))

    CostPrediction exact = predict(MstAlgo::SeqNeuro, stats, info, true);
    CHECK(exact.time_steps == 3 + 2 * (2 + 1)); // E_proc = 2
    CHECK(exact.time_steps == mst_seq(g, false).measured.charged_time());

    MstOracleInfo prim_info = oracle_info_for(g, MstAlgo::Prim, 0);
    CostPrediction prim = predict(MstAlgo::Prim, stats, prim_info, true);
    CHECK(prim.time_steps == 3); // sum of MST weights

    CostPrediction pipe = predict(MstAlgo::Pipe, stats, info, true);
    CHECK(pipe.time_steps == 2 + (2 + 1) * 2); // t_last + (2+alpha) E_proc
}

TEST_CASE("predict: literal union-find terms dominate exact ones") {
    SplitRng rng(8);
    for (int i = 0; i < 8; ++i) {
        std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(40));
        std::uint64_t maxe = std::min<std::uint64_t>(160, static_cast<std::uint64_t>(n) * (n - 1) / 2);
        Graph g = gen_random_graph(n, (n - 1) + rng.below(maxe - (n - 1) + 1), 1, 99, rng.next());
        GraphStats stats = graph_stats(g);
        for (MstAlgo algo : {MstAlgo::SeqNeuro, MstAlgo::SeqRadix, MstAlgo::Pipe}) {
            MstOracleInfo info = oracle_info_for(g, algo);
            CHECK(predict(algo, stats, info, false).time_steps >=
                  predict(algo, stats, info, true).time_steps);
        }
    }
}

TEST_CASE("predict: exact mode requires oracle info") {
    GraphStats stats = graph_stats(triangle());
    CHECK_THROWS_AS(predict(MstAlgo::Pipe, stats, std::nullopt, true), Error);
    CHECK_THROWS_AS(predict(MstAlgo::Prim, stats, std::nullopt, false), Error);
}

TEST_CASE("bottleneck advice: triangle recommends pipe with margin 8") {
    GraphStats stats = graph_stats(triangle());
    auto advice = bottleneck_advice(stats, stats.t_last);
    CHECK(advice.radix_sort_steps == 2 * (2 + 3)); // b = 2
    CHECK(advice.enumeration_steps == 2);
    CHECK(advice.margin == 8);
    CHECK(advice.recommendation == BottleneckAdvice::Choice::Pipe);
}

TEST_CASE("bottleneck advice: a heavy mandatory bridge favors seq-radix") {
    // Bridge of weight 2^19 < 2^20 keeps b at 20 while t_last is huge.
    Graph g;
    g.num_vertices = 101;
    std::uint64_t heavy = 524288;
    for (std::uint32_t i = 0; i < 50; ++i)
        g.edges.push_back(Edge{2 + i, 0, 1 + i, static_cast<std::uint32_t>(g.edges.size())});
    for (std::uint32_t i = 0; i < 49; ++i)
        g.edges.push_back(Edge{2 + i, 51, 52 + i, static_cast<std::uint32_t>(g.edges.size())});
    g.edges.push_back(Edge{heavy, 0, 51, static_cast<std::uint32_t>(g.edges.size())}); // the bridge
    GraphStats stats = graph_stats(g);
    REQUIRE(stats.components == 1);
    REQUIRE(*stats.t_last == heavy);
    auto advice = bottleneck_advice(stats, stats.t_last);
    CHECK(advice.margin < 0);
    CHECK(advice.recommendation == BottleneckAdvice::Choice::SeqRadix);

    // The sign agrees with the measured ordering.
    MstReport pipe = mst_pipe(g);
    MstReport radix = mst_seq(g, true, stats.bit_width);
    CHECK(radix.measured.charged_time() < pipe.measured.charged_time());
}

TEST_CASE("bottleneck advice: unknown t_last always picks pipe") {
    GraphStats stats = graph_stats(triangle());
    auto advice = bottleneck_advice(stats, std::nullopt);
    CHECK(advice.recommendation == BottleneckAdvice::Choice::Pipe);
    CHECK(advice.rationale.find("always the preferable choice") != std::string::npos);
}

TEST_CASE("advice agrees with measured ordering whenever the margin is nonzero") {
    SplitRng rng(21);
    for (int i = 0; i < 10; ++i) {
        std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(30));
        std::uint64_t maxe = std::min<std::uint64_t>(120, static_cast<std::uint64_t>(n) * (n - 1) / 2);
        Graph g = gen_random_graph(n, (n - 1) + rng.below(maxe - (n - 1) + 1), 1,
                                   1 + rng.below(4000), rng.next());
        GraphStats stats = graph_stats(g);
        auto advice = bottleneck_advice(stats, stats.t_last);
        if (advice.margin == 0) continue;
        std::uint64_t pipe = mst_pipe(g).measured.charged_time();
        std::uint64_t radix = mst_seq(g, true, stats.bit_width).measured.charged_time();
        if (advice.margin > 0)
            CHECK(pipe <= radix);
        else
            CHECK(radix < pipe);
    }
}
