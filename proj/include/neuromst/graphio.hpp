#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "neuromst/graph.hpp"

namespace neuromst {

enum class WeightMode { FromValues, Synth };

struct SynthSpec {
    std::uint64_t wmin = 1;
    std::uint64_t wmax = 1;
    std::uint64_t seed = 0;
};

// Handling of real-valued Matrix Market entries; integer files ignore this.
struct QuantizeSpec {
    enum class Kind { None, Round, Scale } kind = Kind::None;
    std::uint32_t scale_pow10 = 0; // Scale: weight = round(10^k * value)
};

QuantizeSpec parse_quantize_flag(const std::string& flag); // "round" | "scale:10^k"

// Loads a Matrix Market coordinate file as an undirected simple graph:
// 1-based indices mapped to dense 0-based ids, self-loops dropped (counted),
// duplicate pairs collapsed to the minimum weight (counted). General
// symmetry is folded onto unordered pairs.
Graph load_matrix_market(const std::string& path, WeightMode mode,
                         const std::optional<SynthSpec>& synth = {},
                         const QuantizeSpec& quantize = {});

// Emits `coordinate integer symmetric` with one lower-triangle entry per edge.
void write_matrix_market(const std::string& path, const Graph& g);

// Connected simple graph: a random spanning tree plus m-(n-1) distinct extra
// edges, weights uniform in [wmin, wmax], fully determined by the seed.
Graph gen_random_graph(std::uint32_t n, std::uint64_t m, std::uint64_t wmin,
                       std::uint64_t wmax, std::uint64_t seed);

// Deterministic bounded uniform draw used everywhere randomness is needed.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next();
    // Uniform in [0, bound); bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);
    // Uniform in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi);

private:
    std::uint64_t state_;
};

} // namespace neuromst
