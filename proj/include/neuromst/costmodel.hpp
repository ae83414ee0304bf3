#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "neuromst/graph.hpp"

namespace neuromst {

enum class MstAlgo { Prim, SeqNeuro, SeqRadix, Pipe };

const char* algo_name(MstAlgo algo);
std::optional<MstAlgo> parse_algo(const std::string& name);

// Normative inverse Ackermann: fixed tower-of-twos threshold table, monotone
// and <= 4 for any 64-bit n. Meters and predictions share this definition.
std::uint32_t inverse_ackermann(std::uint64_t n);

// Oracle-side facts a prediction may consume; never taken from the simulator.
struct MstOracleInfo {
    std::uint64_t mst_weight = 0;   // sum of forest-edge weights
    std::uint64_t t_last = 0;       // heaviest forest edge (sort-kernel stop time)
    std::uint64_t e_proc = 0;       // edges submitted to union-find
    std::uint64_t prim_spikes = 0;  // deterministic Prim fire count
};

struct CostPrediction {
    MstAlgo algo = MstAlgo::Prim;
    bool exact_mode = false; // false: literal closed forms over |E|
    std::uint64_t time_steps = 0;
    std::uint64_t neuron_count = 0;
    std::uint64_t synapse_count = 0;
    std::uint64_t spike_count = 0;
    std::uint32_t bits = 0;
    std::uint32_t alpha = 0;
    std::uint64_t e_proc_used = 0;
};

// Evaluates the closed-form cost row for one algorithm. Literal mode uses the
// published |E|-based forms (upper bounds); exact mode substitutes E_proc and
// the artifact's physical structure (spike sources are real neurons; Prim
// embeds each undirected edge as two directed synapses).
CostPrediction predict(MstAlgo algo, const GraphStats& stats,
                       const std::optional<MstOracleInfo>& info, bool exact_mode,
                       std::optional<std::uint32_t> radix_bits = {});

struct BottleneckAdvice {
    enum class Choice { Pipe, SeqRadix } recommendation = Choice::Pipe;
    std::int64_t margin = 0; // b*(2+|E|) - t_last; positive favors Pipe
    std::uint64_t radix_sort_steps = 0;
    std::optional<std::uint64_t> enumeration_steps; // t_last when known
    std::string rationale;
};

// Pipe-vs-SeqRadix advisor: compares the radix sort time against the MST
// edge-enumeration time. Without t_last, Pipe is always the safe choice.
BottleneckAdvice bottleneck_advice(const GraphStats& stats, std::optional<std::uint64_t> t_last);

} // namespace neuromst
