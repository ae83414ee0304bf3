#include "neuromst/costmodel.hpp"

#include "neuromst/error.hpp"

namespace neuromst {

const char* algo_name(MstAlgo algo) {
    switch (algo) {
        case MstAlgo::Prim: return "prim";
        case MstAlgo::SeqNeuro: return "seq-neuro";
        case MstAlgo::SeqRadix: return "seq-radix";
        case MstAlgo::Pipe: return "pipe";
    }
    return "?";
}

std::optional<MstAlgo> parse_algo(const std::string& name) {
    if (name == "prim") return MstAlgo::Prim;
    if (name == "seq-neuro") return MstAlgo::SeqNeuro;
    if (name == "seq-radix") return MstAlgo::SeqRadix;
    if (name == "pipe") return MstAlgo::Pipe;
    return std::nullopt;
}

std::uint32_t inverse_ackermann(std::uint64_t n) {
    if (n <= 2) return 0;
    if (n <= 4) return 1;
    if (n <= 16) return 2;
    if (n <= 65536) return 3;
    return 4;
}

CostPrediction predict(MstAlgo algo, const GraphStats& stats,
                       const std::optional<MstOracleInfo>& info, bool exact_mode,
                       std::optional<std::uint32_t> radix_bits) {
    const std::uint64_t V = stats.vertices;
    const std::uint64_t E = stats.edges;
    const std::uint32_t alpha = inverse_ackermann(V);
    const std::uint32_t b = radix_bits.value_or(stats.bit_width);

    CostPrediction p;
    p.algo = algo;
    p.exact_mode = exact_mode;
    p.alpha = alpha;
    p.bits = b;

    if (algo == MstAlgo::Prim) {
        if (!info) fail(ErrorKind::InvalidArgument, "predict: Prim needs oracle mst info");
        p.time_steps = info->mst_weight;
        p.neuron_count = V;
        p.e_proc_used = 0;
        if (exact_mode) {
            p.synapse_count = 2 * E;
            p.spike_count = info->prim_spikes;
        } else {
            p.synapse_count = E;
            p.spike_count = V * V;
        }
        return p;
    }

    if (exact_mode && !info)
        fail(ErrorKind::InvalidArgument, "predict: exact mode needs oracle mst info");
    const std::uint64_t q = exact_mode ? info->e_proc : E; // union-find submissions
    p.e_proc_used = q;
    const std::uint64_t uf_time = q * (2 + alpha);

    switch (algo) {
        case MstAlgo::SeqNeuro:
            p.time_steps = stats.max_weight + uf_time;
            p.neuron_count = E + V + (exact_mode ? 2 : 0); // sort source + uf source
            p.synapse_count = E + V + 2;
            p.spike_count = E + 4 * q;
            break;
        case MstAlgo::SeqRadix:
            p.time_steps = static_cast<std::uint64_t>(b) * (2 + E) + uf_time;
            p.neuron_count = E + V + (exact_mode ? 2 : 0);
            p.synapse_count = E + V + 2;
            p.spike_count = static_cast<std::uint64_t>(b) * E + 4 * q;
            break;
        case MstAlgo::Pipe: {
            // Exact: the telescoped valid-step sum t_last + (2+alpha)*E_proc.
            std::uint64_t t_stop = exact_mode ? info->t_last : stats.max_weight;
            p.time_steps = t_stop + (2 + alpha) * q;
            p.neuron_count = E + V + (exact_mode ? 1 : 0); // sort source only
            p.synapse_count = 3 * E + V;
            p.spike_count = 6 * q; // 2 pipe spikes + 4 query spikes per submission
            break;
        }
        default: break;
    }
    return p;
}

BottleneckAdvice bottleneck_advice(const GraphStats& stats, std::optional<std::uint64_t> t_last) {
    BottleneckAdvice a;
    a.radix_sort_steps = static_cast<std::uint64_t>(stats.bit_width) * (2 + stats.edges);
    if (!t_last) {
        a.recommendation = BottleneckAdvice::Choice::Pipe;
        a.margin = static_cast<std::int64_t>(a.radix_sort_steps);
        a.rationale = "maximum MST edge weight unknown in advance; Pipe is always the preferable choice";
        return a;
    }
    a.enumeration_steps = *t_last;
    a.margin = static_cast<std::int64_t>(a.radix_sort_steps) - static_cast<std::int64_t>(*t_last);
    a.recommendation = a.margin >= 0 ? BottleneckAdvice::Choice::Pipe
                                     : BottleneckAdvice::Choice::SeqRadix;
    a.rationale = a.margin >= 0
        ? "radix sorting takes at least as long as enumerating the MST edges"
        : "enumerating the maximum MST edge takes longer than the radix sort itself";
    return a;
}

} // namespace neuromst
