#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "neuromst/substrate.hpp"

namespace neuromst {

struct SortOutcome {
    std::vector<std::uint64_t> sorted;
    CostMeter meter; // cost attributable to the sort (own network, or summed)
};

// Delay-encoded sorting kernel: one spike source plus one value neuron and
// synapse per element. Built into a caller-supplied network so the MST
// algorithms can share one substrate with their union-find half.
class SortKernel {
public:
    // rank_stride > 0 gives element i the static sub-step rank i*rank_stride
    // (Pipe reserves rank windows per edge); 0 leaves all ranks at zero.
    SortKernel(Network& net, std::span<const std::uint64_t> values,
               std::uint64_t rank_stride = 0);

    // Fire order of one full delay-sort run; run_steps delta = max(values).
    // on_fire, when set, sees each value index as it fires.
    std::vector<std::uint32_t> run_delay_sort(
        const std::function<void(std::uint32_t index, std::uint64_t time)>& on_value_fire = {});

    // One radix pass: rewires delays to the selected bit and ranks to the
    // previous order (stability), charges one structural step per element,
    // then runs a fixed two-step window. Returns the new order.
    std::vector<std::uint32_t> run_radix_pass(std::uint32_t bit,
                                              std::span<const std::uint32_t> previous_order);

    NeuronId source() const { return source_; }
    NeuronId value_neuron(std::uint32_t index) const { return value_neurons_[index]; }
    SynapseId value_synapse(std::uint32_t index) const { return value_synapses_[index]; }
    std::uint32_t index_of_neuron(NeuronId n) const { return neuron_to_index_.at(n); }
    std::size_t size() const { return values_.size(); }

private:
    Network& net_;
    std::vector<std::uint64_t> values_;
    NeuronId source_ = kNoNeuron;
    std::vector<NeuronId> value_neurons_;
    std::vector<SynapseId> value_synapses_;
    std::unordered_map<NeuronId, std::uint32_t> neuron_to_index_;
};

// Alg. "NeuroSort": values become synaptic delays; the fire order is the
// sorted order. Stable, run_steps = max(values).
SortOutcome neuro_sort(std::span<const std::uint64_t> values);

// Bit width of max(values), computed by running neuro_sort and taking the
// last fire. All-zero input still needs one bit. The sort's meter is
// returned through cost so callers can fold it into their totals.
std::uint32_t get_max_bit_count(std::span<const std::uint64_t> values, CostMeter* cost = nullptr);

// Binary radix sort as repeated bitwise delay-sorts with synaptic rewiring
// between passes. Charged time b*(2+N), spikes b*N. When bit_width is not
// preset it is computed with get_max_bit_count and that sort's cost is
// included in the outcome meter.
SortOutcome neuro_radix_sort(std::span<const std::uint64_t> values,
                             std::optional<std::uint32_t> bit_width = {});

// Field-wise sum for composing costs across networks.
CostMeter add_meters(const CostMeter& a, const CostMeter& b);

} // namespace neuromst
