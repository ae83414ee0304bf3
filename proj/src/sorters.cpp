#include "neuromst/sorters.hpp"

#include <algorithm>

#include "neuromst/error.hpp"

namespace neuromst {

CostMeter add_meters(const CostMeter& a, const CostMeter& b) {
    CostMeter m;
    m.setup_steps = a.setup_steps + b.setup_steps;
    m.run_steps = a.run_steps + b.run_steps;
    m.charged_structural_steps = a.charged_structural_steps + b.charged_structural_steps;
    m.physical_mods = a.physical_mods + b.physical_mods;
    m.neuron_count = a.neuron_count + b.neuron_count;
    m.synapse_count = a.synapse_count + b.synapse_count;
    m.spike_count = a.spike_count + b.spike_count;
    return m;
}

SortKernel::SortKernel(Network& net, std::span<const std::uint64_t> values,
                       std::uint64_t rank_stride)
    : net_(net), values_(values.begin(), values.end()) {
    source_ = net_.add_neuron(1, 1, NeuronRole::Source);
    value_neurons_.reserve(values_.size());
    value_synapses_.reserve(values_.size());
    for (std::uint32_t i = 0; i < values_.size(); ++i) {
        NeuronId n = net_.add_neuron(0, 1, NeuronRole::Value); // threshold 0: fires on delivery
        value_neurons_.push_back(n);
        neuron_to_index_.emplace(n, i);
        std::uint64_t rank = rank_stride ? rank_stride * i : 0;
        value_synapses_.push_back(net_.add_synapse(
            source_, n, 1, static_cast<std::int64_t>(values_[i]), rank));
    }
}

std::vector<std::uint32_t> SortKernel::run_delay_sort(
    const std::function<void(std::uint32_t, std::uint64_t)>& on_value_fire) {
    std::vector<std::uint32_t> order;
    order.reserve(values_.size());
    net_.reset_activity();
    net_.inject(source_, 0);
    RunObserver obs;
    obs.on_fire = [&](const FireEvent& ev) {
        if (ev.neuron != source_) {
            std::uint32_t idx = neuron_to_index_.at(ev.neuron);
            order.push_back(idx);
            if (on_value_fire) on_value_fire(idx, ev.time);
        }
        return Directive::Continue;
    };
    net_.run(obs);
    return order;
}

std::vector<std::uint32_t> SortKernel::run_radix_pass(
    std::uint32_t bit, std::span<const std::uint32_t> previous_order) {
    std::vector<SynapseMod> mods(values_.size());
    for (std::uint32_t pos = 0; pos < previous_order.size(); ++pos) {
        std::uint32_t idx = previous_order[pos];
        mods[idx].synapse = value_synapses_[idx];
        mods[idx].delay = static_cast<std::int64_t>((values_[idx] >> bit) & 1u);
        mods[idx].rank = pos; // stability: ties keep the previous pass order
    }
    net_.reset_activity();
    net_.rewire(mods, values_.size()); // one delay update charged per element
    net_.inject(source_, 0);
    std::vector<std::uint32_t> order;
    order.reserve(values_.size());
    RunObserver obs;
    obs.on_fire = [&](const FireEvent& ev) {
        if (ev.neuron != source_) order.push_back(neuron_to_index_.at(ev.neuron));
        return Directive::Continue;
    };
    net_.run(obs, RunLimit{2}); // the pass always spans the two timestep values
    return order;
}

SortOutcome neuro_sort(std::span<const std::uint64_t> values) {
    Network net;
    SortKernel kernel(net, values);
    std::vector<std::uint32_t> order = kernel.run_delay_sort();
    SortOutcome out;
    out.sorted.reserve(values.size());
    for (std::uint32_t idx : order) out.sorted.push_back(values[idx]);
    out.meter = net.meter_snapshot();
    return out;
}

std::uint32_t get_max_bit_count(std::span<const std::uint64_t> values, CostMeter* cost) {
    if (values.empty())
        fail(ErrorKind::InvalidArgument, "get_max_bit_count: empty input");
    SortOutcome sorted = neuro_sort(values);
    if (cost) *cost = add_meters(*cost, sorted.meter);
    std::uint64_t max_value = sorted.sorted.back();
    std::uint32_t bits = 0;
    while (max_value > 0) {
        ++bits;
        max_value >>= 1;
    }
    return bits == 0 ? 1u : bits; // a zero-bit sort is meaningless
}

SortOutcome neuro_radix_sort(std::span<const std::uint64_t> values,
                             std::optional<std::uint32_t> bit_width) {
    CostMeter preface;
    std::uint32_t bits;
    if (bit_width) {
        bits = *bit_width;
        if (bits == 0) fail(ErrorKind::InvalidArgument, "neuro_radix_sort: bit width must be positive");
        for (std::uint64_t v : values) {
            if (bits < 64 && v >= (1ull << bits))
                fail(ErrorKind::InvalidArgument, "neuro_radix_sort: value exceeds preset bit width");
        }
    } else {
        if (values.empty()) fail(ErrorKind::InvalidArgument, "neuro_radix_sort: empty input needs a preset bit width");
        bits = get_max_bit_count(values, &preface);
    }

    Network net;
    SortKernel kernel(net, values);
    std::vector<std::uint32_t> order(values.size());
    for (std::uint32_t i = 0; i < values.size(); ++i) order[i] = i;
    for (std::uint32_t b = 0; b < bits; ++b) order = kernel.run_radix_pass(b, order);

    SortOutcome out;
    out.sorted.reserve(values.size());
    for (std::uint32_t idx : order) out.sorted.push_back(values[idx]);
    out.meter = add_meters(preface, net.meter_snapshot());
    return out;
}

} // namespace neuromst
