#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "neuromst/error.hpp"

namespace neuromst {

using NeuronId = std::uint32_t;
using SynapseId = std::uint32_t;

constexpr NeuronId kNoNeuron = std::numeric_limits<NeuronId>::max();
constexpr SynapseId kNoSynapse = std::numeric_limits<SynapseId>::max();

// Role labels let algorithms scope their energy accounting: spike sources and
// other control neurons are excluded from the spike ledger by default.
enum class NeuronRole : std::uint8_t {
    Value,    // data-carrying neuron (sort values, Prim vertices)
    Source,   // spike source / control neuron
    UfVertex, // union-find vertex neuron
};

struct Neuron {
    std::int64_t threshold = 0; // fires when potential >= threshold
    std::int64_t leak = 1;      // leak <= 1 disables leak; >= 2 divides per delivery
    std::int64_t potential = 0;
    NeuronRole role = NeuronRole::Value;
};

struct Synapse {
    NeuronId pre = kNoNeuron;
    NeuronId post = kNoNeuron;
    std::int64_t weight = 0;
    std::uint64_t delay = 0;
    std::uint64_t rank = 0; // sub-step tie-break key added to deliveries
};

// Ledger of everything a run costs under the computing model. Charged
// structural steps are what algorithms claim for suspensions; physical_mods
// counts the synapse modifications that actually happened.
struct CostMeter {
    std::uint64_t setup_steps = 0;
    std::uint64_t run_steps = 0;
    std::uint64_t charged_structural_steps = 0;
    std::uint64_t physical_mods = 0;
    std::uint64_t neuron_count = 0;
    std::uint64_t synapse_count = 0;
    std::uint64_t spike_count = 0;

    std::uint64_t charged_time() const { return run_steps + charged_structural_steps; }

    bool operator==(const CostMeter&) const = default;
};

// Context handed to the run observer for every fire.
struct FireEvent {
    NeuronId neuron = kNoNeuron;
    NeuronRole role = NeuronRole::Value;
    std::uint64_t time = 0;
    std::uint64_t rank = 0;
    std::uint64_t window = 0;
    bool injected = false;          // external stimulus, no causing synapse
    SynapseId cause = kNoSynapse;   // delivering synapse for non-injected fires
    NeuronId cause_pre = kNoNeuron; // pre endpoint of the causing synapse
    bool self_loop = false;         // causing synapse has pre == post
};

enum class Directive { Continue, Stop };

// Observer hooks. on_fire runs before the fire's outgoing deliveries are
// scheduled, so a rewire issued from it (pipe delay configuration) shapes the
// propagation of that very spike. on_boundary runs after the last event of a
// (time, rank-window) group, before the next group starts; Stop from either
// leaves the clock at the last processed timestep.
struct RunObserver {
    std::function<Directive(const FireEvent&)> on_fire;
    std::function<Directive(std::uint64_t time, std::uint64_t window)> on_boundary;
};

struct SynapseMod {
    SynapseId synapse = kNoSynapse;
    std::optional<NeuronId> post;
    std::optional<std::int64_t> delay; // validated >= 0
    std::optional<std::int64_t> weight;
    std::optional<std::uint64_t> rank;
};

struct RunLimit {
    // When set, the run consumes logical time up to the horizon even if the
    // event queue drains earlier (radix passes are fixed two-step windows).
    std::optional<std::uint64_t> horizon;
};

// Deterministic event-driven SNN under the whole-number computing model.
// Deliveries are processed in (time, sub-step rank, synapse id) order;
// injections order before deliveries at the same (time, rank). A neuron fires
// at most once per (timestep, rank-window); the window size is configurable so
// algorithms can sequence several suspension-driven queries inside one
// logical timestep.
class Network {
public:
    Network() = default;

    Network(const Network&) = delete;
    Network& operator=(const Network&) = delete;
    Network(Network&&) = default;
    Network& operator=(Network&&) = default;

    NeuronId add_neuron(std::int64_t threshold, std::int64_t leak, NeuronRole role);
    SynapseId add_synapse(NeuronId pre, NeuronId post, std::int64_t weight,
                          std::int64_t delay, std::uint64_t rank = 0);

    // Applies all mods atomically or none; charge is the caller-declared
    // suspension cost (algorithms charge exactly their model cost, which can
    // differ from the physical modification count).
    void rewire(std::span<const SynapseMod> mods, std::uint64_t charge);
    void charge_structural(std::uint64_t charge) { meter_.charged_structural_steps += charge; }

    // Schedules an unconditional fire of the neuron (external stimulus
    // reaching threshold at the given time).
    void inject(NeuronId neuron, std::uint64_t fire_time);

    // Processes pending events until quiescence, an observer Stop, or the
    // horizon. run_steps advances by elapsed logical time (sparse skipping).
    void run(const RunObserver& observer, RunLimit limit = {});

    // Cancels pending deliveries, zeroes touched potentials and resets the
    // clock to 0 (a fresh activity epoch). Pure control action: no cost.
    void reset_activity();

    const CostMeter& meter() const { return meter_; }
    CostMeter meter_snapshot() const { return meter_; }

    std::uint64_t clock() const { return clock_; }
    std::size_t neuron_count() const { return neurons_.size(); }
    std::size_t synapse_count() const { return synapses_.size(); }
    const Neuron& neuron(NeuronId id) const { return neurons_.at(id); }
    const Synapse& synapse(SynapseId id) const { return synapses_.at(id); }
    bool has_synapse(NeuronId pre, NeuronId post) const;

    // Energy accounting knobs (see module docs): per-role fire weights plus
    // explicit ledger credits for query-scoped rules.
    void set_spike_weight(NeuronRole role, std::uint64_t weight);
    void credit_spikes(std::uint64_t n) { meter_.spike_count += n; }

    // Sub-step rank window used for the refractory scope and for grouping
    // boundary callbacks. 0 means the whole timestep is one window.
    void set_rank_window(std::uint64_t window) { rank_window_ = window; }

    // Non-termination guards.
    void set_max_time(std::uint64_t t) { max_time_ = t; }
    void set_max_events_per_run(std::uint64_t n) { max_events_ = n; }
    std::uint64_t max_time() const { return max_time_; }

private:
    struct Event {
        std::uint64_t time = 0;
        std::uint64_t rank = 0;
        std::uint64_t key = 0; // injections: sequence; deliveries: synapse id + 1
        bool injected = false;
        NeuronId target = kNoNeuron; // injections only
        SynapseId synapse = kNoSynapse;
    };

    struct EventAfter {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            if (a.rank != b.rank) return a.rank > b.rank;
            if (a.injected != b.injected) return !a.injected; // injections first
            return a.key > b.key;
        }
    };

    std::uint64_t window_of(std::uint64_t rank) const {
        return rank_window_ == 0 ? 0 : rank / rank_window_;
    }

    static std::uint64_t pair_key(NeuronId pre, NeuronId post) {
        return (static_cast<std::uint64_t>(pre) << 32) | post;
    }

    void push_event(Event e);
    Event pop_event();
    void touch(NeuronId n);

    // Returns Stop when the observer asked to halt.
    Directive fire(NeuronId id, const Event& cause, const RunObserver& observer);

    std::vector<Neuron> neurons_;
    std::vector<Synapse> synapses_;
    std::vector<std::vector<SynapseId>> outgoing_;
    std::unordered_map<std::uint64_t, SynapseId> pair_index_;

    std::vector<Event> queue_; // binary heap via std::push_heap/pop_heap
    std::uint64_t injection_seq_ = 0;

    // Refractory bookkeeping: last fire of each neuron as (epoch, time, window).
    struct FireMark {
        std::uint64_t epoch = 0;
        std::uint64_t time = 0;
        std::uint64_t window = 0;
        bool valid = false;
    };
    std::vector<FireMark> last_fire_;
    std::vector<NeuronId> dirty_; // neurons delivered to this epoch
    std::vector<std::uint64_t> touched_epoch_;
    std::uint64_t epoch_ = 1;

    CostMeter meter_;
    std::uint64_t clock_ = 0;
    std::uint64_t rank_window_ = 0;
    std::uint64_t max_time_ = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_events_ = 100'000'000;
    std::uint64_t spike_weight_[3] = {1, 0, 1}; // Value, Source, UfVertex
    bool running_ = false;
};

} // namespace neuromst
