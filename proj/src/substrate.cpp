#include "neuromst/substrate.hpp"

#include <algorithm>
#include <unordered_set>

namespace neuromst {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

NeuronId Network::add_neuron(std::int64_t threshold, std::int64_t leak, NeuronRole role) {
    if (running_) fail(ErrorKind::Precondition, "add_neuron: network is mid-run");
    if (threshold < 0) fail(ErrorKind::InvalidArgument, "add_neuron: threshold must be a whole number");
    if (leak < 0) fail(ErrorKind::InvalidArgument, "add_neuron: leak must be a whole number");
    NeuronId id = static_cast<NeuronId>(neurons_.size());
    neurons_.push_back(Neuron{threshold, leak, 0, role});
    outgoing_.emplace_back();
    last_fire_.emplace_back();
    touched_epoch_.push_back(0);
    meter_.setup_steps += 1;
    meter_.neuron_count += 1;
    return id;
}

SynapseId Network::add_synapse(NeuronId pre, NeuronId post, std::int64_t weight,
                               std::int64_t delay, std::uint64_t rank) {
    if (running_) fail(ErrorKind::Precondition, "add_synapse: network is mid-run");
    if (pre >= neurons_.size() || post >= neurons_.size())
        fail(ErrorKind::InvalidArgument, "add_synapse: unknown endpoint neuron");
    if (delay < 0) fail(ErrorKind::InvalidArgument, "add_synapse: delay must be non-negative");
    auto key = pair_key(pre, post);
    if (pair_index_.count(key))
        fail(ErrorKind::DuplicateSynapse, "add_synapse: pair already linked by a synapse");
    SynapseId id = static_cast<SynapseId>(synapses_.size());
    synapses_.push_back(Synapse{pre, post, weight, static_cast<std::uint64_t>(delay), rank});
    outgoing_[pre].push_back(id);
    pair_index_.emplace(key, id);
    meter_.setup_steps += 1;
    meter_.synapse_count += 1;
    return id;
}

bool Network::has_synapse(NeuronId pre, NeuronId post) const {
    return pair_index_.count(pair_key(pre, post)) != 0;
}

void Network::rewire(std::span<const SynapseMod> mods, std::uint64_t charge) {
    // Validate everything before mutating: the batch applies atomically.
    for (const auto& m : mods) {
        if (m.synapse >= synapses_.size())
            fail(ErrorKind::InvalidArgument, "rewire: unknown synapse id");
        if (m.post && *m.post >= neurons_.size())
            fail(ErrorKind::InvalidArgument, "rewire: unknown post neuron");
        if (m.delay && *m.delay < 0)
            fail(ErrorKind::InvalidArgument, "rewire: delay must be non-negative");
    }
    // One-synapse rule against the batch's final state: drop the old pairs of
    // every retargeted synapse, then check the new pairs (this admits atomic
    // swaps of two synapse targets).
    std::unordered_set<std::uint64_t> removed;
    for (const auto& m : mods) {
        if (m.post) removed.insert(pair_key(synapses_[m.synapse].pre, synapses_[m.synapse].post));
    }
    std::unordered_set<std::uint64_t> added;
    for (const auto& m : mods) {
        if (!m.post) continue;
        auto key = pair_key(synapses_[m.synapse].pre, *m.post);
        bool clash = (pair_index_.count(key) && !removed.count(key)) || added.count(key);
        if (clash)
            fail(ErrorKind::DuplicateSynapse, "rewire: retarget would duplicate a (pre, post) pair");
        added.insert(key);
    }
    for (const auto& m : mods) {
        Synapse& s = synapses_[m.synapse];
        if (m.post) {
            pair_index_.erase(pair_key(s.pre, s.post));
            s.post = *m.post;
        }
        if (m.delay) s.delay = static_cast<std::uint64_t>(*m.delay);
        if (m.weight) s.weight = *m.weight;
        if (m.rank) s.rank = *m.rank;
    }
    for (const auto& m : mods) {
        if (m.post) {
            const Synapse& s = synapses_[m.synapse];
            pair_index_.emplace(pair_key(s.pre, s.post), m.synapse);
        }
    }
    meter_.physical_mods += mods.size();
    meter_.charged_structural_steps += charge;
}

void Network::inject(NeuronId neuron, std::uint64_t fire_time) {
    if (neuron >= neurons_.size()) fail(ErrorKind::InvalidArgument, "inject: unknown neuron");
    if (fire_time < clock_) fail(ErrorKind::PastTime, "inject: fire time precedes the clock");
    push_event(Event{fire_time, 0, injection_seq_++, true, neuron, kNoSynapse});
}

void Network::set_spike_weight(NeuronRole role, std::uint64_t weight) {
    spike_weight_[static_cast<std::size_t>(role)] = weight;
}

void Network::push_event(Event e) {
    queue_.push_back(e);
    std::push_heap(queue_.begin(), queue_.end(), EventAfter{});
}

Network::Event Network::pop_event() {
    std::pop_heap(queue_.begin(), queue_.end(), EventAfter{});
    Event e = queue_.back();
    queue_.pop_back();
    return e;
}

void Network::touch(NeuronId n) {
    if (touched_epoch_[n] == epoch_) return;
    touched_epoch_[n] = epoch_;
    dirty_.push_back(n);
}

Directive Network::fire(NeuronId id, const Event& cause, const RunObserver& observer) {
    Neuron& n = neurons_[id];
    n.potential = 0;
    last_fire_[id] = FireMark{epoch_, cause.time, window_of(cause.rank), true};
    meter_.spike_count += spike_weight_[static_cast<std::size_t>(n.role)];

    FireEvent ev;
    ev.neuron = id;
    ev.role = n.role;
    ev.time = cause.time;
    ev.rank = cause.rank;
    ev.window = window_of(cause.rank);
    ev.injected = cause.injected;
    if (!cause.injected) {
        ev.cause = cause.synapse;
        const Synapse& s = synapses_[cause.synapse];
        ev.cause_pre = s.pre;
        ev.self_loop = (s.pre == s.post);
    }
    Directive d = Directive::Continue;
    if (observer.on_fire) d = observer.on_fire(ev);
    if (d == Directive::Stop) return d;

    for (SynapseId sid : outgoing_[id]) {
        const Synapse& s = synapses_[sid];
        if (s.delay > 0) {
            push_event(Event{cause.time + s.delay, s.rank, sid + 1ull, false, kNoNeuron, sid});
        } else {
            // Zero-delay propagation stays inside the timestep; strictly
            // increasing ranks keep the total order causal.
            push_event(Event{cause.time, cause.rank + 1 + s.rank, sid + 1ull, false, kNoNeuron, sid});
        }
    }
    return Directive::Continue;
}

void Network::run(const RunObserver& observer, RunLimit limit) {
    if (running_) fail(ErrorKind::Precondition, "run: network is already running");
    running_ = true;
    const std::uint64_t start = clock_;
    std::uint64_t events_processed = 0;
    bool have_group = false;
    std::uint64_t group_time = 0, group_window = 0;
    bool stopped = false;

    while (!queue_.empty()) {
        const Event& next = queue_.front();
        if (limit.horizon && next.time > *limit.horizon) break;
        const std::uint64_t w = window_of(next.rank);
        if (have_group && (next.time != group_time || w != group_window)) {
            if (observer.on_boundary &&
                observer.on_boundary(group_time, group_window) == Directive::Stop) {
                stopped = true;
                break;
            }
            have_group = false;
        }
        Event e = pop_event();
        if (e.time > max_time_) {
            running_ = false;
            fail(ErrorKind::GuardTripped, "run: logical time guard exceeded (NEUROMST_MAX_STEPS)");
        }
        if (++events_processed > max_events_) {
            running_ = false;
            fail(ErrorKind::GuardTripped, "run: event budget exceeded");
        }
        clock_ = e.time;
        group_time = e.time;
        group_window = window_of(e.rank);
        have_group = true;

        Directive d = Directive::Continue;
        if (e.injected) {
            const FireMark& mark = last_fire_[e.target];
            bool refractory = mark.valid && mark.epoch == epoch_ && mark.time == e.time &&
                              mark.window == group_window;
            if (!refractory) d = fire(e.target, e, observer);
        } else {
            const Synapse& s = synapses_[e.synapse];
            Neuron& target = neurons_[s.post];
            touch(s.post);
            target.potential = (target.leak >= 2) ? floor_div(target.potential, target.leak) + s.weight
                                                  : target.potential + s.weight;
            if (target.potential >= target.threshold) {
                const FireMark& mark = last_fire_[s.post];
                bool refractory = mark.valid && mark.epoch == epoch_ && mark.time == e.time &&
                                  mark.window == group_window;
                if (!refractory) d = fire(s.post, e, observer);
            }
        }
        if (d == Directive::Stop) {
            stopped = true;
            break;
        }
    }

    if (!stopped && have_group && observer.on_boundary) {
        observer.on_boundary(group_time, group_window);
    }
    if (!stopped && limit.horizon && *limit.horizon > clock_) clock_ = *limit.horizon;
    meter_.run_steps += clock_ - start;
    running_ = false;
}

void Network::reset_activity() {
    if (running_) fail(ErrorKind::Precondition, "reset_activity: network is mid-run");
    queue_.clear();
    for (NeuronId n : dirty_) neurons_[n].potential = 0;
    dirty_.clear();
    ++epoch_;
    clock_ = 0;
    injection_seq_ = 0;
}

} // namespace neuromst
