#include "neuromst/unionfind.hpp"

#include <algorithm>

#include "neuromst/costmodel.hpp"
#include "neuromst/error.hpp"

namespace neuromst {

namespace {
constexpr std::int64_t kParkedThreshold = (1ll << 62); // source never fires from deliveries
}

UnionFindNet::UnionFindNet(std::uint32_t num_vertices)
    : owned_(std::make_unique<Network>()) {
    net_ = owned_.get();
    build(num_vertices, true);
}

UnionFindNet::UnionFindNet(Network& net, std::uint32_t num_vertices, bool with_query_source) {
    net_ = &net;
    build(num_vertices, with_query_source);
}

void UnionFindNet::build(std::uint32_t num_vertices, bool with_query_source) {
    if (num_vertices == 0)
        fail(ErrorKind::InvalidArgument, "union-find: need at least one vertex");
    n_ = num_vertices;
    alpha_ = inverse_ackermann(n_);
    window_ = static_cast<std::uint64_t>(n_) + 8; // probe rank budget: chain + echo + slack
    net_->set_rank_window(window_);
    net_->set_spike_weight(NeuronRole::UfVertex, 0); // queries are credited, not counted per fire

    vertex_.reserve(n_);
    parent_syn_.reserve(n_);
    rank_.assign(n_, 0);
    if (with_query_source) source_ = net_->add_neuron(kParkedThreshold, 1, NeuronRole::Source);
    for (std::uint32_t x = 0; x < n_; ++x)
        vertex_.push_back(net_->add_neuron(1, 1, NeuronRole::UfVertex));
    vertex_of_neuron_.assign(net_->neuron_count(), kNotVertex);
    for (std::uint32_t x = 0; x < n_; ++x) vertex_of_neuron_[vertex_[x]] = x;
    // Initially every vertex's parent synapse points to itself.
    for (std::uint32_t x = 0; x < n_; ++x)
        parent_syn_.push_back(net_->add_synapse(vertex_[x], vertex_[x], 1, 0, 0));
    if (with_query_source) {
        query_a_ = net_->add_synapse(source_, vertex_[0], 1, 0, window_ - 1);
        query_b_ = net_->add_synapse(source_, source_, 1, 0, 2 * window_ - 1); // parked
    }
}

std::uint32_t UnionFindNet::peek_parent(std::uint32_t x) const {
    NeuronId post = net_->synapse(parent_syn_[x]).post;
    return vertex_of_neuron_[post];
}

std::uint32_t UnionFindNet::peek_root(std::uint32_t x) const {
    std::uint32_t cur = x;
    for (std::uint32_t hops = 0; hops <= n_; ++hops) {
        std::uint32_t p = peek_parent(cur);
        if (p == cur) return cur;
        cur = p;
    }
    fail(ErrorKind::Precondition, "union-find: parent synapses form a cycle");
}

void UnionFindNet::begin_submission(std::uint32_t u, std::uint32_t v, std::uint64_t window_u,
                                    std::uint64_t window_v) {
    if (sub_.active)
        fail(ErrorKind::Precondition, "union-find: previous submission still in flight");
    sub_ = Submission{};
    sub_.active = true;
    sub_.full_query = true;
    sub_.u = u;
    sub_.v = v;
    sub_.window_u = window_u;
    sub_.window_v = window_v;
}

void UnionFindNet::note_vertex_fire(const FireEvent& ev) {
    if (!sub_.active) return;
    std::uint32_t x = vertex_of_neuron_[ev.neuron];
    if (ev.window == sub_.window_u && sub_.resolved_stages == 0)
        sub_.fires[0].push_back(x);
    else if (ev.window == sub_.window_v && sub_.resolved_stages <= 1)
        sub_.fires[1].push_back(x);
}

void UnionFindNet::resolve_probe(int stage) {
    auto& fires = sub_.fires[stage];
    if (fires.empty()) {
        // Endpoint never fired: its query synapse was parked (find(u, u)), so
        // the probe resolves to the other probe's root.
        if (stage == 1 && sub_.have_root[0]) {
            sub_.root[1] = sub_.root[0];
            sub_.have_root[1] = true;
        }
        return;
    }
    sub_.root[stage] = fires.back(); // last fire in the window is the root
    sub_.have_root[stage] = true;
    sub_.visited[stage].assign(fires.begin(), fires.end() - 1);
}

void UnionFindNet::apply_union(std::uint32_t root_a, std::uint32_t root_b,
                               const std::vector<std::uint32_t>& visited_a,
                               const std::vector<std::uint32_t>& visited_b) {
    std::uint32_t winner, loser;
    if (rank_[root_a] > rank_[root_b]) {
        winner = root_a;
        loser = root_b;
    } else if (rank_[root_a] < rank_[root_b]) {
        winner = root_b;
        loser = root_a;
    } else {
        winner = std::min(root_a, root_b); // tie: smaller id wins
        loser = std::max(root_a, root_b);
        rank_[winner] += 1;
    }

    std::vector<SynapseMod> mods;
    mods.push_back(SynapseMod{parent_syn_[loser], vertex_[winner], {}, {}, {}});
    auto compress = [&](const std::vector<std::uint32_t>& visited) {
        for (std::uint32_t x : visited) {
            if (x == winner || peek_parent(x) == winner) continue;
            mods.push_back(SynapseMod{parent_syn_[x], vertex_[winner], {}, {}, {}});
        }
    };
    compress(visited_a);
    compress(visited_b);
    net_->rewire(mods, alpha_); // union + path compression in one charged batch
    accepted_ += 1;
}

bool UnionFindNet::complete_submission(bool full_query) {
    resolve_probe(1);
    last_find_.valid = true;
    last_find_.u = sub_.u;
    last_find_.v = sub_.v;
    last_find_.result.root_a = sub_.root[0];
    last_find_.result.root_b = sub_.have_root[1] ? sub_.root[1] : sub_.root[0];
    last_find_.result.root_count = (last_find_.result.root_a == last_find_.result.root_b) ? 1 : 2;
    last_find_.visited_a = std::move(sub_.visited[0]);
    last_find_.visited_b = std::move(sub_.visited[1]);
    net_->credit_spikes(4); // two endpoint spikes, two root resolutions
    sub_ = Submission{};

    bool accepted = false;
    if (full_query) {
        if (last_find_.result.root_count == 2) {
            apply_union(last_find_.result.root_a, last_find_.result.root_b,
                        last_find_.visited_a, last_find_.visited_b);
            accepted = true;
        } else {
            net_->charge_structural(alpha_); // uniform per-query cost
        }
        last_find_.valid = false;
    }
    return accepted;
}

std::optional<bool> UnionFindNet::handle_boundary(std::uint64_t, std::uint64_t window) {
    if (!sub_.active) return std::nullopt;
    if (sub_.resolved_stages == 0 && window == sub_.window_u) {
        resolve_probe(0);
        sub_.resolved_stages = 1;
        return std::nullopt;
    }
    if (sub_.resolved_stages <= 1 && window == sub_.window_v) {
        if (sub_.resolved_stages == 0) resolve_probe(0);
        sub_.resolved_stages = 2;
        return complete_submission(sub_.full_query);
    }
    return std::nullopt;
}

UnionFindNet::FindResult UnionFindNet::find(std::uint32_t u, std::uint32_t v) {
    if (source_ == kNoNeuron)
        fail(ErrorKind::Precondition, "union-find: find() needs the query source layout");
    if (u >= n_ || v >= n_) fail(ErrorKind::InvalidArgument, "union-find: vertex out of range");

    net_->reset_activity();
    // Point the source at the endpoints; a self-query parks the second synapse.
    SynapseMod mods[2];
    mods[0].synapse = query_a_;
    mods[0].post = vertex_[u];
    mods[1].synapse = query_b_;
    mods[1].post = (u == v) ? source_ : vertex_[v];
    net_->rewire(mods, 2);

    sub_ = Submission{};
    sub_.active = true;
    sub_.full_query = false;
    sub_.u = u;
    sub_.v = v;
    sub_.window_u = 1; // source fires at rank 0; probes land in windows 1 and 2
    sub_.window_v = 2;

    net_->inject(source_, 0);
    RunObserver obs;
    obs.on_fire = [&](const FireEvent& ev) {
        if (ev.role == NeuronRole::UfVertex) note_vertex_fire(ev);
        return Directive::Continue;
    };
    obs.on_boundary = [&](std::uint64_t t, std::uint64_t w) {
        handle_boundary(t, w);
        return Directive::Continue;
    };
    net_->run(obs);
    if (sub_.active) {
        // Quiesced inside probe A's window (parked probe B produced no event).
        if (sub_.resolved_stages == 0) resolve_probe(0);
        sub_.resolved_stages = 2;
        complete_submission(false);
    }
    return last_find_.result;
}

void UnionFindNet::unite(std::uint32_t u, std::uint32_t v) {
    if (!last_find_.valid || last_find_.u != u || last_find_.v != v)
        fail(ErrorKind::Precondition, "union-find: unite requires a preceding find of the pair");
    if (last_find_.result.root_count != 2)
        fail(ErrorKind::Precondition, "union-find: endpoints already share a root");
    apply_union(last_find_.result.root_a, last_find_.result.root_b, last_find_.visited_a,
                last_find_.visited_b);
    last_find_.valid = false;
}

bool UnionFindNet::query_edge(std::uint32_t u, std::uint32_t v) {
    FindResult r = find(u, v);
    if (r.root_count == 2) {
        unite(u, v);
        return true;
    }
    net_->charge_structural(alpha_); // rejected edges still pay the query cost
    return false;
}

} // namespace neuromst
