#include "neuromst/graphio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "neuromst/error.hpp"

namespace neuromst {

std::uint64_t SplitRng::next() {
    // splitmix64: small, seed-stable across platforms.
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t SplitRng::below(std::uint64_t bound) {
    // Rejection sampling to stay unbiased.
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

std::uint64_t SplitRng::range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
}

QuantizeSpec parse_quantize_flag(const std::string& flag) {
    QuantizeSpec q;
    if (flag.empty() || flag == "none") return q;
    if (flag == "round") {
        q.kind = QuantizeSpec::Kind::Round;
        return q;
    }
    if (flag.rfind("scale:", 0) == 0) {
        std::string body = flag.substr(6);
        // Accept both "scale:10^3" and "scale:1000".
        std::uint64_t factor = 0;
        if (body.rfind("10^", 0) == 0) {
            q.scale_pow10 = static_cast<std::uint32_t>(std::stoul(body.substr(3)));
            q.kind = QuantizeSpec::Kind::Scale;
            return q;
        }
        factor = std::stoull(body);
        std::uint32_t k = 0;
        std::uint64_t f = factor;
        while (f > 1 && f % 10 == 0) {
            f /= 10;
            ++k;
        }
        if (f != 1 || factor == 0)
            fail(ErrorKind::InvalidArgument, "quantize: scale must be a power of ten");
        q.scale_pow10 = k;
        q.kind = QuantizeSpec::Kind::Scale;
        return q;
    }
    fail(ErrorKind::InvalidArgument, "quantize: expected 'round' or 'scale:10^k'");
}

namespace {

struct MmHeader {
    bool pattern = false;
    bool real = false;
    bool symmetric = false;
};

MmHeader parse_header(const std::string& line, const std::string& path) {
    std::istringstream iss(line);
    std::string banner, object, format, field, symmetry;
    iss >> banner >> object >> format >> field >> symmetry;
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    if (banner != "%%MatrixMarket" || lower(object) != "matrix")
        fail(ErrorKind::Io, path + ": not a Matrix Market file");
    if (lower(format) != "coordinate")
        fail(ErrorKind::Io, path + ": only coordinate format is supported");
    MmHeader h;
    std::string f = lower(field);
    if (f == "pattern") h.pattern = true;
    else if (f == "real" || f == "double") h.real = true;
    else if (f != "integer")
        fail(ErrorKind::Io, path + ": unsupported field type '" + field + "'");
    std::string s = lower(symmetry);
    if (s == "symmetric") h.symmetric = true;
    else if (s != "general")
        fail(ErrorKind::Io, path + ": unsupported symmetry '" + symmetry + "'");
    return h;
}

std::uint64_t quantize_value(double value, const QuantizeSpec& q, const std::string& path) {
    double scaled = value;
    if (q.kind == QuantizeSpec::Kind::Scale) scaled = value * std::pow(10.0, q.scale_pow10);
    if (q.kind == QuantizeSpec::Kind::None)
        fail(ErrorKind::Io, path + ": real-valued entries require --quantize round|scale:10^k");
    double rounded = std::llround(scaled);
    if (rounded < 0) fail(ErrorKind::Io, path + ": negative weight after quantization");
    return static_cast<std::uint64_t>(rounded);
}

} // namespace

Graph load_matrix_market(const std::string& path, WeightMode mode,
                         const std::optional<SynthSpec>& synth,
                         const QuantizeSpec& quantize) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, path + ": cannot open");
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::Io, path + ": empty file");
    MmHeader header = parse_header(line, path);
    if (mode == WeightMode::FromValues && header.pattern)
        fail(ErrorKind::Io, path + ": pattern file carries no values; use synthetic weights");
    if (mode == WeightMode::Synth && !synth)
        fail(ErrorKind::InvalidArgument, "load_matrix_market: synth mode needs a SynthSpec");

    // Skip comments, read the size line.
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream dims(line);
    std::uint64_t rows = 0, cols = 0, nnz = 0;
    if (!(dims >> rows >> cols >> nnz)) fail(ErrorKind::Io, path + ": malformed size line");
    if (rows != cols) fail(ErrorKind::Io, path + ": adjacency matrix must be square");

    Graph g;
    g.num_vertices = static_cast<std::uint32_t>(rows);
    std::unordered_map<std::uint64_t, std::uint32_t> seen; // pair -> edge slot
    g.edges.reserve(nnz);

    for (std::uint64_t k = 0; k < nnz; ++k) {
        if (!std::getline(in, line)) fail(ErrorKind::Io, path + ": fewer entries than declared");
        std::istringstream es(line);
        std::int64_t i = 0, j = 0;
        if (!(es >> i >> j)) fail(ErrorKind::Io, path + ": malformed entry");
        if (i < 1 || j < 1 || static_cast<std::uint64_t>(i) > rows ||
            static_cast<std::uint64_t>(j) > cols)
            fail(ErrorKind::Io, path + ": entry index out of range");
        std::uint64_t w = 0;
        if (!header.pattern) {
            if (header.real) {
                double value = 0;
                if (!(es >> value)) fail(ErrorKind::Io, path + ": missing value");
                if (mode == WeightMode::FromValues) {
                    if (value < 0) fail(ErrorKind::Io, path + ": negative weight");
                    // Whole-valued reals pass without a quantize flag.
                    if (value == std::floor(value) && quantize.kind == QuantizeSpec::Kind::None)
                        w = static_cast<std::uint64_t>(value);
                    else
                        w = quantize_value(value, quantize, path);
                }
            } else {
                std::int64_t value = 0;
                if (!(es >> value)) fail(ErrorKind::Io, path + ": missing value");
                if (mode == WeightMode::FromValues) {
                    if (value < 0) fail(ErrorKind::Io, path + ": negative weight");
                    w = static_cast<std::uint64_t>(value);
                }
            }
        }
        std::uint32_t u = static_cast<std::uint32_t>(i - 1);
        std::uint32_t v = static_cast<std::uint32_t>(j - 1);
        if (u == v) {
            g.dropped_self_loops += 1;
            continue;
        }
        std::uint32_t a = std::max(u, v), b = std::min(u, v);
        std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
        auto it = seen.find(key);
        if (it != seen.end()) {
            g.collapsed_duplicates += 1;
            if (mode == WeightMode::FromValues)
                g.edges[it->second].weight = std::min(g.edges[it->second].weight, w);
            continue;
        }
        seen.emplace(key, static_cast<std::uint32_t>(g.edges.size()));
        g.edges.push_back(Edge{w, a, b, static_cast<std::uint32_t>(g.edges.size())});
    }

    if (mode == WeightMode::Synth) {
        SplitRng rng(synth->seed);
        if (synth->wmin > synth->wmax)
            fail(ErrorKind::InvalidArgument, "synth weights: wmin exceeds wmax");
        for (Edge& e : g.edges) e.weight = rng.range(synth->wmin, synth->wmax);
    }
    return g;
}

void write_matrix_market(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Io, path + ": cannot open for writing");
    out << "%%MatrixMarket matrix coordinate integer symmetric\n";
    out << g.num_vertices << ' ' << g.num_vertices << ' ' << g.edges.size() << '\n';
    for (const Edge& e : g.edges) {
        std::uint32_t row = std::max(e.u, e.v), col = std::min(e.u, e.v);
        out << (row + 1) << ' ' << (col + 1) << ' ' << e.weight << '\n';
    }
    if (!out) fail(ErrorKind::Io, path + ": write failed");
}

Graph gen_random_graph(std::uint32_t n, std::uint64_t m, std::uint64_t wmin,
                       std::uint64_t wmax, std::uint64_t seed) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "gen_random_graph: need at least one vertex");
    if (wmin > wmax) fail(ErrorKind::InvalidArgument, "gen_random_graph: wmin exceeds wmax");
    std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (m + 1 < static_cast<std::uint64_t>(n) || m > max_edges)
        fail(ErrorKind::InvalidArgument, "gen_random_graph: infeasible (n, m) for a connected simple graph");

    SplitRng rng(seed);
    Graph g;
    g.num_vertices = n;
    g.edges.reserve(m);

    // Random spanning tree: attach each vertex of a shuffled order to a
    // random earlier one.
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    for (std::uint32_t i = n; i > 1; --i) {
        std::uint32_t j = static_cast<std::uint32_t>(rng.below(i));
        std::swap(order[i - 1], order[j]);
    }
    auto pack = [](std::uint32_t u, std::uint32_t v) {
        std::uint32_t a = std::max(u, v), b = std::min(u, v);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    std::unordered_map<std::uint64_t, bool> used;
    auto add_edge = [&](std::uint32_t u, std::uint32_t v) {
        g.edges.push_back(Edge{rng.range(wmin, wmax), u, v,
                               static_cast<std::uint32_t>(g.edges.size())});
        used.emplace(pack(u, v), true);
    };
    for (std::uint32_t i = 1; i < n; ++i) {
        std::uint32_t j = static_cast<std::uint32_t>(rng.below(i));
        add_edge(order[i], order[j]);
    }

    std::uint64_t extra = m - (n - 1);
    if (extra > 0 && m * 2 >= max_edges) {
        // Dense request: enumerate the complement and sample without rejection.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pool;
        pool.reserve(max_edges - (n - 1));
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v)
                if (!used.count(pack(u, v))) pool.emplace_back(u, v);
        for (std::uint64_t i = pool.size(); i > 1; --i) {
            std::uint64_t j = rng.below(i);
            std::swap(pool[i - 1], pool[j]);
        }
        for (std::uint64_t k = 0; k < extra; ++k) add_edge(pool[k].first, pool[k].second);
    } else {
        while (extra > 0) {
            std::uint32_t u = static_cast<std::uint32_t>(rng.below(n));
            std::uint32_t v = static_cast<std::uint32_t>(rng.below(n));
            if (u == v || used.count(pack(u, v))) continue;
            add_edge(u, v);
            --extra;
        }
    }
    return g;
}

} // namespace neuromst
