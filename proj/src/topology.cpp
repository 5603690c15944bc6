#include "nec/topology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "nec/combinatorics.hpp"
#include "nec/errors.hpp"

namespace nec {

Network::Network(std::vector<std::string> nodes, const std::string& source, const std::vector<std::string>& sinks,
                 const std::vector<ChannelSpec>& channels)
    : nodes_(std::move(nodes)) {
    for (NodeId v = 0; v < nodes_.size(); ++v) {
        if (!node_index_.emplace(nodes_[v], v).second) throw UsageError("duplicate node id '" + nodes_[v] + "'");
    }
    source_ = node_index(source);
    for (const auto& t : sinks) {
        NodeId v = node_index(t);
        if (std::find(sinks_.begin(), sinks_.end(), v) != sinks_.end()) throw UsageError("duplicate sink '" + t + "'");
        sinks_.push_back(v);
    }
    in_.resize(nodes_.size());
    out_.resize(nodes_.size());
    for (const auto& c : channels) {
        const ChannelId e = channels_.size();
        if (!channel_index_.emplace(c.id, e).second) throw UsageError("duplicate channel id '" + c.id + "'");
        Channel ch{c.id, node_index(c.tail), node_index(c.head)};
        out_[ch.tail].push_back(e);
        in_[ch.head].push_back(e);
        channels_.push_back(std::move(ch));
    }
}

NodeId Network::node_index(const std::string& name) const {
    auto it = node_index_.find(name);
    if (it == node_index_.end()) throw UsageError("unknown node '" + name + "'");
    return it->second;
}

ChannelId Network::channel_index(const std::string& id) const {
    auto it = channel_index_.find(id);
    if (it == channel_index_.end()) throw UsageError("unknown channel '" + id + "'");
    return it->second;
}

bool Network::is_sink(NodeId v) const { return std::find(sinks_.begin(), sinks_.end(), v) != sinks_.end(); }

std::vector<NodeId> Network::internal_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < nodes_.size(); ++v) {
        if (v != source_ && !is_sink(v)) out.push_back(v);
    }
    return out;
}

std::vector<ChannelId> Network::upstream_channels(NodeId t) const {
    std::vector<bool> reaches(nodes_.size(), false);
    std::deque<NodeId> queue{t};
    reaches.at(t) = true;
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (ChannelId e : in_[v]) {
            NodeId u = channels_[e].tail;
            if (!reaches[u]) {
                reaches[u] = true;
                queue.push_back(u);
            }
        }
    }
    std::vector<ChannelId> out;
    for (ChannelId e = 0; e < channels_.size(); ++e) {
        if (reaches[channels_[e].head]) out.push_back(e);
    }
    return out;
}

std::vector<Violation> validate(const Network& n) {
    std::vector<Violation> v;
    const NodeId s = n.source();

    if (n.sinks().empty()) v.push_back({"sinks non-empty", "no sink nodes declared"});
    if (n.is_sink(s)) v.push_back({"source is sink", "source '" + n.node_name(s) + "' is also a sink"});
    if (!n.in(s).empty()) {
        v.push_back({"source in-degree", "source '" + n.node_name(s) + "' has " + std::to_string(n.in(s).size()) +
                                             " incoming channel(s)"});
    }
    for (NodeId t : n.sinks()) {
        if (!n.out(t).empty()) {
            v.push_back({"sink out-degree", "sink '" + n.node_name(t) + "' has " + std::to_string(n.out(t).size()) +
                                                " outgoing channel(s)"});
        }
    }

    // Kahn's algorithm over nodes.
    std::vector<std::size_t> indeg(n.node_count());
    for (const auto& c : n.channels()) ++indeg[c.head];
    std::deque<NodeId> ready;
    for (NodeId u = 0; u < n.node_count(); ++u)
        if (indeg[u] == 0) ready.push_back(u);
    std::size_t visited = 0;
    while (!ready.empty()) {
        NodeId u = ready.front();
        ready.pop_front();
        ++visited;
        for (ChannelId e : n.out(u)) {
            if (--indeg[n.channel(e).head] == 0) ready.push_back(n.channel(e).head);
        }
    }
    if (visited != n.node_count()) v.push_back({"acyclic", "the channel graph contains a directed cycle"});

    for (ChannelId e = 0; e < n.channel_count(); ++e) {
        for (ChannelId d : n.in(n.channel(e).tail)) {
            if (d >= e) {
                v.push_back({"channel order", "channel '" + n.channel(d).id + "' feeds '" + n.channel(e).id +
                                                  "' but is not listed before it"});
            }
        }
    }

    std::vector<bool> seen(n.node_count(), false);
    std::deque<NodeId> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (ChannelId e : n.out(u)) {
            NodeId w = n.channel(e).head;
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    for (NodeId t : n.sinks()) {
        if (!seen[t]) v.push_back({"sink reachability", "sink '" + n.node_name(t) + "' is unreachable from the source"});
    }
    return v;
}

// ---------------------------------------------------------------------------

ErrorPattern::ErrorPattern(std::vector<ChannelId> channels) : channels_(std::move(channels)) {
    std::sort(channels_.begin(), channels_.end());
    if (std::adjacent_find(channels_.begin(), channels_.end()) != channels_.end()) {
        throw UsageError("error pattern lists a channel twice");
    }
}

ErrorPattern ErrorPattern::on(const Network& n, std::vector<ChannelId> channels) {
    for (ChannelId e : channels) {
        if (e >= n.channel_count()) throw UsageError("error pattern channel index " + std::to_string(e) + " out of range");
    }
    return ErrorPattern(std::move(channels));
}

bool ErrorPattern::contains(ChannelId e) const { return std::binary_search(channels_.begin(), channels_.end(), e); }

bool ErrorPattern::is_subset_of(const ErrorPattern& other) const {
    return std::includes(other.channels_.begin(), other.channels_.end(), channels_.begin(), channels_.end());
}

std::string ErrorPattern::describe(const Network& n) const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < channels_.size(); ++i) os << (i ? "," : "") << n.channel(channels_[i]).id;
    os << '}';
    return os.str();
}

// ---------------------------------------------------------------------------

std::size_t unit_max_flow(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& arcs, NodeId s,
                          NodeId t) {
    if (s == t) throw UsageError("max flow from a node to itself");
    // Residual arcs: 2i forward (cap 1), 2i+1 backward (cap 0).
    std::vector<int> cap(arcs.size() * 2);
    std::vector<NodeId> to(arcs.size() * 2);
    std::vector<std::vector<std::size_t>> adj(node_count);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        auto [u, w] = arcs[i];
        to[2 * i] = w;
        cap[2 * i] = 1;
        to[2 * i + 1] = u;
        cap[2 * i + 1] = 0;
        adj[u].push_back(2 * i);
        adj[w].push_back(2 * i + 1);
    }
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t flow = 0;
    std::vector<std::size_t> via(node_count);
    for (;;) {
        std::fill(via.begin(), via.end(), none);
        std::deque<NodeId> queue{s};
        bool found = false;
        while (!queue.empty() && !found) {
            NodeId u = queue.front();
            queue.pop_front();
            for (std::size_t a : adj[u]) {
                NodeId w = to[a];
                if (cap[a] == 0 || w == s || via[w] != none) continue;
                via[w] = a;
                if (w == t) {
                    found = true;
                    break;
                }
                queue.push_back(w);
            }
        }
        if (!found) return flow;
        for (NodeId w = t; w != s; w = to[via[w] ^ 1]) {
            --cap[via[w]];
            ++cap[via[w] ^ 1];
        }
        ++flow;
    }
}

namespace {

void require_sink(const Network& n, NodeId t) {
    if (t >= n.node_count() || !n.is_sink(t)) throw UsageError("node " + std::to_string(t) + " is not a sink");
}

}  // namespace

std::size_t min_cut(const Network& n, NodeId t) {
    require_sink(n, t);
    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(n.channel_count());
    for (const auto& c : n.channels()) arcs.emplace_back(c.tail, c.head);
    return unit_max_flow(n.node_count(), arcs, n.source(), t);
}

std::size_t pattern_rank(const Network& n, const ErrorPattern& rho, NodeId t) {
    require_sink(n, t);
    if (rho.empty()) return 0;
    const NodeId s_rho = n.node_count();
    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(n.channel_count());
    for (ChannelId e = 0; e < n.channel_count(); ++e) {
        const auto& c = n.channel(e);
        arcs.emplace_back(rho.contains(e) ? s_rho : c.tail, c.head);
    }
    return unit_max_flow(n.node_count() + 1, arcs, s_rho, t);
}

std::vector<ErrorPattern> enumerate_rt(const Network& n, NodeId t, std::size_t delta, const EnumerationLimits& limits,
                                       Execution exec) {
    require_sink(n, t);
    if (delta == 0) return {ErrorPattern{}};
    const auto candidates = n.upstream_channels(t);
    if (delta > candidates.size()) return {};
    if (candidates.size() > limits.max_candidates || delta > limits.max_delta) {
        throw EnumerationCapError("R_t enumeration at sink '" + n.node_name(t) + "' needs " +
                                  std::to_string(candidates.size()) + " candidate channels and delta " +
                                  std::to_string(delta) + " (limits " + std::to_string(limits.max_candidates) + ", " +
                                  std::to_string(limits.max_delta) + ")");
    }
    const auto subsets = combinations(candidates.size(), delta);
    auto pattern_at = [&](std::size_t i) {
        std::vector<ChannelId> chans;
        chans.reserve(delta);
        for (auto j : subsets[i]) chans.push_back(candidates[j]);
        return ErrorPattern(std::move(chans));
    };
    auto full_rank = indexed_map<char>(subsets.size(), exec, [&](std::size_t i) -> char {
        return pattern_rank(n, pattern_at(i), t) == delta;
    });
    std::vector<ErrorPattern> out;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        if (full_rank[i]) out.push_back(pattern_at(i));
    }
    return out;
}

std::uint64_t rt_sum(const Network& n, const std::map<NodeId, std::size_t>& delta_per_sink,
                     const EnumerationLimits& limits, Execution exec) {
    std::uint64_t total = 0;
    for (auto [t, delta] : delta_per_sink) total += enumerate_rt(n, t, delta, limits, exec).size();
    return total;
}

Network combination_network(std::size_t relays, std::size_t k) {
    if (relays == 0 || k == 0 || k > relays) throw UsageError("combination network needs 1 <= k <= N");
    std::vector<std::string> nodes{"s"};
    for (std::size_t i = 1; i <= relays; ++i) nodes.push_back("i" + std::to_string(i));
    std::vector<std::string> sinks;
    std::vector<ChannelSpec> channels;
    auto next_channel = [&](const std::string& tail, const std::string& head) {
        channels.push_back({"e" + std::to_string(channels.size() + 1), tail, head});
    };
    for (std::size_t i = 1; i <= relays; ++i) next_channel("s", "i" + std::to_string(i));
    std::size_t sink_no = 0;
    for (const auto& subset : combinations(relays, k)) {
        std::string t = "t" + std::to_string(++sink_no);
        nodes.push_back(t);
        sinks.push_back(t);
        for (auto r : subset) next_channel("i" + std::to_string(r + 1), t);
    }
    return Network(std::move(nodes), "s", sinks, channels);
}

}  // namespace nec
