#pragma once

// Acyclic single-source multicast networks with unit-capacity channels.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nec/execution.hpp"

namespace nec {

using NodeId = std::size_t;
using ChannelId = std::size_t;

struct ChannelSpec {
    std::string id;
    std::string tail;
    std::string head;
};

struct Channel {
    std::string id;
    NodeId tail;
    NodeId head;
};

/// Nodes, one source, a sink set, and channels listed in upstream-to-downstream
/// order. The constructor only resolves names (unknown or duplicate names are a
/// UsageError); the structural invariants are checked by validate().
class Network {
public:
    Network(std::vector<std::string> nodes, const std::string& source, const std::vector<std::string>& sinks,
            const std::vector<ChannelSpec>& channels);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t channel_count() const { return channels_.size(); }

    const std::string& node_name(NodeId v) const { return nodes_.at(v); }
    NodeId node_index(const std::string& name) const;
    ChannelId channel_index(const std::string& id) const;
    const Channel& channel(ChannelId e) const { return channels_.at(e); }
    const std::vector<Channel>& channels() const { return channels_; }
    const std::vector<std::string>& node_names() const { return nodes_; }

    NodeId source() const { return source_; }
    const std::vector<NodeId>& sinks() const { return sinks_; }
    bool is_sink(NodeId v) const;
    /// Nodes that are neither the source nor a sink.
    std::vector<NodeId> internal_nodes() const;

    const std::vector<ChannelId>& in(NodeId v) const { return in_.at(v); }
    const std::vector<ChannelId>& out(NodeId v) const { return out_.at(v); }

    /// Channels whose head is `t` or can reach `t`, in channel order. Errors on
    /// any other channel cannot influence what `t` receives.
    std::vector<ChannelId> upstream_channels(NodeId t) const;

private:
    std::vector<std::string> nodes_;
    std::unordered_map<std::string, NodeId> node_index_;
    NodeId source_ = 0;
    std::vector<NodeId> sinks_;
    std::vector<Channel> channels_;
    std::unordered_map<std::string, ChannelId> channel_index_;
    std::vector<std::vector<ChannelId>> in_;
    std::vector<std::vector<ChannelId>> out_;
};

struct Violation {
    std::string rule;  // "acyclic", "channel order", "source in-degree", ...
    std::string detail;
};

/// Empty result means the network satisfies every structural invariant.
std::vector<Violation> validate(const Network& n);

/// A set of channels, kept sorted in channel order.
class ErrorPattern {
public:
    ErrorPattern() = default;
    /// Throws UsageError on duplicates.
    explicit ErrorPattern(std::vector<ChannelId> channels);
    /// As above, plus a range check against `n`.
    static ErrorPattern on(const Network& n, std::vector<ChannelId> channels);

    const std::vector<ChannelId>& channels() const { return channels_; }
    std::size_t size() const { return channels_.size(); }
    bool empty() const { return channels_.empty(); }
    bool contains(ChannelId e) const;
    bool is_subset_of(const ErrorPattern& other) const;

    std::string describe(const Network& n) const;

    auto operator<=>(const ErrorPattern&) const = default;

private:
    std::vector<ChannelId> channels_;
};

/// Maximum number of arc-disjoint paths from `s` to `t`.
std::size_t unit_max_flow(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& arcs, NodeId s,
                          NodeId t);

/// Minimum cut capacity C_t between the source and sink `t`.
std::size_t min_cut(const Network& n, NodeId t);

/// rank_t(ρ): each channel of ρ is detached from its tail and re-attached to a
/// fresh node s_ρ; the rank is the min cut from s_ρ to t.
std::size_t pattern_rank(const Network& n, const ErrorPattern& rho, NodeId t);

struct EnumerationLimits {
    std::size_t max_candidates = 40;
    std::size_t max_delta = 4;
};

/// R_t(δ): all patterns with |ρ| = rank_t(ρ) = δ, in lexicographic channel order.
std::vector<ErrorPattern> enumerate_rt(const Network& n, NodeId t, std::size_t delta,
                                       const EnumerationLimits& limits = {}, Execution exec = Execution::parallel);

/// Σ_t |R_t(δ_t)| over the sinks named in `delta_per_sink`.
std::uint64_t rt_sum(const Network& n, const std::map<NodeId, std::size_t>& delta_per_sink,
                     const EnumerationLimits& limits = {}, Execution exec = Execution::parallel);

/// The (N, k) combination network: source s, relays i1..iN, one sink per
/// k-subset of relays. Channels: s->relay first, then relay->sink grouped by sink.
Network combination_network(std::size_t relays, std::size_t k);

}  // namespace nec
