#include "nec/metrics.hpp"

#include <algorithm>
#include <limits>

#include "nec/combinatorics.hpp"
#include "nec/errors.hpp"

namespace nec {

FieldMatrix error_space(const NecCode& code, NodeId t, const ErrorPattern& rho) {
    return code.decoding_matrix(t).error_rows(rho);
}

FieldMatrix message_space(const NecCode& code, NodeId t) { return code.decoding_matrix(t).message(); }

std::size_t intersection_dim(const NecCode& code, NodeId t, const ErrorPattern& rho) {
    if (rho.empty()) return 0;
    return mat_intersection_dim(error_space(code, t, rho), message_space(code, t));
}

bool intersects(const NecCode& code, NodeId t, const ErrorPattern& rho) { return intersection_dim(code, t, rho) > 0; }

namespace {

std::vector<ErrorPattern> patterns_of_size(const std::vector<ChannelId>& candidates, std::size_t size) {
    std::vector<ErrorPattern> out;
    for (const auto& idx : combinations(candidates.size(), size)) {
        std::vector<ChannelId> chans;
        chans.reserve(size);
        for (auto j : idx) chans.push_back(candidates[j]);
        out.emplace_back(std::move(chans));
    }
    return out;
}

std::vector<ErrorPattern> intersecting_of_size(const NecCode& code, NodeId t, const std::vector<ChannelId>& candidates,
                                               std::size_t size, Execution exec) {
    auto patterns = patterns_of_size(candidates, size);
    auto hit = indexed_map<char>(patterns.size(), exec,
                                 [&](std::size_t i) -> char { return intersects(code, t, patterns[i]); });
    std::vector<ErrorPattern> out;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (hit[i]) out.push_back(std::move(patterns[i]));
    }
    return out;
}

}  // namespace

MinDistance min_distance(const NecCode& code, NodeId t, Execution exec) {
    if (!is_regular_at(code, t)) {
        throw DomainError("minimum distance is defined only for regular codes (sink '" +
                          code.network().node_name(t) + "' has Rank(F_t) < " + std::to_string(code.rate()) + ")");
    }
    // Channels outside the upstream set have zero rows at t.
    const auto candidates = code.network().upstream_channels(t);
    for (std::size_t size = 1; size <= candidates.size(); ++size) {
        auto patterns = patterns_of_size(candidates, size);
        auto hit = indexed_map<char>(patterns.size(), exec,
                                     [&](std::size_t i) -> char { return intersects(code, t, patterns[i]); });
        auto first = std::find(hit.begin(), hit.end(), char{1});
        if (first != hit.end()) return {size, patterns[static_cast<std::size_t>(first - hit.begin())]};
    }
    // Unreachable for a regular code: ρ = In(t) spans the whole received space.
    throw DomainError("no error pattern meets the message space at sink '" + code.network().node_name(t) + "'");
}

DistanceForms min_distance_oracle(const NecCode& code, NodeId t) {
    if (!is_regular_at(code, t)) throw DomainError("minimum distance is defined only for regular codes");
    const auto& n = code.network();
    const std::size_t m = n.channel_count();
    if (m > 20) throw EnumerationCapError("distance oracle enumerates 2^|E| patterns; |E| = " + std::to_string(m));

    constexpr auto inf = std::numeric_limits<std::size_t>::max();
    DistanceForms best{inf, inf, inf};
    const auto phi = message_space(code, t);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
        std::vector<ChannelId> chans;
        for (ChannelId e = 0; e < m; ++e)
            if (mask & (std::uint32_t{1} << e)) chans.push_back(e);
        ErrorPattern rho(std::move(chans));
        const auto delta = error_space(code, t, rho);
        if (mat_intersection_dim(delta, phi) == 0) continue;
        best.by_size = std::min(best.by_size, rho.size());
        best.by_rank = std::min(best.by_rank, pattern_rank(n, rho, t));
        best.by_dimension = std::min(best.by_dimension, mat_rank(delta));
    }
    return best;
}

std::optional<long> SinkDistance::singleton_gap() const {
    if (!distance) return std::nullopt;
    return redundancy + 1 - static_cast<long>(*distance);
}

DistanceReport verify_mds(const NecCode& code, Execution exec) {
    const auto& n = code.network();
    DistanceReport report;
    report.rate = code.rate();
    report.regular = true;
    report.is_mds = true;
    for (NodeId t : n.sinks()) {
        SinkDistance s;
        s.sink = t;
        s.min_cut = min_cut(n, t);
        s.redundancy = static_cast<long>(s.min_cut) - static_cast<long>(code.rate());
        s.regular = is_regular_at(code, t);
        if (s.regular) {
            auto d = min_distance(code, t, exec);
            s.distance = d.distance;
            s.witness = d.witness;
            s.mds = static_cast<long>(d.distance) == s.redundancy + 1;
        }
        report.regular = report.regular && s.regular;
        report.is_mds = report.is_mds && s.mds;
        report.sinks.push_back(std::move(s));
    }
    return report;
}

std::vector<ErrorPattern> compute_q(const NecCode& code, NodeId t, Execution exec) {
    const auto& n = code.network();
    if (!is_regular_at(code, t)) throw DomainError("Q(t) requires an MDS code; code is not regular");
    const std::size_t d = min_distance(code, t, exec).distance;
    const long bound = static_cast<long>(min_cut(n, t)) - static_cast<long>(code.rate()) + 1;
    if (static_cast<long>(d) != bound) {
        throw DomainError("Q(t) requires an MDS code; d_min at sink '" + n.node_name(t) + "' is " + std::to_string(d) +
                          ", bound is " + std::to_string(bound));
    }
    return intersecting_of_size(code, t, n.upstream_channels(t), d, exec);
}

}  // namespace nec
