#pragma once

// Error spaces, message spaces and minimum distance of a code at each sink.

#include <cstddef>
#include <optional>
#include <vector>

#include "nec/execution.hpp"
#include "nec/nec_code.hpp"

namespace nec {

/// Spanning rows of Δ(t, ρ).
FieldMatrix error_space(const NecCode& code, NodeId t, const ErrorPattern& rho);
/// Spanning rows of Φ(t), i.e. F_t.
FieldMatrix message_space(const NecCode& code, NodeId t);

std::size_t intersection_dim(const NecCode& code, NodeId t, const ErrorPattern& rho);
/// Δ(t, ρ) ∩ Φ(t) ≠ {0}.
bool intersects(const NecCode& code, NodeId t, const ErrorPattern& rho);

struct MinDistance {
    std::size_t distance = 0;
    ErrorPattern witness;  // lexicographically first minimizer
};

/// Smallest |ρ| whose error space meets the message space. Throws DomainError
/// if the code is not regular at `t`.
MinDistance min_distance(const NecCode& code, NodeId t, Execution exec = Execution::parallel);

/// The three equivalent minima, each over every subset of E: by |ρ|, by
/// rank_t(ρ) (min cut on the rewired network) and by dim Δ(t, ρ).
struct DistanceForms {
    std::size_t by_size = 0;
    std::size_t by_rank = 0;
    std::size_t by_dimension = 0;
};
/// Exhaustive over 2^|E| patterns; |E| must not exceed 20.
DistanceForms min_distance_oracle(const NecCode& code, NodeId t);

struct SinkDistance {
    NodeId sink = 0;
    std::size_t min_cut = 0;
    long redundancy = 0;  // δ_t = C_t - ω, negative when ω exceeds the cut
    bool regular = false;
    std::optional<std::size_t> distance;
    std::optional<ErrorPattern> witness;
    bool mds = false;

    /// δ_t + 1 - d_min, the slack against the refined Singleton bound.
    std::optional<long> singleton_gap() const;
};

struct DistanceReport {
    std::size_t rate = 0;
    std::vector<SinkDistance> sinks;
    bool regular = false;
    bool is_mds = false;
};

DistanceReport verify_mds(const NecCode& code, Execution exec = Execution::parallel);

/// Q(t): patterns of size d_min^(t) whose error space meets Φ(t), in
/// lexicographic order. Throws DomainError unless the code is regular at `t`
/// and meets the refined Singleton bound with equality there.
std::vector<ErrorPattern> compute_q(const NecCode& code, NodeId t, Execution exec = Execution::parallel);

}  // namespace nec
