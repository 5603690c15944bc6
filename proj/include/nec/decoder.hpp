#pragma once

// Minimum-weight decoding at a sink and end-to-end error injection.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nec/execution.hpp"
#include "nec/nec_code.hpp"

namespace nec {

struct DecodeResult {
    std::optional<Row> message;   // set only when exactly one candidate remains
    std::size_t weight = 0;       // smallest error weight explaining the received vector
    std::vector<Row> candidates;  // every message reaching that weight, lexicographic

    bool ambiguous() const { return candidates.size() > 1; }
};

/// Finds the messages X minimising min{w_H(Z) : X F_t + Z G_t = received}.
/// Only channels with a nonzero row in G_t are searched; each support set is
/// solved as a linear system, so the cost does not grow with |F|^ω.
DecodeResult decode(const NecCode& code, NodeId t, std::span<const Value> received);

/// floor((d_min - 1) / 2). Throws DomainError for a non-regular sink.
std::size_t correction_radius(const NecCode& code, NodeId t, Execution exec = Execution::parallel);

struct SinkOutcome {
    NodeId sink = 0;
    Row received;
    DecodeResult result;
};

/// Injects `values[i]` on channel rho[i], transmits, and decodes at every sink
/// (sinks in network order). Every value must be nonzero.
std::vector<SinkOutcome> simulate(const NecCode& code, std::span<const Value> message, const ErrorPattern& rho,
                                  std::span<const Value> values, Execution exec = Execution::parallel);

}  // namespace nec
