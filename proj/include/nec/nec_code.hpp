#pragma once

// Linear network error-correction codes: the local description (one kernel
// matrix per non-sink node) and the derived global description (extended
// global encoding kernels and per-sink decoding matrices).
//
// Coordinate layout of every extended kernel: entries 0..ω-1 belong to the
// imaginary message channels d'_1..d'_ω, entry ω+e to channel e.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nec/ff.hpp"
#include "nec/topology.hpp"

namespace nec {

class LocalKernels {
public:
    /// All-zero kernels. K_s has `rate` rows; every other non-sink node has
    /// |In(v)| rows. Sinks carry an |In(t)| x 0 placeholder.
    LocalKernels(std::shared_ptr<const Network> network, const PrimeField& field, std::size_t rate);

    const Network& network() const { return *network_; }
    const std::shared_ptr<const Network>& network_ptr() const { return network_; }
    const PrimeField& field() const { return field_; }
    std::size_t rate() const { return rate_; }

    const FieldMatrix& kernel(NodeId v) const { return kernels_.at(v); }
    void set_kernel(NodeId v, FieldMatrix m);

    /// k_{d'_i, e} for e ∈ Out(s), i zero-based.
    Value source_coefficient(std::size_t i, ChannelId e) const;
    void set_source_coefficient(std::size_t i, ChannelId e, std::int64_t v);
    /// k_{d,e} for adjacent real channels (head(d) = tail(e)).
    Value coefficient(ChannelId d, ChannelId e) const;
    void set_coefficient(ChannelId d, ChannelId e, std::int64_t v);

    /// True when every node other than the source has an identical kernel.
    bool same_internal_kernels(const LocalKernels& other) const;

    bool operator==(const LocalKernels& other) const;

private:
    std::size_t out_position(NodeId v, ChannelId e) const;
    std::size_t in_position(NodeId v, ChannelId d) const;

    std::shared_ptr<const Network> network_;
    PrimeField field_;
    std::size_t rate_;
    std::vector<FieldMatrix> kernels_;
};

/// Column e holds f̃_e = [f_e; g_e].
class ExtendedKernels {
public:
    ExtendedKernels(FieldMatrix columns, std::size_t rate) : columns_(std::move(columns)), rate_(rate) {}

    const FieldMatrix& matrix() const { return columns_; }
    std::size_t rate() const { return rate_; }
    Row full(ChannelId e) const { return columns_.column_vector(e); }
    Row message_part(ChannelId e) const;
    Row error_part(ChannelId e) const;

    bool operator==(const ExtendedKernels&) const = default;

private:
    FieldMatrix columns_;
    std::size_t rate_;
};

/// F̃_t = [f̃_e : e ∈ In(t)], with rows r̃_t(d) for d ∈ In(s) ∪ E.
class DecodingMatrix {
public:
    DecodingMatrix(NodeId sink, FieldMatrix full, std::size_t rate);

    NodeId sink() const { return sink_; }
    const FieldMatrix& full() const { return full_; }
    /// F_t: the ω message rows.
    const FieldMatrix& message() const { return message_; }
    /// G_t: the |E| error rows.
    const FieldMatrix& error() const { return error_; }
    std::span<const Value> message_row(std::size_t i) const { return message_.row(i); }
    std::span<const Value> error_row(ChannelId e) const { return error_.row(e); }

    /// Rows r̃_t(d) for d ∈ ρ, i.e. a spanning set of the error space Δ(t, ρ).
    FieldMatrix error_rows(const ErrorPattern& rho) const;

private:
    NodeId sink_;
    FieldMatrix full_;
    FieldMatrix message_;
    FieldMatrix error_;
};

/// f̃_e = Σ_{d ∈ In(tail e)} k_{d,e} f̃_d + 1_e, evaluated in channel order.
ExtendedKernels derive_kernels(const LocalKernels& kernels);

class NecCode {
public:
    explicit NecCode(LocalKernels kernels);

    const Network& network() const { return kernels_.network(); }
    const std::shared_ptr<const Network>& network_ptr() const { return kernels_.network_ptr(); }
    const PrimeField& field() const { return kernels_.field(); }
    std::size_t rate() const { return kernels_.rate(); }
    const LocalKernels& local_kernels() const { return kernels_; }
    const ExtendedKernels& extended_kernels() const { return extended_; }
    /// Throws UsageError if `t` is not a sink.
    const DecodingMatrix& decoding_matrix(NodeId t) const;

private:
    LocalKernels kernels_;
    ExtendedKernels extended_;
    std::vector<DecodingMatrix> decoding_;  // parallel to network().sinks()
};

bool is_regular_at(const NecCode& code, NodeId t);
/// Rank(F_t) = ω at every sink.
bool is_regular(const NecCode& code);

/// Ũ_t = (X Z) F̃_t for every sink, in network().sinks() order.
std::vector<Row> transmit(const NecCode& code, std::span<const Value> message, std::span<const Value> errors);

/// Same quantity obtained by pushing symbols through the network channel by
/// channel: Ũ_e = Σ k_{d,e} Ũ_d + Z_e.
std::vector<Row> transmit_hop_by_hop(const NecCode& code, std::span<const Value> message,
                                     std::span<const Value> errors);

}  // namespace nec
