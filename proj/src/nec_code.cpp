#include "nec/nec_code.hpp"

#include <algorithm>

#include "nec/errors.hpp"

namespace nec {

LocalKernels::LocalKernels(std::shared_ptr<const Network> network, const PrimeField& field, std::size_t rate)
    : network_(std::move(network)), field_(field), rate_(rate) {
    if (!network_) throw UsageError("null network");
    if (rate_ == 0) throw UsageError("rate must be at least 1");
    const auto& n = *network_;
    kernels_.reserve(n.node_count());
    for (NodeId v = 0; v < n.node_count(); ++v) {
        const std::size_t rows = v == n.source() ? rate_ : n.in(v).size();
        const std::size_t cols = n.is_sink(v) ? 0 : n.out(v).size();
        kernels_.emplace_back(field_, rows, cols);
    }
}

void LocalKernels::set_kernel(NodeId v, FieldMatrix m) {
    const auto& current = kernels_.at(v);
    if (!(m.field() == field_)) throw UsageError("kernel field mismatch at node '" + network_->node_name(v) + "'");
    if (m.rows() != current.rows() || m.cols() != current.cols()) {
        throw UsageError("kernel at node '" + network_->node_name(v) + "' must be " + std::to_string(current.rows()) +
                         "x" + std::to_string(current.cols()) + ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
    kernels_[v] = std::move(m);
}

std::size_t LocalKernels::out_position(NodeId v, ChannelId e) const {
    const auto& out = network_->out(v);
    auto it = std::find(out.begin(), out.end(), e);
    if (it == out.end()) throw UsageError("channel is not an outgoing channel of '" + network_->node_name(v) + "'");
    return static_cast<std::size_t>(it - out.begin());
}

std::size_t LocalKernels::in_position(NodeId v, ChannelId d) const {
    const auto& in = network_->in(v);
    auto it = std::find(in.begin(), in.end(), d);
    if (it == in.end()) throw UsageError("channel is not an incoming channel of '" + network_->node_name(v) + "'");
    return static_cast<std::size_t>(it - in.begin());
}

Value LocalKernels::source_coefficient(std::size_t i, ChannelId e) const {
    const NodeId s = network_->source();
    if (i >= rate_) throw UsageError("message index out of range");
    return kernels_[s](i, out_position(s, e));
}

void LocalKernels::set_source_coefficient(std::size_t i, ChannelId e, std::int64_t v) {
    const NodeId s = network_->source();
    if (i >= rate_) throw UsageError("message index out of range");
    kernels_[s].set(i, out_position(s, e), v);
}

Value LocalKernels::coefficient(ChannelId d, ChannelId e) const {
    const NodeId v = network_->channel(e).tail;
    return kernels_[v](in_position(v, d), out_position(v, e));
}

void LocalKernels::set_coefficient(ChannelId d, ChannelId e, std::int64_t value) {
    const NodeId v = network_->channel(e).tail;
    kernels_[v].set(in_position(v, d), out_position(v, e), value);
}

bool LocalKernels::same_internal_kernels(const LocalKernels& other) const {
    if (kernels_.size() != other.kernels_.size()) return false;
    if (!(field_ == other.field_)) return false;
    for (NodeId v = 0; v < kernels_.size(); ++v) {
        if (v == network_->source()) continue;
        if (!(kernels_[v] == other.kernels_[v])) return false;
    }
    return true;
}

bool LocalKernels::operator==(const LocalKernels& other) const {
    return (network_ == other.network_ || network_->node_names() == other.network_->node_names()) &&
           field_ == other.field_ && rate_ == other.rate_ && kernels_ == other.kernels_;
}

// ---------------------------------------------------------------------------

Row ExtendedKernels::message_part(ChannelId e) const {
    auto col = full(e);
    return Row(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(rate_));
}

Row ExtendedKernels::error_part(ChannelId e) const {
    auto col = full(e);
    return Row(col.begin() + static_cast<std::ptrdiff_t>(rate_), col.end());
}

DecodingMatrix::DecodingMatrix(NodeId sink, FieldMatrix full, std::size_t rate)
    : sink_(sink), full_(std::move(full)), message_(full_.field(), 0, full_.cols()), error_(full_.field(), 0, full_.cols()) {
    for (std::size_t r = 0; r < full_.rows(); ++r) (r < rate ? message_ : error_).append_row(full_.row(r));
}

FieldMatrix DecodingMatrix::error_rows(const ErrorPattern& rho) const { return error_.select_rows(rho.channels()); }

ExtendedKernels derive_kernels(const LocalKernels& k) {
    const auto& n = k.network();
    const auto& f = k.field();
    const std::size_t w = k.rate();
    const std::size_t dim = w + n.channel_count();
    FieldMatrix ext(f, dim, n.channel_count());

    for (ChannelId e = 0; e < n.channel_count(); ++e) {
        const NodeId tail = n.channel(e).tail;
        const auto& out = n.out(tail);
        const std::size_t col = static_cast<std::size_t>(std::find(out.begin(), out.end(), e) - out.begin());
        const auto& kernel = k.kernel(tail);
        Row acc(dim, 0);
        acc[w + e] = 1;
        if (tail == n.source()) {
            for (std::size_t i = 0; i < w; ++i) acc[i] = f.add(acc[i], kernel(i, col));
        } else {
            const auto& in = n.in(tail);
            for (std::size_t r = 0; r < in.size(); ++r) {
                const ChannelId d = in[r];
                if (d >= e) throw UsageError("channel '" + n.channel(d).id + "' must precede '" + n.channel(e).id + "'");
                const Value coeff = kernel(r, col);
                if (coeff == 0) continue;
                for (std::size_t x = 0; x < dim; ++x) acc[x] = f.add(acc[x], f.mul(coeff, ext(x, d)));
            }
        }
        for (std::size_t x = 0; x < dim; ++x) ext.set(x, e, acc[x]);
    }
    return ExtendedKernels(std::move(ext), w);
}

NecCode::NecCode(LocalKernels kernels) : kernels_(std::move(kernels)), extended_(derive_kernels(kernels_)) {
    const auto& n = network();
    decoding_.reserve(n.sinks().size());
    for (NodeId t : n.sinks()) {
        decoding_.emplace_back(t, extended_.matrix().select_columns(n.in(t)), rate());
    }
}

const DecodingMatrix& NecCode::decoding_matrix(NodeId t) const {
    const auto& sinks = network().sinks();
    auto it = std::find(sinks.begin(), sinks.end(), t);
    if (it == sinks.end()) throw UsageError("node " + std::to_string(t) + " is not a sink");
    return decoding_[static_cast<std::size_t>(it - sinks.begin())];
}

bool is_regular_at(const NecCode& code, NodeId t) {
    return mat_rank(code.decoding_matrix(t).message()) == code.rate();
}

bool is_regular(const NecCode& code) {
    return std::all_of(code.network().sinks().begin(), code.network().sinks().end(),
                       [&](NodeId t) { return is_regular_at(code, t); });
}

namespace {

void check_transmission_shapes(const NecCode& code, std::span<const Value> message, std::span<const Value> errors) {
    if (message.size() != code.rate()) {
        throw UsageError("message length " + std::to_string(message.size()) + " != rate " + std::to_string(code.rate()));
    }
    if (errors.size() != code.network().channel_count()) {
        throw UsageError("error vector length " + std::to_string(errors.size()) + " != channel count " +
                         std::to_string(code.network().channel_count()));
    }
}

}  // namespace

std::vector<Row> transmit(const NecCode& code, std::span<const Value> message, std::span<const Value> errors) {
    check_transmission_shapes(code, message, errors);
    Row xz(message.begin(), message.end());
    xz.insert(xz.end(), errors.begin(), errors.end());
    std::vector<Row> out;
    for (NodeId t : code.network().sinks()) out.push_back(row_times(xz, code.decoding_matrix(t).full()));
    return out;
}

std::vector<Row> transmit_hop_by_hop(const NecCode& code, std::span<const Value> message,
                                     std::span<const Value> errors) {
    check_transmission_shapes(code, message, errors);
    const auto& n = code.network();
    const auto& f = code.field();
    const auto& k = code.local_kernels();
    Row symbol(n.channel_count(), 0);
    for (ChannelId e = 0; e < n.channel_count(); ++e) {
        const NodeId tail = n.channel(e).tail;
        Value u = 0;
        if (tail == n.source()) {
            for (std::size_t i = 0; i < code.rate(); ++i) u = f.add(u, f.mul(k.source_coefficient(i, e), message[i]));
        } else {
            for (ChannelId d : n.in(tail)) u = f.add(u, f.mul(k.coefficient(d, e), symbol[d]));
        }
        symbol[e] = f.add(u, static_cast<Value>(errors[e] % f.modulus()));
    }
    std::vector<Row> out;
    for (NodeId t : n.sinks()) {
        Row received;
        for (ChannelId e : n.in(t)) received.push_back(symbol[e]);
        out.push_back(std::move(received));
    }
    return out;
}

}  // namespace nec
