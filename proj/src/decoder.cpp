#include "nec/decoder.hpp"

#include <algorithm>
#include <set>

#include "nec/combinatorics.hpp"
#include "nec/errors.hpp"
#include "nec/metrics.hpp"

namespace nec {

namespace {

constexpr std::uint64_t kMaxCosetSize = 1u << 20;

/// All messages X with (X, Z_S) [F; G_S] = received for some Z_S.
void collect_messages(const FieldMatrix& f, const FieldMatrix& g_support, std::span<const Value> received,
                      std::set<Row>& out) {
    const auto& field = f.field();
    const std::size_t w = f.rows();
    const FieldMatrix system = f.stacked(g_support);
    const auto particular = mat_solve_row(system, received);
    if (!particular) return;
    const Row x0(particular->begin(), particular->begin() + static_cast<std::ptrdiff_t>(w));

    // Directions in message space along which the solution set extends.
    const FieldMatrix kernel = left_nullspace(system);
    FieldMatrix directions(field, 0, w);
    for (std::size_t r = 0; r < kernel.rows(); ++r) directions.append_row(kernel.row(r).first(w));
    const FieldMatrix basis = RowSpace(directions).basis();
    const std::size_t dim = basis.rows();

    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        count *= field.size();
        if (count > kMaxCosetSize) throw EnumerationCapError("decoder coset exceeds " + std::to_string(kMaxCosetSize) + " messages");
    }
    Row coeff(dim, 0);
    for (std::uint64_t n = 0; n < count; ++n) {
        Row x = x0;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t c = 0; c < w; ++c) x[c] = field.add(x[c], field.mul(coeff[i], basis(i, c)));
        }
        out.insert(std::move(x));
        for (std::size_t i = 0; i < dim; ++i) {
            if (++coeff[i] < field.modulus()) break;
            coeff[i] = 0;
        }
    }
}

}  // namespace

DecodeResult decode(const NecCode& code, NodeId t, std::span<const Value> received) {
    const auto& dm = code.decoding_matrix(t);
    const FieldMatrix& f = dm.message();
    const FieldMatrix& g = dm.error();
    if (received.size() != f.cols()) {
        throw UsageError("received vector has length " + std::to_string(received.size()) + ", sink expects " +
                         std::to_string(f.cols()));
    }
    std::vector<std::size_t> active;
    for (std::size_t e = 0; e < g.rows(); ++e)
        if (!g.row_is_zero(e)) active.push_back(e);

    for (std::size_t weight = 0; weight <= active.size(); ++weight) {
        std::set<Row> found;
        for (const auto& idx : combinations(active.size(), weight)) {
            std::vector<std::size_t> rows;
            rows.reserve(weight);
            for (auto j : idx) rows.push_back(active[j]);
            collect_messages(f, g.select_rows(rows), received, found);
        }
        if (found.empty()) continue;
        DecodeResult result;
        result.weight = weight;
        result.candidates.assign(found.begin(), found.end());
        if (result.candidates.size() == 1) result.message = result.candidates.front();
        return result;
    }
    // Only reachable when G_t cannot span the received space, which the
    // identity rows of In(t) rule out.
    throw DomainError("received vector is not explained by any error at sink '" + code.network().node_name(t) + "'");
}

std::size_t correction_radius(const NecCode& code, NodeId t, Execution exec) {
    const std::size_t d = min_distance(code, t, exec).distance;
    return (d - 1) / 2;
}

std::vector<SinkOutcome> simulate(const NecCode& code, std::span<const Value> message, const ErrorPattern& rho,
                                  std::span<const Value> values, Execution exec) {
    const auto& n = code.network();
    const auto& field = code.field();
    if (message.size() != code.rate()) {
        throw UsageError("message has length " + std::to_string(message.size()) + ", rate is " + std::to_string(code.rate()));
    }
    if (values.size() != rho.size()) {
        throw UsageError("error pattern has " + std::to_string(rho.size()) + " channels but " +
                         std::to_string(values.size()) + " values were given");
    }
    Row x(message.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<Value>(message[i] % field.modulus());
    Row z(n.channel_count(), 0);
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const ChannelId e = rho.channels()[i];
        if (e >= n.channel_count()) throw UsageError("error pattern names an unknown channel");
        const Value v = static_cast<Value>(values[i] % field.modulus());
        if (v == 0) throw UsageError("error value on channel " + n.channel(e).id + " is zero; values must match the pattern");
        z[e] = v;
    }
    const auto received = transmit(code, x, z);
    const auto& sinks = n.sinks();
    auto results = indexed_map<DecodeResult>(sinks.size(), exec,
                                             [&](std::size_t i) { return decode(code, sinks[i], received[i]); });
    std::vector<SinkOutcome> out;
    for (std::size_t i = 0; i < sinks.size(); ++i) out.push_back({sinks[i], received[i], std::move(results[i])});
    return out;
}

}  // namespace nec
