#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "nec/ff.hpp"
#include "nec/nec_code.hpp"
#include "nec/topology.hpp"

namespace nectest {

using namespace nec;

// The worked relay example: s feeds t1 by e1,e2, t2 by e4,e5, and the
// relay i by e3; i forwards on e6 to t1 and e7 to t2.
inline std::shared_ptr<const Network> relay_network() {
    return std::make_shared<const Network>(
        std::vector<std::string>{"s", "i", "t1", "t2"}, "s", std::vector<std::string>{"t1", "t2"},
        std::vector<ChannelSpec>{{"e1", "s", "t1"},
                                 {"e2", "s", "t1"},
                                 {"e3", "s", "i"},
                                 {"e4", "s", "t2"},
                                 {"e5", "s", "t2"},
                                 {"e6", "i", "t1"},
                                 {"e7", "i", "t2"}});
}

/// The GF(3) rate-2 code, entered coefficient by coefficient.
inline NecCode relay_code() {
    const PrimeField f(3);
    auto n = relay_network();
    LocalKernels lk(n, f, 2);
    const auto e = [&](const char* id) { return n->channel_index(id); };
    lk.set_source_coefficient(0, e("e1"), 1);
    lk.set_source_coefficient(0, e("e2"), 1);
    lk.set_source_coefficient(0, e("e3"), 0);
    lk.set_source_coefficient(0, e("e4"), 1);
    lk.set_source_coefficient(0, e("e5"), 1);
    lk.set_source_coefficient(1, e("e1"), 1);
    lk.set_source_coefficient(1, e("e2"), 0);
    lk.set_source_coefficient(1, e("e3"), 1);
    lk.set_source_coefficient(1, e("e4"), 1);
    lk.set_source_coefficient(1, e("e5"), 0);
    lk.set_coefficient(e("e3"), e("e6"), 1);
    lk.set_coefficient(e("e3"), e("e7"), 1);
    return NecCode(std::move(lk));
}

// Classic butterfly: two sinks, a bottleneck c -> d.
inline std::shared_ptr<const Network> butterfly_network() {
    return std::make_shared<const Network>(
        std::vector<std::string>{"s", "a", "b", "c", "d", "t1", "t2"}, "s", std::vector<std::string>{"t1", "t2"},
        std::vector<ChannelSpec>{{"e1", "s", "a"},
                                 {"e2", "s", "b"},
                                 {"e3", "a", "t1"},
                                 {"e4", "a", "c"},
                                 {"e5", "b", "c"},
                                 {"e6", "b", "t2"},
                                 {"e7", "c", "d"},
                                 {"e8", "d", "t1"},
                                 {"e9", "d", "t2"}});
}

// Two parallel paths plus a direct pair; single sink with C_t = 4.
inline std::shared_ptr<const Network> diamond_network() {
    return std::make_shared<const Network>(
        std::vector<std::string>{"s", "u", "v", "t"}, "s", std::vector<std::string>{"t"},
        std::vector<ChannelSpec>{{"e1", "s", "u"},
                                 {"e2", "s", "u"},
                                 {"e3", "s", "v"},
                                 {"e4", "u", "v"},
                                 {"e5", "u", "t"},
                                 {"e6", "v", "t"},
                                 {"e7", "v", "t"},
                                 {"e8", "s", "t"},
                                 {"e9", "u", "t"}});
}

// ---------------------------------------------------------------------------
// Oracles. Each one avoids Gaussian elimination and augmenting paths.

/// Every vector of the row space, by enumerating all p^rows combinations.
inline std::set<Row> span_set(const FieldMatrix& m) {
    const auto& f = m.field();
    std::set<Row> out;
    Row coeff(m.rows(), 0);
    for (;;) {
        Row v(m.cols(), 0);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) v[c] = f.add(v[c], f.mul(coeff[r], m(r, c)));
        out.insert(v);
        std::size_t i = 0;
        while (i < coeff.size() && ++coeff[i] == f.modulus()) coeff[i++] = 0;
        if (i == coeff.size()) break;
    }
    return out;
}

/// log_p |span|.
inline std::size_t brute_rank(const FieldMatrix& m) {
    std::size_t size = span_set(m).size();
    std::size_t r = 0;
    while (size > 1) {
        size /= m.field().modulus();
        ++r;
    }
    return r;
}

inline std::size_t brute_intersection_dim(const FieldMatrix& a, const FieldMatrix& b) {
    const auto sa = span_set(a);
    const auto sb = span_set(b);
    std::size_t common = 0;
    for (const auto& v : sa) common += sb.count(v);
    std::size_t r = 0;
    while (common > 1) {
        common /= a.field().modulus();
        ++r;
    }
    return r;
}

/// Minimum s-t edge cut by trying every node subset containing s but not t.
/// `arcs` may contain parallel arcs.
inline std::size_t brute_min_cut(std::size_t nodes, const std::vector<std::pair<NodeId, NodeId>>& arcs, NodeId s, NodeId t) {
    std::size_t best = SIZE_MAX;
    for (std::uint32_t mask = 0; mask < (1u << nodes); ++mask) {
        if (!(mask >> s & 1) || (mask >> t & 1)) continue;
        std::size_t cut = 0;
        for (auto [u, v] : arcs) cut += (mask >> u & 1) && !(mask >> v & 1);
        best = std::min(best, cut);
    }
    return best;
}

inline std::vector<std::pair<NodeId, NodeId>> arcs_of(const Network& n) {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (const auto& c : n.channels()) arcs.emplace_back(c.tail, c.head);
    return arcs;
}

/// rank_t(ρ) by cut enumeration on the rewired graph (fresh node = node_count).
inline std::size_t brute_pattern_rank(const Network& n, const ErrorPattern& rho, NodeId t) {
    if (rho.empty()) return 0;
    std::vector<std::pair<NodeId, NodeId>> arcs;
    const NodeId fresh = n.node_count();
    for (ChannelId e = 0; e < n.channel_count(); ++e) {
        const auto& c = n.channel(e);
        arcs.emplace_back(rho.contains(e) ? fresh : c.tail, c.head);
    }
    return brute_min_cut(n.node_count() + 1, arcs, fresh, t);
}

inline FieldMatrix random_matrix(const PrimeField& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    FieldMatrix m(f, rows, cols);
    std::uniform_int_distribution<std::uint64_t> pick(0, f.modulus() - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<std::int64_t>(pick(rng)));
    return m;
}

}  // namespace nectest
