#include "nec/variable_rate.hpp"

#include <algorithm>
#include <random>

#include "nec/combinatorics.hpp"
#include "nec/randomized.hpp"

namespace nec {

namespace {

std::size_t min_cut_over_sinks(const Network& n) {
    std::size_t best = SIZE_MAX;
    for (NodeId t : n.sinks()) best = std::min(best, min_cut(n, t));
    return best;
}

std::string describe_k(const Row& k) {
    std::string s = "[";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? " " : "") + std::to_string(k[i]);
    return s + "]";
}

std::string first_failure(const NecCode& code, const DistanceReport& report) {
    for (const auto& s : report.sinks) {
        const auto& name = code.network().node_name(s.sink);
        if (!s.regular) return "sink " + name + " not regular";
        if (!s.mds) {
            return "sink " + name + " has d_min " + std::to_string(*s.distance) + ", bound " +
                   std::to_string(s.redundancy + 1);
        }
    }
    return "ok";
}

}  // namespace

NecCode construct_mds(std::shared_ptr<const Network> network, std::size_t rate, const PrimeField& field,
                      std::uint64_t seed, std::size_t max_attempts) {
    const std::size_t capacity = min_cut_over_sinks(*network);
    if (rate == 0 || rate > capacity) {
        throw UsageError("rate " + std::to_string(rate) + " outside [1, min_t C_t = " + std::to_string(capacity) + "]");
    }
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        auto code = random_code(network, rate, field, trial_seed(seed, attempt));
        if (verify_mds(code).is_mds) return code;
    }
    throw ConstructionError("no MDS code found over GF(" + std::to_string(field.modulus()) + ") at rate " +
                                std::to_string(rate) + " after " + std::to_string(max_attempts) + " attempts",
                            max_attempts);
}

// ---------------------------------------------------------------------------

bool ForbiddenHyperplane::satisfiable() const {
    return std::any_of(coefficients.begin(), coefficients.end() - 1, [](Value a) { return a != 0; });
}

bool ForbiddenHyperplane::contains(std::span<const Value> k, const PrimeField& field) const {
    if (k.size() + 1 != coefficients.size()) throw UsageError("reduction vector length mismatch");
    Value lhs = 0;
    for (std::size_t i = 0; i < k.size(); ++i) lhs = field.add(lhs, field.mul(coefficients[i], k[i]));
    return lhs == coefficients.back();
}

std::vector<ForbiddenHyperplane> forbidden_hyperplanes(const NecCode& code, Execution exec) {
    if (!verify_mds(code, exec).is_mds) throw DomainError("forbidden hyperplanes require an MDS code");
    const auto& n = code.network();
    std::vector<std::pair<NodeId, ErrorPattern>> work;
    for (NodeId t : n.sinks()) {
        for (auto& rho : compute_q(code, t, exec)) work.emplace_back(t, std::move(rho));
    }
    return indexed_map<ForbiddenHyperplane>(work.size(), exec, [&](std::size_t i) {
        const auto& [t, rho] = work[i];
        const auto phi = message_space(code, t);
        const auto meet = intersection_basis(error_space(code, t, rho), phi);
        if (meet.rows() != 1) {
            throw DomainError("intersection at sink '" + n.node_name(t) + "' for " + rho.describe(n) + " has dimension " +
                              std::to_string(meet.rows()) + ", expected 1");
        }
        auto coeffs = mat_solve_row(phi, meet.row(0));
        if (!coeffs) throw DomainError("intersection vector outside the message space");
        return ForbiddenHyperplane{t, rho, std::move(*coeffs)};
    });
}

NoValidReductionVector::NoValidReductionVector(std::uint64_t forbidden_total, std::uint64_t field_size)
    : DomainError("no reduction vector avoids all forbidden hyperplanes (sum |Q(t)| = " +
                  std::to_string(forbidden_total) + ", |F| = " + std::to_string(field_size) + ")"),
      forbidden_total_(forbidden_total),
      field_size_(field_size) {}

ReductionVector choose_k(const std::vector<ForbiddenHyperplane>& hyperplanes, const PrimeField& field,
                         std::size_t rate, KStrategy strategy, std::uint64_t seed) {
    if (rate < 2) throw DomainError("rate " + std::to_string(rate) + " has no lower rate to reduce to");
    const std::size_t len = rate - 1;
    std::vector<const ForbiddenHyperplane*> active;
    for (const auto& h : hyperplanes) {
        if (h.coefficients.size() != rate) throw UsageError("hyperplane has wrong number of coefficients");
        if (h.satisfiable()) active.push_back(&h);
    }
    auto valid = [&](const Row& k) {
        return std::none_of(active.begin(), active.end(), [&](const ForbiddenHyperplane* h) { return h->contains(k, field); });
    };

    if (strategy == KStrategy::random) {
        std::mt19937_64 rng(seed);
        for (int attempt = 0; attempt < 256; ++attempt) {
            Row k(len);
            for (auto& v : k) v = uniform_value(rng, field);
            if (valid(k)) return {k};
        }
    }
    Row k(len, 0);
    for (;;) {
        if (valid(k)) return {k};
        // Odometer with the last coordinate fastest.
        std::size_t i = len;
        while (i > 0) {
            --i;
            if (++k[i] < field.modulus()) break;
            k[i] = 0;
            if (i == 0) throw NoValidReductionVector(hyperplanes.size(), field.size());
        }
    }
}

ReductionVector choose_k(const NecCode& code, KStrategy strategy, std::uint64_t seed, Execution exec) {
    if (code.rate() < 2) throw DomainError("rate 1 has no lower rate to reduce to");
    return choose_k(forbidden_hyperplanes(code, exec), code.field(), code.rate(), strategy, seed);
}

// ---------------------------------------------------------------------------

ExtendedKernels apply_rate_reduction(const ExtendedKernels& kernels, const ReductionVector& k, const PrimeField& field) {
    const std::size_t w = kernels.rate();
    if (w < 2) throw DomainError("rate 1 has no lower rate to reduce to");
    if (k.size() != w - 1) throw UsageError("reduction vector must have length " + std::to_string(w - 1));
    const std::size_t channels = kernels.matrix().rows() - w;
    FieldMatrix transform(field, w - 1 + channels, w + channels);
    for (std::size_t i = 0; i + 1 < w; ++i) {
        transform.set(i, i, 1);
        transform.set(i, w - 1, k.values[i]);
    }
    for (std::size_t e = 0; e < channels; ++e) transform.set(w - 1 + e, w + e, 1);
    return ExtendedKernels(transform * kernels.matrix(), w - 1);
}

LocalKernels reduced_local_kernels(const LocalKernels& kernels, const ReductionVector& k) {
    const std::size_t w = kernels.rate();
    if (w < 2) throw DomainError("rate 1 has no lower rate to reduce to");
    if (k.size() != w - 1) throw UsageError("reduction vector must have length " + std::to_string(w - 1));
    const auto& n = kernels.network();
    const auto& f = kernels.field();
    LocalKernels out(kernels.network_ptr(), f, w - 1);
    for (NodeId v = 0; v < n.node_count(); ++v) {
        if (v != n.source()) out.set_kernel(v, kernels.kernel(v));
    }
    const auto& ks = kernels.kernel(n.source());
    FieldMatrix source(f, w - 1, ks.cols());
    for (std::size_t i = 0; i + 1 < w; ++i) {
        for (std::size_t c = 0; c < ks.cols(); ++c) {
            source.set(i, c, f.add(ks(i, c), f.mul(k.values[i] % f.modulus(), ks(w - 1, c))));
        }
    }
    out.set_kernel(n.source(), std::move(source));
    return out;
}

NecCode reduce_rate(const NecCode& code, const ReductionVector& k) {
    if (code.rate() < 2) throw DomainError("rate 1 has no lower rate to reduce to");
    if (!is_regular(code)) throw DomainError("rate reduction requires a regular code");
    NecCode reduced(reduced_local_kernels(code.local_kernels(), k));
    if (!(apply_rate_reduction(code.extended_kernels(), k, code.field()) == reduced.extended_kernels())) {
        throw std::logic_error("transformed extended kernels disagree with kernels derived from the reduced code");
    }
    return reduced;
}

// ---------------------------------------------------------------------------

CodeFamily build_family(const NecCode& top, const FamilyOptions& options) {
    CodeFamily family;
    auto report = verify_mds(top, options.exec);
    if (!report.is_mds) throw FamilyError(top.rate(), "starting code is not MDS (" + first_failure(top, report) + ")");
    family.members.push_back(top);
    family.reports.push_back(std::move(report));

    while (family.members.back().rate() > 1) {
        const NecCode& current = family.members.back();
        const std::size_t next_rate = current.rate() - 1;
        ReductionVector k;
        try {
            k = choose_k(current, options.strategy, trial_seed(options.seed, next_rate), options.exec);
        } catch (const NoValidReductionVector& e) {
            throw FamilyError(next_rate, e.what());
        }
        NecCode reduced = reduce_rate(current, k);
        auto next_report = verify_mds(reduced, options.exec);
        if (!next_report.is_mds) {
            throw FamilyError(next_rate, "k = " + describe_k(k.values) + " gives a non-MDS code (" +
                                             first_failure(reduced, next_report) + ")");
        }
        if (!reduced.local_kernels().same_internal_kernels(current.local_kernels())) {
            throw FamilyError(next_rate, "internal local kernels changed");
        }
        family.steps.push_back(std::move(k));
        family.members.push_back(std::move(reduced));
        family.reports.push_back(std::move(next_report));
    }
    return family;
}

CodeFamily build_family(std::shared_ptr<const Network> network, std::size_t rate, const PrimeField& field,
                        std::uint64_t seed, const FamilyOptions& options, std::size_t max_attempts) {
    return build_family(construct_mds(std::move(network), rate, field, seed, max_attempts), options);
}

FieldSizeBound field_size_bound(const Network& network, std::size_t rate, const EnumerationLimits& limits,
                                Execution exec) {
    std::vector<std::size_t> cuts;
    for (NodeId t : network.sinks()) cuts.push_back(min_cut(network, t));
    if (rate == 0 || rate > *std::min_element(cuts.begin(), cuts.end())) {
        throw UsageError("rate " + std::to_string(rate) + " outside [1, min_t C_t]");
    }
    FieldSizeBound bound;
    bool exact_available = true;
    for (std::size_t i = 0; i < rate; ++i) {
        std::uint64_t binom = 0;
        std::map<NodeId, std::size_t> deltas;
        for (std::size_t s = 0; s < cuts.size(); ++s) {
            const std::size_t delta = cuts[s] - rate + i;
            binom += binomial(network.channel_count(), delta);
            deltas[network.sinks()[s]] = delta;
        }
        bound.binomial_terms.push_back(binom);
        if (exact_available) {
            try {
                bound.exact_terms.push_back(rt_sum(network, deltas, limits, exec));
            } catch (const EnumerationCapError&) {
                exact_available = false;
                bound.exact_terms.clear();
            }
        }
    }
    bound.binomial = *std::max_element(bound.binomial_terms.begin(), bound.binomial_terms.end());
    if (exact_available) bound.exact = *std::max_element(bound.exact_terms.begin(), bound.exact_terms.end());
    return bound;
}

}  // namespace nec
