#include "nec/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nec/combinatorics.hpp"
#include "nec/errors.hpp"
#include "nec/metrics.hpp"
#include "nec/variable_rate.hpp"

namespace nec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

/// 1 - numerator / denominator, clamped at 0.
double one_minus(double numerator, double denominator) { return std::max(0.0, 1.0 - numerator / denominator); }

std::vector<std::size_t> sink_cuts(const Network& n) {
    std::vector<std::size_t> cuts;
    for (NodeId t : n.sinks()) cuts.push_back(min_cut(n, t));
    return cuts;
}

void require_rate(const Network& n, std::size_t rate) {
    const auto cuts = sink_cuts(n);
    if (rate == 0 || rate > *std::min_element(cuts.begin(), cuts.end())) {
        throw UsageError("rate " + std::to_string(rate) + " outside [1, min_t C_t]");
    }
}

std::uint64_t rt_sum_at_offset(const Network& n, std::size_t rate, std::size_t offset, const EnumerationLimits& limits) {
    std::map<NodeId, std::size_t> deltas;
    for (NodeId t : n.sinks()) deltas[t] = min_cut(n, t) - rate + offset;
    return rt_sum(n, deltas, limits, Execution::serial);
}

std::uint64_t binomial_sum_at_offset(const Network& n, std::size_t rate, std::size_t offset) {
    std::uint64_t total = 0;
    for (NodeId t : n.sinks()) total += binomial(n.channel_count(), min_cut(n, t) - rate + offset);
    return total;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ (index + 0x632be59bd9b4e019ULL));
}

Value uniform_value(std::mt19937_64& rng, const PrimeField& field) {
    const std::uint64_t p = field.modulus();
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % p);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<Value>(x % p);
}

NecCode random_code(std::shared_ptr<const Network> network, std::size_t rate, const PrimeField& field,
                    std::mt19937_64& rng) {
    LocalKernels kernels(network, field, rate);
    for (NodeId v = 0; v < network->node_count(); ++v) {
        const auto& shape = kernels.kernel(v);
        FieldMatrix m(field, shape.rows(), shape.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, uniform_value(rng, field));
        kernels.set_kernel(v, std::move(m));
    }
    return NecCode(std::move(kernels));
}

NecCode random_code(std::shared_ptr<const Network> network, std::size_t rate, const PrimeField& field,
                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_code(std::move(network), rate, field, rng);
}

double mds_lower_bound(const Network& network, std::size_t rate, const PrimeField& field,
                       const EnumerationLimits& limits) {
    require_rate(network, rate);
    const double sum = static_cast<double>(rt_sum_at_offset(network, rate, 0, limits));
    const double q = static_cast<double>(field.size());
    const double internal = static_cast<double>(network.internal_nodes().size());
    return clamp01(std::pow(one_minus(sum, q - 1.0), internal + 1.0));
}

JointBounds joint_lower_bound(const Network& network, std::size_t rate, const PrimeField& field,
                              std::optional<std::uint64_t> q_total, const EnumerationLimits& limits) {
    require_rate(network, rate);
    if (rate < 2) throw UsageError("joint bound needs rate >= 2");
    const double q = static_cast<double>(field.size());
    const double exponent = static_cast<double>(network.internal_nodes().size()) + 1.0;

    JointBounds out;
    try {
        const double rt = static_cast<double>(rt_sum_at_offset(network, rate, 0, limits));
        const std::uint64_t forbidden = q_total ? *q_total : rt_sum_at_offset(network, rate, 1, limits);
        out.forbidden_total = forbidden;
        out.exact = clamp01(one_minus(static_cast<double>(forbidden), q) * std::pow(one_minus(rt, q - 1.0), exponent));
    } catch (const EnumerationCapError&) {
        out.exact.reset();
        out.forbidden_total.reset();
    }

    const double b0 = static_cast<double>(binomial_sum_at_offset(network, rate, 0));
    const double b1 = static_cast<double>(binomial_sum_at_offset(network, rate, 1));
    out.binomial = clamp01(one_minus(b1, q) * std::pow(one_minus(b0, q - 1.0), exponent));
    const auto cuts = sink_cuts(network);
    const bool small_cuts = std::all_of(cuts.begin(), cuts.end(),
                                        [&](std::size_t c) { return c <= network.channel_count() / 2; });
    if (small_cuts) out.binomial_simplified = clamp01(std::pow(one_minus(b1, q - 1.0), exponent + 1.0));
    return out;
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {clamp01(centre - half), clamp01(centre + half)};
}

const char* to_string(Target target) {
    switch (target) {
        case Target::mds: return "mds";
        case Target::joint_family: return "joint";
        case Target::joint_exists_k: return "joint-exists-k";
    }
    return "?";
}

namespace {

struct TrialOutcome {
    bool success = false;
    std::string reason;
};

std::string mds_failure(const NecCode& code, const DistanceReport& report) {
    for (const auto& s : report.sinks) {
        const auto& name = code.network().node_name(s.sink);
        if (!s.regular) return "sink " + name + " not regular";
        if (!s.mds) {
            return "sink " + name + " d_min " + std::to_string(*s.distance) + " < " + std::to_string(s.redundancy + 1);
        }
    }
    return {};
}

TrialOutcome run_trial(const TrialConfig& cfg, Target target, std::size_t index) {
    std::mt19937_64 rng(trial_seed(cfg.master_seed, index));
    const NecCode code = random_code(cfg.network, cfg.rate, cfg.field, rng);
    const auto report = verify_mds(code, Execution::serial);
    if (!report.is_mds) return {false, mds_failure(code, report)};
    if (target == Target::mds) return {true, {}};

    if (target == Target::joint_family) {
        ReductionVector k;
        k.values.resize(cfg.rate - 1);
        for (auto& v : k.values) v = uniform_value(rng, cfg.field);
        const NecCode reduced = reduce_rate(code, k);
        const auto next = verify_mds(reduced, Execution::serial);
        if (!next.is_mds) return {false, "reduced code " + mds_failure(reduced, next)};
        return {true, {}};
    }

    try {
        const auto k = choose_k(code, KStrategy::deterministic, 0, Execution::serial);
        const auto next = verify_mds(reduce_rate(code, k), Execution::serial);
        if (!next.is_mds) return {false, "reduced code not MDS for the chosen k"};
    } catch (const NoValidReductionVector&) {
        return {false, "no valid reduction vector"};
    }
    return {true, {}};
}

}  // namespace

ProbabilityReport estimate_success(const TrialConfig& cfg, Target target, Execution exec) {
    if (!cfg.network) throw UsageError("trial config has no network");
    if (cfg.trials == 0) throw UsageError("trial count must be at least 1");
    require_rate(*cfg.network, cfg.rate);
    if (target != Target::mds && cfg.rate < 2) throw UsageError("joint targets need rate >= 2");

    const auto outcomes = indexed_map<TrialOutcome>(cfg.trials, exec, [&](std::size_t i) { return run_trial(cfg, target, i); });

    ProbabilityReport report;
    report.target = target;
    report.trials = cfg.trials;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].success) {
            ++report.successes;
        } else {
            report.failures.push_back({i, outcomes[i].reason});
        }
    }
    report.estimate = static_cast<double>(report.successes) / static_cast<double>(report.trials);
    std::tie(report.wilson_low, report.wilson_high) = wilson_interval(report.successes, report.trials);

    const auto& n = *cfg.network;
    try {
        report.mds_bound = mds_lower_bound(n, cfg.rate, cfg.field);
    } catch (const EnumerationCapError&) {
    }
    if (target != Target::mds) {
        report.joint_bounds = joint_lower_bound(n, cfg.rate, cfg.field);
        if (report.mds_bound) {
            try {
                double product = *report.mds_bound;
                const double q = static_cast<double>(cfg.field.size());
                for (std::size_t step = 1; step < cfg.rate; ++step) {
                    product *= one_minus(static_cast<double>(rt_sum_at_offset(n, cfg.rate, step, {})), q);
                }
                report.family_heuristic = clamp01(product);
            } catch (const EnumerationCapError&) {
            }
        }
    }
    return report;
}

}  // namespace nec
