#pragma once

// Random codes, Monte-Carlo success estimates and the matching lower bounds.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nec/execution.hpp"
#include "nec/nec_code.hpp"

namespace nec {

/// Counter-mode seed for trial `index` (splitmix64 finalizer over both words).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

/// Uniform draw from GF(p) by rejection, independent of the standard
/// library's distribution implementation.
Value uniform_value(std::mt19937_64& rng, const PrimeField& field);

/// Every local coefficient, source kernel included, i.i.d. uniform. Nodes are
/// filled in index order, each kernel row-major. No verification.
NecCode random_code(std::shared_ptr<const Network> network, std::size_t rate, const PrimeField& field,
                    std::mt19937_64& rng);
NecCode random_code(std::shared_ptr<const Network> network, std::size_t rate, const PrimeField& field,
                    std::uint64_t seed);

/// [1 - Σ_t |R_t(δ_t)| / (|F| - 1)]^{|J|+1}, clamped to [0, 1].
double mds_lower_bound(const Network& network, std::size_t rate, const PrimeField& field,
                       const EnumerationLimits& limits = {});

struct JointBounds {
    /// [1 - ΣQ/|F|] [1 - Σ|R_t(δ_t)|/(|F|-1)]^{|J|+1}. ΣQ defaults to its
    /// upper bound Σ|R_t(δ_t+1)|. Empty if enumeration hit its cap.
    std::optional<double> exact;
    std::optional<std::uint64_t> forbidden_total;  // the ΣQ (or Σ|R_t(δ_t+1)|) plugged in
    /// [1 - ΣC(|E|,δ_t+1)/|F|] [1 - ΣC(|E|,δ_t)/(|F|-1)]^{|J|+1}
    double binomial = 0.0;
    /// [1 - ΣC(|E|,δ_t+1)/(|F|-1)]^{|J|+2}; only stated when C_t <= |E|/2 at every sink.
    std::optional<double> binomial_simplified;
};

/// Bounds on Pr(ω-code MDS and its uniformly reduced (ω-1)-code MDS). Requires ω >= 2.
JointBounds joint_lower_bound(const Network& network, std::size_t rate, const PrimeField& field,
                              std::optional<std::uint64_t> q_total = std::nullopt,
                              const EnumerationLimits& limits = {});

enum class Target {
    mds,             // random code is MDS
    joint_family,    // ... and one uniformly drawn k gives an MDS (ω-1)-code
    joint_exists_k,  // ... and some valid k exists (beyond the single-draw experiment)
};

struct TrialConfig {
    std::shared_ptr<const Network> network;
    PrimeField field{2};
    std::size_t rate = 1;
    std::size_t trials = 1;
    std::uint64_t master_seed = 0;
};

struct TrialFailure {
    std::size_t index = 0;
    std::string reason;
};

struct ProbabilityReport {
    Target target = Target::mds;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double estimate = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
    std::optional<double> mds_bound;
    std::optional<JointBounds> joint_bounds;
    /// Product of per-step bounds down to rate 1. A heuristic, not a theorem.
    std::optional<double> family_heuristic;
    std::vector<TrialFailure> failures;
};

/// Wilson score interval at the given normal quantile (default 95%).
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

ProbabilityReport estimate_success(const TrialConfig& config, Target target, Execution exec = Execution::parallel);

const char* to_string(Target target);

}  // namespace nec
