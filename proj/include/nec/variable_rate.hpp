#pragma once

// Variable-rate families: starting from an ω-dimensional network MDS code,
// derive (ω-1)-, (ω-2)-, ..., 1-dimensional MDS codes that keep every
// non-source local encoding kernel unchanged. Only the source kernel moves:
// row i of K_s becomes row i + k_i * (row ω) for a reduction vector k chosen
// outside every forbidden hyperplane K(t, ρ), ρ ∈ Q(t).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nec/errors.hpp"
#include "nec/metrics.hpp"
#include "nec/nec_code.hpp"

namespace nec {

/// k = [k_1 .. k_{ω-1}] over the code's field.
struct ReductionVector {
    Row values;

    std::size_t size() const { return values.size(); }
    bool operator==(const ReductionVector&) const = default;
};

/// Random-plus-verify construction of an ω-dimensional MDS code. Attempt i
/// draws every local coefficient uniformly with seed trial_seed(seed, i).
/// Throws UsageError when ω exceeds min_t C_t and ConstructionError when no
/// attempt verifies.
NecCode construct_mds(std::shared_ptr<const Network> network, std::size_t rate, const PrimeField& field,
                      std::uint64_t seed, std::size_t max_attempts = 64);

/// K(t, ρ) = { k : Σ_{i<ω} a_i k_i = a_ω } where Σ a_i r̃_t(d'_i) spans the
/// one-dimensional intersection Δ(t, ρ) ∩ Φ(t).
struct ForbiddenHyperplane {
    NodeId sink = 0;
    ErrorPattern pattern;
    Row coefficients;  // a_1 .. a_ω

    /// False when a_1 = .. = a_{ω-1} = 0: the equation has no solution and the
    /// hyperplane forbids nothing.
    bool satisfiable() const;
    bool contains(std::span<const Value> k, const PrimeField& field) const;
};

/// One hyperplane per (t, ρ ∈ Q(t)), sinks in network order, patterns in
/// lexicographic order. Throws DomainError unless the code is MDS.
std::vector<ForbiddenHyperplane> forbidden_hyperplanes(const NecCode& code, Execution exec = Execution::parallel);

enum class KStrategy { deterministic, random };

class NoValidReductionVector : public DomainError {
public:
    NoValidReductionVector(std::uint64_t forbidden_total, std::uint64_t field_size);
    std::uint64_t forbidden_total() const { return forbidden_total_; }
    std::uint64_t field_size() const { return field_size_; }

private:
    std::uint64_t forbidden_total_;
    std::uint64_t field_size_;
};

/// Picks k outside every satisfiable hyperplane. The deterministic strategy
/// scans F^{ω-1} lexicographically (k_1 most significant) from the zero
/// vector; the random strategy samples uniformly and falls back to the scan.
ReductionVector choose_k(const std::vector<ForbiddenHyperplane>& hyperplanes, const PrimeField& field, std::size_t rate,
                         KStrategy strategy = KStrategy::deterministic, std::uint64_t seed = 0);
ReductionVector choose_k(const NecCode& code, KStrategy strategy = KStrategy::deterministic, std::uint64_t seed = 0,
                         Execution exec = Execution::parallel);

/// [[I_{ω-1} k 0], [0 0 I_|E|]] applied to every extended kernel.
ExtendedKernels apply_rate_reduction(const ExtendedKernels& kernels, const ReductionVector& k, const PrimeField& field);

/// Source rows k_{d'_i,e} + k_i k_{d'_ω,e}; all other kernels copied.
LocalKernels reduced_local_kernels(const LocalKernels& kernels, const ReductionVector& k);

/// The (ω-1)-dimensional code. Its kernels are derived both from the new
/// local description and by the matrix transform; a mismatch is a logic_error.
NecCode reduce_rate(const NecCode& code, const ReductionVector& k);

struct CodeFamily {
    std::vector<NecCode> members;          // rates ω, ω-1, ..., 1
    std::vector<ReductionVector> steps;    // steps[i] maps members[i] to members[i+1]
    std::vector<DistanceReport> reports;   // verify_mds of each member
};

class FamilyError : public std::runtime_error {
public:
    FamilyError(std::size_t rate, const std::string& what)
        : std::runtime_error("family construction failed at rate " + std::to_string(rate) + ": " + what), rate_(rate) {}
    std::size_t rate() const { return rate_; }

private:
    std::size_t rate_;
};

struct FamilyOptions {
    KStrategy strategy = KStrategy::deterministic;
    std::uint64_t seed = 0;
    Execution exec = Execution::parallel;
};

/// Recursively reduces `top` down to rate 1, re-verifying MDS and kernel
/// sharing after every step.
CodeFamily build_family(const NecCode& top, const FamilyOptions& options = {});
CodeFamily build_family(std::shared_ptr<const Network> network, std::size_t rate, const PrimeField& field,
                        std::uint64_t seed, const FamilyOptions& options = {}, std::size_t max_attempts = 64);

/// Field-size thresholds for a family of rates 1..ω. Term i (0 <= i < ω)
/// covers redundancy δ_t + i = C_t - ω + i.
struct FieldSizeBound {
    std::optional<std::uint64_t> exact;    // max_i Σ_t |R_t(δ_t + i)|
    std::uint64_t binomial = 0;            // max_i Σ_t C(|E|, δ_t + i)
    std::vector<std::uint64_t> exact_terms;
    std::vector<std::uint64_t> binomial_terms;
};

FieldSizeBound field_size_bound(const Network& network, std::size_t rate, const EnumerationLimits& limits = {},
                                Execution exec = Execution::parallel);

}  // namespace nec
