#include <gtest/gtest.h>

#include <cmath>

#include "../common.hpp"
#include "nec/combinatorics.hpp"
#include "nec/errors.hpp"
#include "nec/metrics.hpp"
#include "nec/randomized.hpp"

using namespace nectest;

namespace {

std::shared_ptr<const Network> parallel_network(std::size_t channels) {
    std::vector<ChannelSpec> specs;
    for (std::size_t i = 1; i <= channels; ++i) specs.push_back({"e" + std::to_string(i), "s", "t"});
    return std::make_shared<const Network>(std::vector<std::string>{"s", "t"}, "s", std::vector<std::string>{"t"}, specs);
}

/// Fraction of all source kernels over GF(p) that give an MDS code on a
/// single-hop network (the only local kernel is the source's).
double exact_mds_fraction(const std::shared_ptr<const Network>& net, std::size_t rate, const PrimeField& f) {
    const std::size_t cells = rate * net->channel_count();
    Row v(cells, 0);
    std::size_t good = 0, total = 0;
    for (;;) {
        LocalKernels lk(net, f, rate);
        FieldMatrix m(f, rate, net->channel_count());
        for (std::size_t i = 0; i < cells; ++i) m.set(i / net->channel_count(), i % net->channel_count(), v[i]);
        lk.set_kernel(net->source(), m);
        good += verify_mds(NecCode(lk), Execution::serial).is_mds;
        ++total;
        std::size_t i = 0;
        while (i < cells && ++v[i] == f.modulus()) v[i++] = 0;
        if (i == cells) break;
    }
    return static_cast<double>(good) / static_cast<double>(total);
}

}  // namespace

TEST(Rng, EngineMatchesStandardReference) {
    // The C++ standard fixes the 10000th output of a default-seeded mt19937_64.
    std::mt19937_64 rng;
    rng.discard(9999);
    EXPECT_EQ(rng(), 9981545732273789042ull);
}

TEST(Rng, TrialSeedsAreDistinctAndStable) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(trial_seed(42, i));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(trial_seed(42, 7), trial_seed(42, 7));
    EXPECT_NE(trial_seed(42, 7), trial_seed(43, 7));
}

TEST(Rng, UniformValueChiSquare) {
    const PrimeField f(3);
    std::mt19937_64 rng(99);
    std::array<int, 3> counts{};
    const int n = 10000;
    for (int i = 0; i < n; ++i) ++counts[uniform_value(rng, f)];
    const double expected = n / 3.0;
    const double sigma = std::sqrt(n * (1.0 / 3.0) * (2.0 / 3.0));
    double chi2 = 0;
    for (int c : counts) {
        EXPECT_LT(std::abs(c - expected), 3 * sigma);
        chi2 += (c - expected) * (c - expected) / expected;
    }
    EXPECT_LT(chi2, 13.82);  // 99.9% quantile, 2 degrees of freedom
}

TEST(RandomCode, Deterministic) {
    const auto a = random_code(relay_network(), 2, PrimeField(31), 5);
    const auto b = random_code(relay_network(), 2, PrimeField(31), 5);
    EXPECT_EQ(a.local_kernels(), b.local_kernels());
    const auto c = random_code(relay_network(), 2, PrimeField(31), 6);
    EXPECT_FALSE(a.local_kernels() == c.local_kernels());
}

TEST(RandomCode, RecordedGf2Fixture) {
    const auto code = random_code(relay_network(), 2, PrimeField(2), 2024);
    const auto& lk = code.local_kernels();
    EXPECT_EQ(lk.kernel(0), FieldMatrix(PrimeField(2), {{0, 1, 1, 0, 0}, {1, 0, 1, 0, 0}}));
    EXPECT_EQ(lk.kernel(relay_network()->node_index("i")), FieldMatrix(PrimeField(2), {{0, 0}}));
}

TEST(MdsBound, RelayFormulaAndLimits) {
    const auto n = relay_network();
    std::map<NodeId, std::size_t> ones;
    for (NodeId t : n->sinks()) ones[t] = 1;
    const double sum = static_cast<double>(rt_sum(*n, ones));
    EXPECT_EQ(sum, 8.0);
    for (std::uint64_t q : {11, 31, 101}) {
        const double expected = std::pow(1.0 - sum / static_cast<double>(q - 1), 2);
        EXPECT_NEAR(mds_lower_bound(*n, 2, PrimeField(q)), expected, 1e-12);
    }
    EXPECT_EQ(mds_lower_bound(*n, 2, PrimeField(7)), 0.0);
    EXPECT_GT(mds_lower_bound(*n, 2, PrimeField(2147483647)), 0.999999);
    EXPECT_THROW(mds_lower_bound(*n, 4, PrimeField(7)), UsageError);
}

TEST(MdsBound, MonotoneInFieldSize) {
    for (const auto& n : {relay_network(), butterfly_network(), diamond_network()}) {
        double last = -1;
        for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 97, 101}) {
            const double b = mds_lower_bound(*n, 2, PrimeField(p));
            EXPECT_GE(b, last);
            EXPECT_GE(b, 0.0);
            EXPECT_LE(b, 1.0);
            last = b;
        }
    }
}

TEST(JointBound, Relations) {
    for (const auto& n : {relay_network(), diamond_network()}) {
        for (std::uint64_t p : {5, 31, 101, 1009}) {
            const PrimeField f(p);
            const auto j = joint_lower_bound(*n, 2, f);
            ASSERT_TRUE(j.exact);
            EXPECT_LE(*j.exact, mds_lower_bound(*n, 2, f));
            EXPECT_LE(j.binomial, *j.exact);
            EXPECT_GE(j.binomial, 0.0);
        }
    }
    EXPECT_GT(*joint_lower_bound(*relay_network(), 2, PrimeField(2147483647)).exact, 0.99999);
    EXPECT_GT(joint_lower_bound(*relay_network(), 2, PrimeField(2147483647)).binomial, 0.99999);
    EXPECT_THROW(joint_lower_bound(*relay_network(), 1, PrimeField(5)), UsageError);
}

TEST(JointBound, RelayExactForm) {
    const auto n = relay_network();
    const PrimeField f(31);
    const auto j = joint_lower_bound(*n, 2, f);
    ASSERT_TRUE(j.forbidden_total);
    EXPECT_EQ(*j.forbidden_total, 10u);  // |R_t(2)| = 5 at each sink
    EXPECT_NEAR(*j.exact, (1.0 - 10.0 / 31.0) * std::pow(1.0 - 8.0 / 30.0, 2), 1e-12);
    const auto with_q = joint_lower_bound(*n, 2, f, 4);
    EXPECT_NEAR(*with_q.exact, (1.0 - 4.0 / 31.0) * std::pow(1.0 - 8.0 / 30.0, 2), 1e-12);
}

TEST(JointBound, CombinationNetworkForms) {
    const auto n = combination_network(6, 4);
    const PrimeField f(1000003);
    const auto j = joint_lower_bound(n, 2, f);
    ASSERT_TRUE(j.exact);
    ASSERT_TRUE(j.binomial_simplified);
    EXPECT_GE(*j.exact, j.binomial);
    EXPECT_GE(*j.exact, *j.binomial_simplified);
    const double q = 1000003.0;
    const double b2 = 15.0 * static_cast<double>(binomial(66, 2));
    const double b3 = 15.0 * static_cast<double>(binomial(66, 3));
    EXPECT_NEAR(j.binomial, (1 - b3 / q) * std::pow(1 - b2 / (q - 1), 7), 1e-12);
    EXPECT_NEAR(*j.binomial_simplified, std::pow(1 - b3 / (q - 1), 8), 1e-12);
    EXPECT_NEAR(*j.exact, (1 - 480.0 / q) * std::pow(1 - 360.0 / (q - 1), 7), 1e-12);
}

TEST(Wilson, ReferenceValues) {
    auto [lo, hi] = wilson_interval(5, 10);
    EXPECT_NEAR(lo, 0.2366, 1e-4);
    EXPECT_NEAR(hi, 0.7634, 1e-4);
    std::tie(lo, hi) = wilson_interval(0, 10);
    EXPECT_NEAR(lo, 0.0, 1e-12);
    EXPECT_NEAR(hi, 0.2775, 1e-4);
    std::tie(lo, hi) = wilson_interval(10, 10);
    EXPECT_NEAR(lo, 0.7225, 1e-4);
    EXPECT_NEAR(hi, 1.0, 1e-12);
}

TEST(EstimateSuccess, ReproducibleAndExecutionIndependent) {
    TrialConfig cfg{relay_network(), PrimeField(5), 2, 300, 17};
    const auto a = estimate_success(cfg, Target::joint_family, Execution::serial);
    const auto b = estimate_success(cfg, Target::joint_family, Execution::parallel);
    EXPECT_EQ(a.successes, b.successes);
    ASSERT_EQ(a.failures.size(), b.failures.size());
    for (std::size_t i = 0; i < a.failures.size(); ++i) {
        EXPECT_EQ(a.failures[i].index, b.failures[i].index);
        EXPECT_EQ(a.failures[i].reason, b.failures[i].reason);
    }
    EXPECT_EQ(a.successes + a.failures.size(), a.trials);
}

TEST(EstimateSuccess, SingleTrial) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto r = estimate_success({relay_network(), PrimeField(3), 2, 1, seed}, Target::mds);
        EXPECT_TRUE(r.estimate == 0.0 || r.estimate == 1.0);
    }
    EXPECT_THROW(estimate_success({relay_network(), PrimeField(3), 2, 0, 0}, Target::mds), UsageError);
    EXPECT_THROW(estimate_success({relay_network(), PrimeField(3), 1, 5, 0}, Target::joint_family), UsageError);
}

TEST(EstimateSuccess, ImpossibleFieldGivesZero) {
    const auto net = parallel_network(4);
    EXPECT_EQ(exact_mds_fraction(net, 2, PrimeField(2)), 0.0);
    const auto r = estimate_success({net, PrimeField(2), 2, 200, 3}, Target::mds);
    EXPECT_EQ(r.successes, 0u);
    ASSERT_TRUE(r.mds_bound);
    EXPECT_EQ(*r.mds_bound, 0.0);
    EXPECT_FALSE(r.failures.empty());
}

TEST(EstimateSuccess, MatchesExhaustiveProbability) {
    for (std::uint64_t p : {2, 3}) {
        const auto net = parallel_network(3);
        const PrimeField f(p);
        const double exact = exact_mds_fraction(net, 2, f);
        const auto r = estimate_success({net, f, 2, 4000, 11}, Target::mds);
        // 99.9% interval so a fixed seed is not a coin flip.
        const auto [lo, hi] = wilson_interval(r.successes, r.trials, 3.2905);
        EXPECT_LE(lo, exact);
        EXPECT_GE(hi, exact);
        EXPECT_GE(exact + 1e-12, *r.mds_bound);
    }
}

TEST(EstimateSuccess, RelayAboveBounds) {
    const auto r = estimate_success({relay_network(), PrimeField(31), 2, 2000, 1}, Target::mds);
    EXPECT_GE(r.wilson_low, *r.mds_bound);
    const auto j = estimate_success({relay_network(), PrimeField(31), 2, 2000, 1}, Target::joint_family);
    EXPECT_GE(j.wilson_low, *j.joint_bounds->exact);
    EXPECT_LE(j.successes, r.successes);
    ASSERT_TRUE(j.family_heuristic);
    const auto e = estimate_success({relay_network(), PrimeField(31), 2, 2000, 1}, Target::joint_exists_k);
    EXPECT_GE(e.successes, j.successes);
    EXPECT_LE(e.successes, r.successes);
}
