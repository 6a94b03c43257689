#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "actch/assemble.hpp"
#include "actch/bc_region.hpp"
#include "actch/cdc_solver.hpp"
#include "actch/mc.hpp"
#include "support/test_util.hpp"

using namespace actch;

TEST_CASE("sample_joint: point mass and rejection of n = 0") {
    const JointPmf pm({2, 3}, {0, 0, 0, 0, 1, 0});
    const SampleBatch batch = sample_joint(pm, 1000, 7);
    for (const auto d : batch.draws) CHECK(d == 4);
    CHECK_THROWS(sample_joint(pm, 0, 7));
}

TEST_CASE("sample_joint: fair-coin frequencies concentrate") {
    const JointPmf coin({2}, {0.5, 0.5});
    const std::size_t n = 1000000;
    const SampleBatch batch = sample_joint(coin, n, 2024);
    std::size_t ones = 0;
    for (const auto d : batch.draws) ones += d;
    const double freq = static_cast<double>(ones) / static_cast<double>(n);
    CHECK(std::abs(freq - 0.5) <= 3.0 * std::sqrt(0.25 / static_cast<double>(n)));
}

TEST_CASE("sample_joint: assembled five-axis joint within four standard errors") {
    Xoshiro256pp rng(31);
    JointAssembler jb;
    const int a = jb.add_marginal(test::random_pmf(rng, 2));
    const int s = jb.add_kernel(test::random_kernel(rng, {2}, 2), {a});
    const int u = jb.add_kernel(test::random_kernel(rng, {2, 2}, 2), {s, a});
    const int x = jb.add_kernel(test::random_kernel(rng, {2, 2}, 2), {u, s});
    jb.add_kernel(test::random_kernel(rng, {2, 2, 2}, 2), {x, s, a});
    const JointPmf j = jb.assemble();
    const std::size_t n = 1000000;
    const SampleBatch batch = sample_joint(j, n, 99);
    std::vector<double> freq(j.cells(), 0.0);
    for (const auto d : batch.draws) freq[d] += 1.0 / static_cast<double>(n);
    for (std::size_t c = 0; c < j.cells(); ++c) {
        const double p = j.flat(c);
        const double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
        CHECK(std::abs(freq[c] - p) <= 4.0 * se + 1e-12);
    }
}

TEST_CASE("sample_joint: identical draws for any shard split and rerun") {
    Xoshiro256pp rng(37);
    const JointPmf j = test::random_joint(rng, {3, 4});
    const SampleBatch one = sample_joint(j, 20000, 5);
    const SampleBatch again = sample_joint(j, 20000, 5);
    CHECK(one.draws == again.draws);
    for (const int shards : {2, 3, 8}) {
        const SampleBatch sharded = sample_joint_sharded(j, 20000, 5, shards);
        CHECK(one.draws == sharded.draws);
    }
    const SampleBatch other_seed = sample_joint(j, 20000, 6);
    CHECK(one.draws != other_seed.draws);
}

TEST_CASE("empirical means: exact under a point mass, binomial error otherwise") {
    const Table gamma({2, 2}, {0.0, 1.0, 0.25, 0.75});
    const JointPmf pm({2, 2}, {0, 0, 0, 1});
    const SampleBatch b1 = sample_joint(pm, 5000, 3);
    const int axes[] = {0, 1};
    CHECK(empirical_mean(b1, axes, gamma) == doctest::Approx(0.75));

    // binary scheme joint: cost is Ber(b) in X
    const double bprob = 0.1;
    const BcActionSpec spec = binary_example_spec(bprob, 0.1, 0.1);
    const BinaryScheme scheme = binary_scheme_vars(bprob, 0.25);
    const JointPmf j = bc_joint(spec, scheme.vars);
    const std::size_t n = 200000;
    const SampleBatch batch = sample_joint(j, n, 17);
    const int cost_axes[] = {BcAxes::a, BcAxes::x};
    const double cost_hat = empirical_mean(batch, cost_axes, spec.cost);
    CHECK(std::abs(cost_hat - bprob) <=
          3.0 * std::sqrt(bprob * (1 - bprob) / static_cast<double>(n)));
}

TEST_CASE("plug-in MI on independent axes stays under the bias budget") {
    Xoshiro256pp rng(41);
    JointAssembler jb;
    jb.add_marginal(test::random_pmf(rng, 2));
    jb.add_marginal(test::random_pmf(rng, 3));
    const JointPmf j = jb.assemble();
    const SampleBatch batch = sample_joint(j, 1000000, 11);
    const int a0[] = {0};
    const int a1[] = {1};
    CHECK(empirical_mi(batch, a0, a1) <= 5e-3);
}

TEST_CASE("property: sample means converge at the Monte Carlo rate") {
    Xoshiro256pp rng(43);
    const Table gamma({2, 2}, {0.0, 1.0, 0.3, 0.7});
    const JointPmf j = test::random_joint(rng, {2, 2});
    const int axes[] = {0, 1};
    double mean = 0.0, second = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x) {
            const int idx[] = {a, x};
            mean += j.prob(idx) * gamma.at2(a, x);
            second += j.prob(idx) * gamma.at2(a, x) * gamma.at2(a, x);
        }
    const double sd = std::sqrt(std::max(0.0, second - mean * mean));
    const std::size_t n = 10000;
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const SampleBatch batch = sample_joint(j, n, 1000 + static_cast<std::uint64_t>(trial));
        const double hat = empirical_mean(batch, axes, gamma);
        if (std::abs(hat - mean) > 4.0 * sd / std::sqrt(static_cast<double>(n))) ++failures;
    }
    CHECK(failures <= 1);
}

TEST_CASE("property: plug-in MI bias is non-negative on independent axes") {
    Xoshiro256pp rng(47);
    JointAssembler jb;
    jb.add_marginal(test::random_pmf(rng, 2));
    jb.add_marginal(test::random_pmf(rng, 2));
    const JointPmf j = jb.assemble();
    double mean_mi = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const SampleBatch batch = sample_joint(j, 1000, 5000 + static_cast<std::uint64_t>(trial));
        const int a0[] = {0};
        const int a1[] = {1};
        mean_mi += empirical_mi(batch, a0, a1);
    }
    CHECK(mean_mi / 100.0 > 0.0);
}

TEST_CASE("empirical_estimates on a point-to-point joint") {
    const Alphabet bin(2);
    std::vector<double> trans;
    for (int x = 0; x < 2; ++x)
        for (int s = 0; s < 2; ++s)
            for (int a = 0; a < 2; ++a) {
                (void)s;
                (void)a;
                const double q = 0.1;
                trans.push_back(x == 0 ? 1 - q : q);
                trans.push_back(x == 0 ? q : 1 - q);
            }
    PtpActionSpec spec(bin, bin, bin, bin, bin, CondPmf::bsc(0.3),
                       CondPmf({2, 2, 2}, 2, std::move(trans)),
                       {{"cost", Table({2, 2}, {0.0, 1.0, 0.0, 1.0})}},
                       Table({2, 2}, {0.0, 1.0, 1.0, 0.0}));
    Xoshiro256pp rng(53);
    const CdcDecisionVars vars{test::random_pmf(rng, 2), test::random_kernel(rng, {2, 2}, 2),
                               test::random_kernel(rng, {2, 2}, 2), {0, 1}, 2};
    const CdcEvaluation analytic = cdc_objective(spec, vars);
    const JointPmf j = cdc_joint(spec, vars);
    const SampleBatch batch = sample_joint(j, 400000, 23);
    const EmpiricalEstimates est = empirical_estimates(batch, spec, vars.phi);
    CHECK(std::abs(est.cost_hats[0] - analytic.costs[0]) <= 5e-3);
    CHECK(std::abs(est.dist_hat - analytic.distortion) <= 5e-3);
    CHECK(std::abs(est.rate_hat - analytic.raw_rate) <= 1e-2);
}
