#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "actch/assemble.hpp"
#include "actch/bc_region.hpp"
#include "actch/channel_model.hpp"
#include "actch/info.hpp"
#include "support/test_util.hpp"

using namespace actch;

namespace {

Table hamming2() { return Table({2, 2}, {0.0, 1.0, 1.0, 0.0}); }

PtpActionSpec tiny_ptp(const CondPmf& state, const CondPmf& trans) {
    const Alphabet bin(2);
    return PtpActionSpec(bin, bin, bin, bin, bin, state, trans,
                         {{"cost", Table({2, 2}, {0.0, 1.0, 0.0, 1.0})}}, hamming2());
}

}  // namespace

TEST_CASE("expected_cost") {
    // gamma(a, x) = x with X = B ~ Ber(b), independent of A
    const double b = 0.37;
    const JointPmf j({2, 2}, {0.5 * (1 - b), 0.5 * b, 0.5 * (1 - b), 0.5 * b});
    const Table gamma_x({2, 2}, {0.0, 1.0, 0.0, 1.0});
    CHECK(expected_cost(j, 0, 1, gamma_x) == doctest::Approx(b).epsilon(1e-14));

    const Table zero({2, 2}, {0.0, 0.0, 0.0, 0.0});
    CHECK(expected_cost(j, 0, 1, zero) == 0.0);

    const JointPmf uni({2, 2}, {0.25, 0.25, 0.25, 0.25});
    const Table sum_ax({2, 2}, {0.0, 1.0, 1.0, 2.0});  // a + x
    CHECK(expected_cost(uni, 0, 1, sum_ax) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("expected_distortion") {
    const Table d = hamming2();
    const std::vector<int> ident = {0, 1};
    // U determines S and phi maps it back
    const JointPmf diag({2, 2}, {0.6, 0.0, 0.0, 0.4});
    CHECK(expected_distortion(diag, 0, 1, ident, d) == doctest::Approx(0.0));
    // S uniform independent of U: 0.5 for any phi
    const JointPmf indep({2, 2}, {0.25, 0.25, 0.25, 0.25});
    CHECK(expected_distortion(indep, 0, 1, ident, d) == doctest::Approx(0.5));
    CHECK(expected_distortion(indep, 0, 1, std::vector<int>{1, 1}, d) == doctest::Approx(0.5));
    // p(S = U) = 0.9
    const JointPmf corr({2, 2}, {0.45, 0.05, 0.05, 0.45});
    CHECK(expected_distortion(corr, 0, 1, ident, d) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK_THROWS(expected_distortion(corr, 0, 1, std::vector<int>{0}, d));
}

TEST_CASE("evaluators are linear in the joint") {
    Xoshiro256pp rng(41);
    const Table gamma({2, 2}, {0.3, 1.2, 0.0, 0.7});
    const Table d = hamming2();
    const std::vector<int> phi = {1, 0};
    for (int t = 0; t < 200; ++t) {
        const JointPmf j1 = test::random_joint(rng, {2, 2});
        const JointPmf j2 = test::random_joint(rng, {2, 2});
        const double lam = rng.next_unit();
        std::vector<double> mixed(4);
        for (int i = 0; i < 4; ++i)
            mixed[static_cast<std::size_t>(i)] =
                lam * j1.flat(static_cast<std::size_t>(i)) +
                (1 - lam) * j2.flat(static_cast<std::size_t>(i));
        const JointPmf jm({2, 2}, mixed);
        CHECK(expected_cost(jm, 0, 1, gamma) ==
              doctest::Approx(lam * expected_cost(j1, 0, 1, gamma) +
                              (1 - lam) * expected_cost(j2, 0, 1, gamma))
                  .epsilon(1e-12));
        CHECK(expected_distortion(jm, 0, 1, phi, d) ==
              doctest::Approx(lam * expected_distortion(j1, 0, 1, phi, d) +
                              (1 - lam) * expected_distortion(j2, 0, 1, phi, d))
                  .epsilon(1e-12));
    }
}

TEST_CASE("check_degraded recovers the binary example factorization") {
    const BcActionSpec spec = binary_example_spec(0.1, 0.1, 0.1);
    const BcRawSpec raw = compose_joint_output(spec);
    const auto factored = check_degraded(raw);
    REQUIRE(factored.has_value());
    // degrading channel is the BSC(0.1) that produced it
    for (int y1 = 0; y1 < 2; ++y1)
        for (int y2 = 0; y2 < 2; ++y2)
            CHECK(factored->degrading_channel.at({{y1}}, y2) ==
                  doctest::Approx(y1 == y2 ? 0.9 : 0.1).epsilon(1e-12));
}

TEST_CASE("check_degraded: identity degrading channel") {
    Xoshiro256pp rng(43);
    const Alphabet bin(2);
    BcActionSpec spec(bin, bin, bin, bin, bin, CondPmf::bsc(0.2),
                      test::random_kernel(rng, {2, 2, 2}, 2), CondPmf::identity(2),
                      Table({2, 2}, {0.0, 1.0, 0.0, 1.0}));
    const auto factored = check_degraded(compose_joint_output(spec));
    REQUIRE(factored.has_value());
    CHECK(factored->degrading_channel.at({{0}}, 0) == doctest::Approx(1.0));
    CHECK(factored->degrading_channel.at({{1}}, 1) == doctest::Approx(1.0));
}

TEST_CASE("check_degraded rejects a kernel where Y2 depends on X given Y1") {
    // y1 uniform regardless; y2 = x. No p(y2|y1) can reproduce that.
    const Alphabet bin(2);
    std::vector<double> joint;
    for (int x = 0; x < 2; ++x)
        for (int s = 0; s < 2; ++s)
            for (int a = 0; a < 2; ++a) {
                (void)s;
                (void)a;
                for (int y1 = 0; y1 < 2; ++y1)
                    for (int y2 = 0; y2 < 2; ++y2) {
                        (void)y1;
                        joint.push_back(y2 == x ? 0.5 : 0.0);
                    }
            }
    BcRawSpec raw{bin, bin, bin, bin, bin, CondPmf::bsc(0.0),
                  CondPmf({2, 2, 2}, 4, std::move(joint)),
                  Table({2, 2}, {0.0, 1.0, 0.0, 1.0})};
    CHECK(!check_degraded(raw).has_value());
}

TEST_CASE("property: every factored kernel passes the round trip") {
    Xoshiro256pp rng(47);
    const Alphabet bin(2);
    const Alphabet tri(3);
    for (int t = 0; t < 200; ++t) {
        BcActionSpec spec(bin, bin, bin, tri, bin, test::random_kernel(rng, {2}, 2),
                          test::random_kernel(rng, {2, 2, 2}, 3),
                          test::random_kernel(rng, {3}, 2),
                          Table({2, 2}, {0.0, 1.0, 0.0, 1.0}));
        const auto factored = check_degraded(compose_joint_output(spec));
        REQUIRE(factored.has_value());
        // and the recovered factors reproduce the joint kernel
        const BcRawSpec again = compose_joint_output(*factored);
        const BcRawSpec orig = compose_joint_output(spec);
        for (std::size_t i = 0; i < orig.joint_output.table().size(); ++i)
            CHECK(std::abs(again.joint_output.table()[i] - orig.joint_output.table()[i]) <=
                  1e-9);
    }
}

TEST_CASE("binary example: D_max under Hamming is 1") {
    const CondPmf state = CondPmf::bsc(0.1);
    const CondPmf trans = binary_example_spec(0.1, 0.1, 0.1).channel1;
    const PtpActionSpec spec = tiny_ptp(state, trans);
    CHECK(spec.d_max() == doctest::Approx(1.0));
}

TEST_CASE("spec construction rejects malformed pieces") {
    const Alphabet bin(2);
    const CondPmf state = CondPmf::bsc(0.1);
    const CondPmf trans = binary_example_spec(0.1, 0.1, 0.1).channel1;
    // negative cost
    CHECK_THROWS(PtpActionSpec(bin, bin, bin, bin, bin, state, trans,
                               {{"cost", Table({2, 2}, {-1.0, 0.0, 0.0, 0.0})}}, hamming2()));
    // cost table of the wrong shape
    CHECK_THROWS(PtpActionSpec(bin, bin, bin, bin, bin, state, trans,
                               {{"cost", Table({2, 3}, {0, 0, 0, 0, 0, 0})}}, hamming2()));
    // all-zero distortion has no positive maximum
    CHECK_THROWS(PtpActionSpec(bin, bin, bin, bin, bin, state, trans,
                               {{"cost", Table({2, 2}, {0.0, 1.0, 0.0, 1.0})}},
                               Table({2, 2}, {0.0, 0.0, 0.0, 0.0})));
}
