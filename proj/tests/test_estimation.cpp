#include "cvqkd/attacks.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/estimation.hpp"
#include "cvqkd/gaussian.hpp"
#include "cvqkd/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

using namespace cvqkd;

TEST(RunningMoments, MatchesTwoPass) {
    Rng rng(1);
    std::vector<double> v;
    RunningMoments m;
    for (int i = 0; i < 1000; ++i) {
        v.push_back(1e6 + sample_gaussian(0.0, 2.0, rng));
        m.add(v.back());
    }
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    EXPECT_EQ(m.count(), 1000u);
    EXPECT_NEAR(m.mean(), mean, 1e-6);
    EXPECT_NEAR(m.variance(), ss / 999.0, 1e-9);
    EXPECT_NEAR(sample_variance(v), ss / 999.0, 1e-9);
    RunningMoments one;
    one.add(3.0);
    EXPECT_EQ(one.variance(), 0.0);
}

TEST(SampleVariance, NeedsTwoValues) {
    std::vector<double> one{1.0};
    EXPECT_THROW(sample_variance(one), InsufficientData);
    std::vector<double> two{1.0, 3.0};
    EXPECT_EQ(sample_variance(two), 2.0);
}

TEST(NoiseSnr, FromPairs) {
    std::vector<SiftedPair> pairs{{0, QuadratureBasis::X1, 0.0, 1.0}, {1, QuadratureBasis::X1, 0.0, -1.0}};
    const NoiseSnr ns = empirical_noise_and_snr(pairs, 0.375);
    EXPECT_EQ(ns.samples, 2u);
    EXPECT_EQ(ns.noise_variance, 2.0);
    EXPECT_EQ(ns.snr, 0.1875);
    std::vector<SiftedPair> exact{{0, QuadratureBasis::X1, 1.0, 1.0}, {1, QuadratureBasis::X1, 2.0, 2.0}};
    EXPECT_TRUE(std::isinf(empirical_noise_and_snr(exact, 1.0).snr));
}

TEST(EmpiricalMi, GaussianChannel) {
    EXPECT_NEAR(empirical_mi_gaussian(3.0), 1.0, 1e-15);
    EXPECT_EQ(empirical_mi_gaussian(0.0), 0.0);
    EXPECT_TRUE(std::isinf(empirical_mi_gaussian(INFINITY)));
}

TEST(EmpiricalMi, ConvergesOnSimulatedChannel) {
    const ProtocolParams p = derive_params(std::log(2.0) / 2.0, std::log(2.0) / 2.0);
    Rng rng(5);
    std::vector<SiftedPair> pairs;
    for (std::size_t i = 0; i < 200000; ++i) {
        const EncodedKey k = alice_encode(p, QuadratureBasis::X1, rng);
        pairs.push_back({i, QuadratureBasis::X1, k.x, bob_measure(k.state, QuadratureBasis::X1, 0.0, rng)});
    }
    const NoiseSnr ns = empirical_noise_and_snr(pairs, p.key_var1);
    EXPECT_NEAR(empirical_mi_gaussian(ns.snr), 1.0, 0.01);
}

TEST(EmpiricalMi, StandardErrorShrinksAsInverseSqrtN) {
    // Quadrupling the sample count halves the spread of the estimate.
    const ProtocolParams p = derive_params(std::log(2.0) / 2.0, std::log(2.0) / 2.0);
    const auto spread = [&](std::size_t n, std::uint64_t seed) {
        RunningMoments est;
        for (int rep = 0; rep < 200; ++rep) {
            Rng rng = Rng(seed).substream(rep);
            std::vector<SiftedPair> pairs;
            for (std::size_t i = 0; i < n; ++i) {
                const EncodedKey k = alice_encode(p, QuadratureBasis::X1, rng);
                pairs.push_back({i, QuadratureBasis::X1, k.x, bob_measure(k.state, QuadratureBasis::X1, 0.0, rng)});
            }
            est.add(empirical_mi_gaussian(empirical_noise_and_snr(pairs, p.key_var1).snr));
        }
        return std::sqrt(est.variance());
    };
    const double ratio = spread(1000, 1) / spread(4000, 2);
    EXPECT_NEAR(ratio, 2.0, 0.4);
}

TEST(Indistinguishability, SameDistributionPasses) {
    Rng rng(3);
    std::vector<double> a(100000), b(100000);
    for (auto& v : a) v = sample_gaussian(0.0, 0.5, rng);
    for (auto& v : b) v = sample_gaussian(0.0, 0.5, rng);
    const auto rep = indistinguishability_test(a, b);
    EXPECT_TRUE(rep.passed);
    EXPECT_NEAR(rep.variance1, 0.5, 0.015);
    EXPECT_NEAR(rep.ratio, 1.0, 0.03);
    EXPECT_LT(rep.ratio_ci_low, 1.0);
    EXPECT_GT(rep.ratio_ci_high, 1.0);
    EXPECT_GT(rep.p_value, 0.01);
}

TEST(Indistinguishability, DetectsHalvedKeyVariance) {
    // Halving the key variance in basis 1 gives X1 ensemble variances 0.3125 vs 0.5.
    Rng rng(4);
    std::vector<double> a(100000), b(100000);
    for (auto& v : a) v = sample_gaussian(0.0, 0.3125, rng);
    for (auto& v : b) v = sample_gaussian(0.0, 0.5, rng);
    const auto rep = indistinguishability_test(a, b);
    EXPECT_FALSE(rep.passed);
    EXPECT_NEAR(rep.ratio, 0.625, 0.01);
    EXPECT_LT(rep.p_value, 1e-10);
}

TEST(Indistinguishability, FalseRejectionRateMatchesLevel) {
    int rejections = 0;
    const int trials = 300;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng(77).substream(t);
        std::vector<double> a(10000), b(10000);
        for (auto& v : a) v = rng.standard_normal();
        for (auto& v : b) v = rng.standard_normal();
        rejections += !indistinguishability_test(a, b, 0.05).passed;
    }
    // Binomial(300, 0.05): mean 15, sd 3.8.
    EXPECT_GE(rejections, 3);
    EXPECT_LE(rejections, 30);
}

TEST(Indistinguishability, RequiresEnoughSamples) {
    std::vector<double> small(kMinIndistinguishabilitySamples - 1, 0.0);
    std::vector<double> big(kMinIndistinguishabilitySamples, 0.0);
    EXPECT_THROW(indistinguishability_test(small, big), InsufficientData);
}

TEST(NoiseSnr, SyntheticMillionPairs) {
    Rng rng(41);
    std::vector<SiftedPair> pairs(1000000);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double x = sample_gaussian(0.0, 0.375, rng);
        pairs[i] = {i, QuadratureBasis::X1, x, x + sample_gaussian(0.0, 0.125, rng)};
    }
    const NoiseSnr ns = empirical_noise_and_snr(pairs, 0.375);
    EXPECT_NEAR(ns.noise_variance, 0.125, 0.00125);
    EXPECT_NEAR(empirical_mi_gaussian(ns.snr), 1.0, 0.02);
}

TEST(Indistinguishability, IdenticalListsGiveUnitRatio) {
    Rng rng(6);
    std::vector<double> a(20000);
    for (auto& v : a) v = rng.standard_normal();
    const auto rep = indistinguishability_test(a, a);
    EXPECT_EQ(rep.ratio, 1.0);
    EXPECT_TRUE(rep.passed);
}

TEST(NoiseSnr, BalancedClonerSnrIsUnity) {
    const ProtocolParams p = derive_params(std::log(2.0) / 2.0, std::log(2.0) / 2.0);
    RoundOptions opt;
    opt.sent_basis = QuadratureBasis::X1;
    opt.bob_basis = QuadratureBasis::X1;
    const auto recs = simulate_rounds(p, Cloner{1.0, 1.0}, 200000, 12, opt);
    const NoiseSnr ns = empirical_noise_and_snr(sift(recs), p.key_var1);
    EXPECT_NEAR(ns.snr, 1.0, 0.03);
    EXPECT_NEAR(empirical_mi_gaussian(ns.snr), 0.5, 0.02);
}
