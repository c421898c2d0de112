#include "cvqkd/errors.hpp"
#include "cvqkd/pipeline.hpp"
#include "cvqkd/privacy_amplification.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cvqkd;

namespace {

PipelineConfig cloner_config(double chi, double g, std::uint64_t seed = 1) {
    PipelineConfig c;
    c.attack = Cloner{chi, g};
    c.seed = seed;
    return c;
}

}  // namespace

TEST(Pipeline, NoAttackProducesKey) {
    PipelineConfig c;
    c.seed = 3;
    const PipelineResult r = run_pipeline(c);
    ASSERT_TRUE(r.ok()) << r.abort_reason;
    EXPECT_EQ(r.records.size(), c.rounds);
    EXPECT_GT(r.key.final_key.size(), 0u);
    EXPECT_NEAR(r.pooled.noise_variance, 0.125, 0.01);
    EXPECT_NEAR(r.snr_threshold, 1.0, 1e-12);
    EXPECT_EQ(r.key.reconciled_bits.size(), r.key.symbols * static_cast<std::size_t>(r.key.bits_per_symbol));
    EXPECT_EQ(r.key.leakage_bits, r.key.transcript.leaked_bits());
}

TEST(Pipeline, MeasuredSnrNearGamma) {
    const PipelineResult r = run_pipeline(PipelineConfig{});
    EXPECT_NEAR(r.pooled.snr, 3.0, 0.25);
    EXPECT_GT(r.pooled.snr_lower(), r.snr_threshold);
}

TEST(Pipeline, CoarseQuantizerLeaksLessThanSymbolWidth) {
    PipelineConfig c;
    c.quantizer_n = 2;
    c.rounds = 22300;
    const PipelineResult r = run_pipeline(c);
    ASSERT_GE(r.key.symbols, 10000u);
    EXPECT_GT(r.key.leakage_bits, 0u);
    const double per_symbol = static_cast<double>(r.key.leakage_bits) / static_cast<double>(r.key.symbols);
    EXPECT_LT(per_symbol, r.key.bits_per_symbol);
}

TEST(Pipeline, KeyNeverExceedsCeiling) {
    for (const AttackModel& a : {AttackModel{NoAttack{}}, AttackModel{Cloner{0.3, 1.0}}, AttackModel{Cloner{0.1, 2.0}}}) {
        PipelineConfig c;
        c.attack = a;
        c.rounds = 50000;
        const PipelineResult r = run_pipeline(c);
        EXPECT_LE(static_cast<double>(r.key.final_key.size()),
                  static_cast<double>(r.key.symbols) * r.params.i0_bits);
        if (r.ok()) {
            EXPECT_LE(static_cast<double>(r.key.final_key.size()),
                      static_cast<double>(r.key.symbols) * r.analytic.key_rate_bound_bits);
        }
    }
}

TEST(Pipeline, DisclosureBookkeeping) {
    PipelineConfig c;
    c.rounds = 20000;
    const PipelineResult r = run_pipeline(c);
    std::size_t disclosed = 0;
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        if (r.disclosed[i]) {
            ++disclosed;
            EXPECT_TRUE(r.records[i].matched());
        }
    }
    EXPECT_EQ(disclosed, static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(r.sifted_rounds))));
    EXPECT_EQ(r.basis1->samples + r.basis2->samples, disclosed);
    EXPECT_EQ(r.key.symbols, r.sifted_rounds - disclosed);
}

TEST(Pipeline, ClonerBelowUnityYieldsBoundedKey) {
    const PipelineResult r = run_pipeline(cloner_config(0.3, 1.0));
    ASSERT_TRUE(r.ok()) << r.abort_reason;
    const double rate = static_cast<double>(r.key.final_key.size()) / static_cast<double>(r.key.symbols);
    EXPECT_GT(rate, 0.0);
    EXPECT_LE(rate, r.analytic.key_rate_bound_bits);
    EXPECT_GE(r.key.eve_info_estimate, r.analytic.i_eve_bits - 0.05);
}

TEST(Pipeline, AbortsAtOrAboveBalancedCloning) {
    for (double chi : {1.0, 2.0}) {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const PipelineResult r = run_pipeline(cloner_config(chi, 1.0, seed));
            EXPECT_FALSE(r.ok()) << "chi " << chi << " seed " << seed;
            EXPECT_TRUE(r.key.final_key.empty());
            EXPECT_FALSE(r.abort_reason.empty());
        }
    }
}

TEST(Pipeline, AbortsUnderInterceptResend) {
    PipelineConfig c;
    c.attack = InterceptResend{};
    const PipelineResult r = run_pipeline(c);
    EXPECT_FALSE(r.ok());
    EXPECT_NEAR(r.pooled.noise_variance, 0.5625, 0.05);
}

TEST(Pipeline, SameSeedSameKey) {
    const PipelineResult a = run_pipeline(cloner_config(0.3, 1.0, 42));
    const PipelineResult b = run_pipeline(cloner_config(0.3, 1.0, 42));
    ASSERT_TRUE(a.ok());
    EXPECT_EQ(a.key.final_key.to_bytes(), b.key.final_key.to_bytes());
    EXPECT_EQ(a.key.transcript, b.key.transcript);
    const PipelineResult c = run_pipeline(cloner_config(0.3, 1.0, 43));
    EXPECT_NE(a.key.final_key, c.key.final_key);
}

TEST(Pipeline, KeyIsTheHashOfTheReconciledString) {
    PipelineConfig c;
    c.rounds = 40000;
    const PipelineResult r = run_pipeline(c);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.key.final_key, toeplitz_hash(r.key.reconciled_bits, r.key.final_key.size(), r.key.hash_seed));
}

TEST(Pipeline, EmpiricalReportTracksAnalytic) {
    const PipelineResult r = run_pipeline(cloner_config(0.3, 2.0));
    EXPECT_NEAR(r.empirical.i_bob_bits, r.analytic.i_bob_bits, 0.05);
    EXPECT_NEAR(r.empirical.i_eve_bits, r.analytic.i_eve_bits, 0.05);
}

TEST(Pipeline, InferredEveInformation) {
    const ProtocolParams p = derive_params(std::log(2.0) / 2.0, std::log(2.0) / 2.0);
    EXPECT_EQ(infer_eve_information(p, p.snr), 0.0);
    EXPECT_EQ(infer_eve_information(p, 2.0 * p.snr), 0.0);
    // SNR of the chi = 1 cloner is gamma / (1 + 1 / alpha) = 1.
    EXPECT_NEAR(infer_eve_information(p, 1.0), 0.5, 1e-12);
    EXPECT_NEAR(infer_eve_information(p, 0.0), 1.0, 1e-12);
}

TEST(Pipeline, RejectsBadConfigAndTinyRuns) {
    PipelineConfig c;
    c.rounds = 0;
    EXPECT_THROW(run_pipeline(c), std::invalid_argument);
    c.rounds = 10;
    c.disclose_fraction = 0.1;
    EXPECT_THROW(run_pipeline(c), InsufficientData);
    c.disclose_fraction = 1.0;
    EXPECT_THROW(run_pipeline(c), std::invalid_argument);
    c = PipelineConfig{};
    c.quantizer_n = 0;
    EXPECT_THROW(run_pipeline(c), std::invalid_argument);
    c = PipelineConfig{};
    c.r1 = c.r2 = 0.0;
    EXPECT_THROW(run_pipeline(c), UnusableParameters);
}
