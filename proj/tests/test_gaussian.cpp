#include "cvqkd/gaussian.hpp"
#include "cvqkd/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

using namespace cvqkd;

TEST(Gaussian, DifferentialEntropyOfUnitVariance) {
    // mpmath: 0.5 * log2(2 pi e)
    EXPECT_NEAR(differential_entropy(1.0), 2.047095585180641, 1e-12);
}

TEST(Gaussian, DifferentialEntropyScalesWithHalfLogVariance) {
    for (double v : {0.01, 0.125, 0.375, 4.0, 1e6}) {
        EXPECT_NEAR(differential_entropy(4.0 * v) - differential_entropy(v), 1.0, 1e-12);
    }
}

TEST(Gaussian, DifferentialEntropyRejectsNonPositiveVariance) {
    EXPECT_THROW(differential_entropy(0.0), std::invalid_argument);
    EXPECT_THROW(differential_entropy(-1.0), std::invalid_argument);
}

TEST(Gaussian, MutualInformationOfChannel) {
    EXPECT_NEAR(gaussian_mutual_information(0.375, 0.125), 1.0, 1e-12);
    EXPECT_NEAR(gaussian_mutual_information(15.0, 1.0), 2.0, 1e-12);
    EXPECT_EQ(gaussian_mutual_information(0.0, 1.0), 0.0);
    // Tiny SNR stays accurate: 0.5 log2(1 + 1e-15).
    EXPECT_NEAR(gaussian_mutual_information(1e-15, 1.0), 0.5e-15 / std::numbers::ln2, 1e-27);
}

TEST(Gaussian, MutualInformationIsEntropyDifference) {
    for (double s : {0.1, 0.375, 2.0}) {
        for (double n : {0.05, 0.125, 1.0}) {
            EXPECT_NEAR(gaussian_mutual_information(s, n), differential_entropy(s + n) - differential_entropy(n),
                        1e-12);
        }
    }
}

TEST(Gaussian, SampleZeroVarianceReturnsMeanAndStillConsumes) {
    Rng a(4), b(4);
    EXPECT_EQ(sample_gaussian(1.5, 0.0, a), 1.5);
    b.standard_normal();
    EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Gaussian, SampleRejectsBadVariance) {
    Rng rng(1);
    EXPECT_THROW(sample_gaussian(0.0, -0.1, rng), std::invalid_argument);
    EXPECT_THROW(sample_gaussian(0.0, std::numeric_limits<double>::quiet_NaN(), rng), std::invalid_argument);
}

TEST(Gaussian, SampleMoments) {
    Rng rng(99);
    const int n = 400000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double v = sample_gaussian(2.0, 0.375, rng);
        s += v;
        s2 += v * v;
    }
    const double mean = s / n;
    EXPECT_NEAR(mean, 2.0, 5e-3);
    EXPECT_NEAR(s2 / n - mean * mean, 0.375, 0.375 * 0.01);
}
