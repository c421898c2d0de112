#pragma once

#include "cvqkd/protocol.hpp"

#include <cstddef>
#include <span>

namespace cvqkd {

/// Welford accumulator for mean and unbiased variance.
class RunningMoments {
public:
    void add(double v) noexcept;
    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    /// Unbiased sample variance; 0 for fewer than two samples.
    double variance() const noexcept;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Unbiased sample variance. Throws InsufficientData for fewer than 2 values.
double sample_variance(std::span<const double> values);

struct NoiseSnr {
    std::size_t samples = 0;
    double noise_variance = 0.0;
    double snr = 0.0;  ///< +inf when the noise variance is exactly zero
};

/// Unbiased variance of y - x and the SNR signal_variance / noise_variance.
NoiseSnr empirical_noise_and_snr(std::span<const SiftedPair> pairs, double signal_variance);

/// Gaussian-channel mutual information at an estimated SNR, in bits.
/// An infinite SNR maps to +inf.
double empirical_mi_gaussian(double snr);

struct IndistinguishabilityReport {
    std::size_t samples1 = 0;
    std::size_t samples2 = 0;
    double variance1 = 0.0;
    double variance2 = 0.0;
    double ratio = 1.0;  ///< variance1 / variance2 (the F statistic)
    double p_value = 1.0;  ///< two-sided F-test
    double ratio_ci_low = 1.0;
    double ratio_ci_high = 1.0;
    bool passed = true;  ///< the confidence interval for the variance ratio contains 1
};

inline constexpr std::size_t kMinIndistinguishabilitySamples = 10'000;

/// Variance-ratio test between two ensembles of outcomes of the same
/// quadrature. `significance` is the two-sided test level.
/// Throws InsufficientData below kMinIndistinguishabilitySamples per side.
IndistinguishabilityReport indistinguishability_test(std::span<const double> samples1,
                                                     std::span<const double> samples2,
                                                     double significance = 0.01);

}  // namespace cvqkd
