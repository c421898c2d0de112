#include "cvqkd/estimation.hpp"

#include "cvqkd/errors.hpp"
#include "cvqkd/gaussian.hpp"

#include <boost/math/distributions/fisher_f.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cvqkd {

void RunningMoments::add(double v) noexcept {
    ++n_;
    const double delta = v - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (v - mean_);
}

double RunningMoments::variance() const noexcept {
    return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double sample_variance(std::span<const double> values) {
    if (values.size() < 2) {
        throw InsufficientData("sample_variance: need at least 2 values, got " +
                               std::to_string(values.size()));
    }
    RunningMoments m;
    for (double v : values) m.add(v);
    return m.variance();
}

NoiseSnr empirical_noise_and_snr(std::span<const SiftedPair> pairs, double signal_variance) {
    if (pairs.size() < 2) {
        throw InsufficientData("empirical_noise_and_snr: need at least 2 pairs, got " +
                               std::to_string(pairs.size()));
    }
    if (!(signal_variance > 0.0)) {
        throw std::invalid_argument("empirical_noise_and_snr: signal variance must be positive");
    }
    RunningMoments m;
    for (const auto& p : pairs) m.add(p.y - p.x);
    NoiseSnr out;
    out.samples = pairs.size();
    out.noise_variance = m.variance();
    out.snr = out.noise_variance > 0.0 ? signal_variance / out.noise_variance
                                       : std::numeric_limits<double>::infinity();
    return out;
}

double empirical_mi_gaussian(double snr) {
    if (!(snr >= 0.0)) {
        throw std::invalid_argument("empirical_mi_gaussian: snr must be non-negative");
    }
    if (std::isinf(snr)) return std::numeric_limits<double>::infinity();
    return gaussian_mutual_information(snr, 1.0);
}

IndistinguishabilityReport indistinguishability_test(std::span<const double> samples1,
                                                     std::span<const double> samples2,
                                                     double significance) {
    if (samples1.size() < kMinIndistinguishabilitySamples ||
        samples2.size() < kMinIndistinguishabilitySamples) {
        throw InsufficientData("indistinguishability_test: need at least " +
                               std::to_string(kMinIndistinguishabilitySamples) +
                               " samples per ensemble");
    }
    if (!(significance > 0.0 && significance < 1.0)) {
        throw std::invalid_argument("indistinguishability_test: significance must be in (0, 1)");
    }
    IndistinguishabilityReport r;
    r.samples1 = samples1.size();
    r.samples2 = samples2.size();
    r.variance1 = sample_variance(samples1);
    r.variance2 = sample_variance(samples2);
    if (!(r.variance1 > 0.0 && r.variance2 > 0.0)) {
        throw InsufficientData("indistinguishability_test: degenerate ensemble with zero variance");
    }
    r.ratio = r.variance1 / r.variance2;

    const boost::math::fisher_f_distribution<double> f(static_cast<double>(r.samples1 - 1),
                                                       static_cast<double>(r.samples2 - 1));
    const double lower_tail = boost::math::cdf(f, r.ratio);
    const double upper_tail = boost::math::cdf(boost::math::complement(f, r.ratio));
    r.p_value = std::min(1.0, 2.0 * std::min(lower_tail, upper_tail));
    r.ratio_ci_low = r.ratio / boost::math::quantile(f, 1.0 - significance / 2.0);
    r.ratio_ci_high = r.ratio / boost::math::quantile(f, significance / 2.0);
    r.passed = r.ratio_ci_low <= 1.0 && 1.0 <= r.ratio_ci_high;
    return r;
}

}  // namespace cvqkd
