#include "cvqkd/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvqkd {

double sample_gaussian(double mean, double variance, Rng& rng) {
    if (!(variance >= 0.0)) {
        throw std::invalid_argument("sample_gaussian: variance must be non-negative");
    }
    return mean + std::sqrt(variance) * rng.standard_normal();
}

double differential_entropy(double variance) {
    if (!(variance > 0.0)) {
        throw std::invalid_argument("differential_entropy: variance must be positive");
    }
    return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * variance);
}

double gaussian_mutual_information(double signal_variance, double noise_variance) {
    if (!(noise_variance > 0.0)) {
        throw std::invalid_argument("gaussian_mutual_information: noise variance must be positive");
    }
    if (!(signal_variance >= 0.0)) {
        throw std::invalid_argument("gaussian_mutual_information: signal variance must be non-negative");
    }
    return 0.5 * std::log1p(signal_variance / noise_variance) / std::numbers::ln2;
}

}  // namespace cvqkd
