#pragma once

#include "cvqkd/rng.hpp"

namespace cvqkd {

// Information quantities throughout the library are in bits.

/// Draw from Normal(mean, variance). Always consumes one standard normal from
/// `rng`, so a zero variance returns `mean` without shifting the stream.
/// Throws std::invalid_argument for negative or NaN variance.
double sample_gaussian(double mean, double variance, Rng& rng);

/// Differential entropy of a Gaussian, 0.5 * log2(2 pi e variance).
double differential_entropy(double variance);

/// Capacity of the additive Gaussian noise channel, 0.5 * log2(1 + S/N).
double gaussian_mutual_information(double signal_variance, double noise_variance);

}  // namespace cvqkd
