#pragma once

#include "cvqkd/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cvqkd {

/// Which quadrature carries the key: X1 (amplitude) or X2 (phase).
enum class QuadratureBasis : std::uint8_t { X1 = 1, X2 = 2 };

constexpr QuadratureBasis conjugate(QuadratureBasis b) noexcept {
    return b == QuadratureBasis::X1 ? QuadratureBasis::X2 : QuadratureBasis::X1;
}

constexpr int basis_number(QuadratureBasis b) noexcept { return static_cast<int>(b); }

std::string_view to_string(QuadratureBasis b) noexcept;

/// Squeeze parameters and everything the protocol derives from them.
///
/// Variances are in units where the vacuum quadrature variance is 1/4.
struct ProtocolParams {
    double r1 = 0.0;
    double r2 = 0.0;
    double squeezed_var1 = 0.0;  ///< intrinsic X1 variance of a basis-1 state
    double squeezed_var2 = 0.0;  ///< intrinsic X2 variance of a basis-2 state
    double key_var1 = 0.0;       ///< variance of the Gaussian key in basis 1
    double key_var2 = 0.0;       ///< variance of the Gaussian key in basis 2
    double alpha = 1.0;          ///< 4 sigma1 sigma2 = exp(-(r1 + r2))
    double snr = 0.0;            ///< key_var / squeezed_var, identical in both bases
    double i0_bits = 0.0;        ///< -log2(alpha)

    double squeezed_variance(QuadratureBasis b) const noexcept {
        return b == QuadratureBasis::X1 ? squeezed_var1 : squeezed_var2;
    }
    double key_variance(QuadratureBasis b) const noexcept {
        return b == QuadratureBasis::X1 ? key_var1 : key_var2;
    }
    /// Variance of the unsqueezed quadrature of a state squeezed in `b`,
    /// 1/(16 sigma_b^2) for a minimum-uncertainty state.
    double antisqueezed_variance(QuadratureBasis b) const noexcept {
        return 1.0 / (16.0 * squeezed_variance(b));
    }
    bool symmetric(double rel_tol = 1e-12) const noexcept;
};

/// Throws UnusableParameters if r1 + r2 <= 0 (alpha >= 1) and
/// std::invalid_argument for any other non-positive or non-finite input.
ProtocolParams derive_params(double r1, double r2);

/// Equal squeezing on both quadratures.
ProtocolParams symmetric_params(double r);

/// Gaussian description of a displaced squeezed state: mean `displacement` in
/// quadrature `basis` with variance `squeezed_variance`, zero mean in the
/// conjugate quadrature with variance `antisqueezed_variance`.
struct StateSpec {
    QuadratureBasis basis = QuadratureBasis::X1;
    double displacement = 0.0;
    double squeezed_variance = 0.25;
    double antisqueezed_variance = 0.25;
};

struct EncodedKey {
    double x;
    StateSpec state;
};

/// Alice draws x ~ N(0, key_variance(basis)) and prepares the matching state.
EncodedKey alice_encode(const ProtocolParams& params, QuadratureBasis basis, Rng& rng);

/// Homodyne measurement of `state` in `basis`, with `added_noise` extra
/// variance from the channel.
double measure(const StateSpec& state, QuadratureBasis basis, double added_noise, Rng& rng);

/// Bob's measurement. `post_channel_noise` is the attack-induced variance in
/// Bob's basis (0 for an untapped line).
double bob_measure(const StateSpec& state, QuadratureBasis bob_basis, double post_channel_noise,
                   Rng& rng);

/// One protocol round.
struct TransmissionRecord {
    QuadratureBasis sent_basis = QuadratureBasis::X1;
    double x = 0.0;
    QuadratureBasis bob_basis = QuadratureBasis::X1;
    double y = 0.0;
    std::optional<QuadratureBasis> eve_basis;
    std::optional<double> eve_outcome;

    bool matched() const noexcept { return sent_basis == bob_basis; }
};

/// A matched-basis round kept after sifting.
struct SiftedPair {
    std::size_t round = 0;
    QuadratureBasis basis = QuadratureBasis::X1;
    double x = 0.0;
    double y = 0.0;
};

/// Keeps matched-basis rounds, in order.
std::vector<SiftedPair> sift(std::span<const TransmissionRecord> records);

/// Indices (sorted) of a uniformly random subset of exactly
/// round(fraction * count) elements of [0, count).
std::vector<std::size_t> select_disclosed(std::size_t count, double fraction, Rng& rng);

/// Noise estimate from publicly disclosed (x, y) pairs.
struct DisturbanceEstimate {
    std::size_t samples = 0;
    double noise_variance = 0.0;  ///< unbiased sample variance of y - x
    double noise_variance_lower = 0.0;
    double noise_variance_upper = 0.0;
    double signal_variance = 0.0;  ///< analytic key variance of the disclosed rounds
    double snr = 0.0;              ///< signal_variance / noise_variance, +inf if noise is 0
    /// Noise below the intrinsic squeezed variance: no honest channel produces this.
    bool suspicious = false;

    /// SNR evaluated at the upper end of the noise confidence interval.
    double snr_lower() const noexcept;
};

/// Sample variance of y - x over the disclosed pairs, with a normal-theory
/// confidence interval of half-width `z` standard errors. Pairs from both
/// bases may be mixed; the signal variance is then the count-weighted mean.
/// Throws InsufficientData for fewer than two pairs.
DisturbanceEstimate estimate_disturbance(std::span<const SiftedPair> disclosed,
                                         const ProtocolParams& params, double z = 1.96);

/// Same, restricted to the pairs of one basis.
DisturbanceEstimate estimate_disturbance(std::span<const SiftedPair> disclosed,
                                         const ProtocolParams& params, QuadratureBasis basis,
                                         double z = 1.96);

}  // namespace cvqkd
