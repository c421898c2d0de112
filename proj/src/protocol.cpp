#include "cvqkd/protocol.hpp"

#include "cvqkd/errors.hpp"
#include "cvqkd/estimation.hpp"
#include "cvqkd/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cvqkd {

std::string_view to_string(QuadratureBasis b) noexcept {
    return b == QuadratureBasis::X1 ? "X1" : "X2";
}

bool ProtocolParams::symmetric(double rel_tol) const noexcept {
    return std::abs(squeezed_var1 - squeezed_var2) <=
           rel_tol * std::max(squeezed_var1, squeezed_var2);
}

ProtocolParams derive_params(double r1, double r2) {
    if (!std::isfinite(r1) || !std::isfinite(r2)) {
        throw std::invalid_argument("derive_params: squeeze parameters must be finite");
    }
    if (r1 + r2 <= 0.0) {
        throw UnusableParameters("derive_params: r1 + r2 <= 0 gives alpha >= 1, no information is processed");
    }
    if (r1 <= 0.0 || r2 <= 0.0) {
        throw std::invalid_argument("derive_params: each squeeze parameter must be positive");
    }
    ProtocolParams p;
    p.r1 = r1;
    p.r2 = r2;
    p.squeezed_var1 = 0.25 * std::exp(-2.0 * r1);
    p.squeezed_var2 = 0.25 * std::exp(-2.0 * r2);
    // Indistinguishability: key + intrinsic variance in one quadrature equals
    // the antisqueezed variance of the other basis' states.
    p.key_var1 = 1.0 / (16.0 * p.squeezed_var2) - p.squeezed_var1;
    p.key_var2 = 1.0 / (16.0 * p.squeezed_var1) - p.squeezed_var2;
    p.alpha = std::exp(-(r1 + r2));
    p.snr = std::expm1(2.0 * (r1 + r2));
    p.i0_bits = (r1 + r2) / std::numbers::ln2;
    return p;
}

ProtocolParams symmetric_params(double r) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("symmetric_params: squeeze parameter must be positive");
    }
    return derive_params(r, r);
}

EncodedKey alice_encode(const ProtocolParams& params, QuadratureBasis basis, Rng& rng) {
    const double x = sample_gaussian(0.0, params.key_variance(basis), rng);
    return {x, StateSpec{basis, x, params.squeezed_variance(basis), params.antisqueezed_variance(basis)}};
}

double measure(const StateSpec& state, QuadratureBasis basis, double added_noise, Rng& rng) {
    if (basis == state.basis) {
        return sample_gaussian(state.displacement, state.squeezed_variance + added_noise, rng);
    }
    return sample_gaussian(0.0, state.antisqueezed_variance + added_noise, rng);
}

double bob_measure(const StateSpec& state, QuadratureBasis bob_basis, double post_channel_noise,
                   Rng& rng) {
    if (!(post_channel_noise >= 0.0)) {
        throw std::invalid_argument("bob_measure: channel noise must be non-negative");
    }
    return measure(state, bob_basis, post_channel_noise, rng);
}

std::vector<SiftedPair> sift(std::span<const TransmissionRecord> records) {
    std::vector<SiftedPair> out;
    out.reserve(records.size() / 2 + 1);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.matched()) out.push_back({i, r.sent_basis, r.x, r.y});
    }
    return out;
}

std::vector<std::size_t> select_disclosed(std::size_t count, double fraction, Rng& rng) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("select_disclosed: fraction must be in [0, 1]");
    }
    const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(count)));
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.uniform_index(count - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

double DisturbanceEstimate::snr_lower() const noexcept {
    if (noise_variance_upper <= 0.0) return std::numeric_limits<double>::infinity();
    return signal_variance / noise_variance_upper;
}

namespace {

DisturbanceEstimate estimate_from(std::span<const SiftedPair> pairs, const ProtocolParams& params,
                                  double z) {
    if (pairs.size() < 2) {
        throw InsufficientData("estimate_disturbance: need at least 2 disclosed pairs, got " +
                               std::to_string(pairs.size()));
    }
    double signal = 0.0;
    double intrinsic = 0.0;
    for (const auto& p : pairs) {
        signal += params.key_variance(p.basis);
        intrinsic += params.squeezed_variance(p.basis);
    }
    const auto n = static_cast<double>(pairs.size());
    signal /= n;
    intrinsic /= n;

    const NoiseSnr ns = empirical_noise_and_snr(pairs, signal);
    DisturbanceEstimate e;
    e.samples = ns.samples;
    e.noise_variance = ns.noise_variance;
    e.signal_variance = signal;
    e.snr = ns.snr;
    const double half_width = z * ns.noise_variance * std::sqrt(2.0 / (n - 1.0));
    e.noise_variance_lower = std::max(0.0, ns.noise_variance - half_width);
    e.noise_variance_upper = ns.noise_variance + half_width;
    e.suspicious = ns.noise_variance == 0.0 || e.noise_variance_upper < intrinsic;
    return e;
}

}  // namespace

DisturbanceEstimate estimate_disturbance(std::span<const SiftedPair> disclosed,
                                         const ProtocolParams& params, double z) {
    return estimate_from(disclosed, params, z);
}

DisturbanceEstimate estimate_disturbance(std::span<const SiftedPair> disclosed,
                                         const ProtocolParams& params, QuadratureBasis basis,
                                         double z) {
    std::vector<SiftedPair> subset;
    for (const auto& p : disclosed) {
        if (p.basis == basis) subset.push_back(p);
    }
    return estimate_from(subset, params, z);
}

}  // namespace cvqkd
