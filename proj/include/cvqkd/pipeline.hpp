#pragma once

#include "cvqkd/attacks.hpp"
#include "cvqkd/bitstring.hpp"
#include "cvqkd/infotheory.hpp"
#include "cvqkd/protocol.hpp"
#include "cvqkd/reconciliation.hpp"
#include "cvqkd/transcript.hpp"

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace cvqkd {

struct PipelineConfig {
    double r1 = std::numbers::ln2 / 2.0;
    double r2 = std::numbers::ln2 / 2.0;
    AttackModel attack = NoAttack{};
    std::size_t rounds = 100'000;
    double disclose_fraction = 0.1;
    int quantizer_n = 4;
    std::uint64_t seed = 1;
    std::uint64_t security_margin = 32;
    /// Half-width, in standard errors, of the noise-variance confidence
    /// interval used for the security decision.
    double confidence_z = 3.0;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// Smallest number of disclosed pairs per basis the pipeline accepts.
inline constexpr std::size_t kMinDisclosedPerBasis = 2;

struct KeyMaterial {
    std::size_t symbols = 0;  ///< sifted, undisclosed rounds that form the key
    int bits_per_symbol = 0;
    double alice_entropy_bits = 0.0;  ///< per symbol
    BitString reconciled_bits;
    std::uint64_t leakage_bits = 0;
    double i_bob_measured_bits = 0.0;  ///< per symbol, from the conservative SNR
    double eve_info_estimate = 0.0;    ///< per symbol
    BitString final_key;
    std::uint64_t hash_seed = 0;
    Transcript transcript;
    std::vector<PlaneReport> planes;
};

enum class PipelineStatus { Ok, Abort };

struct PipelineResult {
    ProtocolParams params;
    PipelineStatus status = PipelineStatus::Abort;
    std::string abort_reason;

    std::vector<TransmissionRecord> records;
    std::vector<std::uint8_t> disclosed;  ///< per round, 1 if the round was disclosed
    std::size_t sifted_rounds = 0;

    DisturbanceEstimate pooled;
    std::optional<DisturbanceEstimate> basis1;
    std::optional<DisturbanceEstimate> basis2;
    double snr_threshold = 0.0;

    InfoReport analytic;
    InfoReport empirical;
    KeyMaterial key;

    bool ok() const noexcept { return status == PipelineStatus::Ok; }
};

/// Conservative Eve information inferred from a measured SNR, assuming the
/// cloner attack: solve Bob's cloner information for the balance product t,
/// then evaluate Eve's information in the conjugate basis at 1 / t.
double infer_eve_information(const ProtocolParams& params, double measured_snr);

/// Encode, transmit, measure, sift, estimate the disturbance, decide on
/// security, quantize, reconcile and amplify. Aborts (empty key) when the
/// lower confidence bound of Bob's SNR in either basis is at or below
/// sqrt(1 + gamma) - 1, or when nothing is left after privacy amplification.
///
/// Throws InsufficientData when fewer than kMinDisclosedPerBasis pairs per
/// basis are disclosed.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace cvqkd
