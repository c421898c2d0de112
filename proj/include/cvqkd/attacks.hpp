#pragma once

#include "cvqkd/protocol.hpp"
#include "cvqkd/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace cvqkd {

struct NoAttack {};

/// Eve measures a random quadrature and resends a squeezed state centered on
/// her outcome.
struct InterceptResend {};

/// Asymmetric Gaussian cloner. `chi` balances Bob's error against Eve's,
/// `g` balances quadrature 1 against quadrature 2.
struct Cloner {
    double chi = 1.0;
    double g = 1.0;
};

using AttackModel = std::variant<NoAttack, InterceptResend, Cloner>;

std::string_view attack_name(const AttackModel& attack) noexcept;

/// Throws std::invalid_argument for a cloner with non-positive or non-finite
/// parameters.
void validate(const AttackModel& attack);

/// Cloning-induced error variances added to Bob's and Eve's quadratures.
struct CloneNoise {
    double bob1 = 0.0;
    double bob2 = 0.0;
    double eve1 = 0.0;
    double eve2 = 0.0;

    double bob(QuadratureBasis b) const noexcept { return b == QuadratureBasis::X1 ? bob1 : bob2; }
    double eve(QuadratureBasis b) const noexcept { return b == QuadratureBasis::X1 ? eve1 : eve2; }
};

/// Error variances of the cloner saturating both no-cloning relations
/// bob1 * eve2 = bob2 * eve1 = 1/16.
CloneNoise cloner_noise(const ProtocolParams& params, double chi, double g);

struct ClonedOutcomes {
    double bob;
    double eve;
};

/// Bob and Eve both measure the sent basis on their clones. The intrinsic
/// fluctuation of the squeezed state is shared; the cloning errors are
/// independent.
ClonedOutcomes apply_cloner(double x, QuadratureBasis sent_basis, const ProtocolParams& params,
                            const CloneNoise& noise, Rng& rng);

struct InterceptResendOutcome {
    double bob;
    QuadratureBasis eve_basis;
    double eve;
};

/// One intercept-resend round with Bob measuring the sent basis.
InterceptResendOutcome intercept_resend(double x, QuadratureBasis sent_basis,
                                        const ProtocolParams& params, Rng& rng);

/// Full round through the channel: Alice encodes in `sent_basis`, the attack
/// acts, Bob measures in `bob_basis`.
TransmissionRecord transmit(const ProtocolParams& params, const AttackModel& attack,
                            QuadratureBasis sent_basis, QuadratureBasis bob_basis, Rng& rng);

struct RoundOptions {
    std::optional<QuadratureBasis> sent_basis;  ///< fixed basis instead of a coin flip
    std::optional<QuadratureBasis> bob_basis;   ///< fixed basis instead of a coin flip
    unsigned threads = 0;                       ///< 0 selects hardware concurrency
};

/// Simulates `rounds` rounds. Round i draws from substream i of `seed`, so the
/// output does not depend on the thread count.
std::vector<TransmissionRecord> simulate_rounds(const ProtocolParams& params,
                                                const AttackModel& attack, std::size_t rounds,
                                                std::uint64_t seed, const RoundOptions& options = {});

}  // namespace cvqkd
