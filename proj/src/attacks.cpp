#include "cvqkd/attacks.hpp"

#include "cvqkd/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cvqkd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

QuadratureBasis random_basis(Rng& rng) {
    return rng.coin() ? QuadratureBasis::X2 : QuadratureBasis::X1;
}

}  // namespace

std::string_view attack_name(const AttackModel& attack) noexcept {
    return std::visit(overloaded{
                          [](const NoAttack&) { return std::string_view{"none"}; },
                          [](const InterceptResend&) { return std::string_view{"intercept_resend"}; },
                          [](const Cloner&) { return std::string_view{"cloner"}; },
                      },
                      attack);
}

void validate(const AttackModel& attack) {
    if (const auto* c = std::get_if<Cloner>(&attack)) {
        if (!(c->chi > 0.0) || !std::isfinite(c->chi) || !(c->g > 0.0) || !std::isfinite(c->g)) {
            throw std::invalid_argument("cloner parameters chi and g must be positive and finite");
        }
    }
}

CloneNoise cloner_noise(const ProtocolParams& params, double chi, double g) {
    validate(Cloner{chi, g});
    const double a1 = params.squeezed_var1 / params.alpha;
    const double a2 = params.squeezed_var2 / params.alpha;
    // Eve's basis-2 error scales with sigma2^2, not sigma1^2; only then does
    // her basis-2 outcome variance reduce to [1 + 1/(chi g alpha)] sigma2^2.
    return CloneNoise{
        .bob1 = chi * g * a1,
        .bob2 = chi / g * a2,
        .eve1 = g / chi * a1,
        .eve2 = 1.0 / (chi * g) * a2,
    };
}

ClonedOutcomes apply_cloner(double x, QuadratureBasis sent_basis, const ProtocolParams& params,
                            const CloneNoise& noise, Rng& rng) {
    const double intrinsic = sample_gaussian(0.0, params.squeezed_variance(sent_basis), rng);
    const double bob_err = sample_gaussian(0.0, noise.bob(sent_basis), rng);
    const double eve_err = sample_gaussian(0.0, noise.eve(sent_basis), rng);
    return {x + intrinsic + bob_err, x + intrinsic + eve_err};
}

namespace {

// Eve measures `eve_basis`, then prepares a fresh squeezed state in that basis
// centered on her outcome.
std::pair<double, StateSpec> measure_and_resend(const StateSpec& sent, QuadratureBasis eve_basis,
                                                const ProtocolParams& params, Rng& rng) {
    const double y_eve = measure(sent, eve_basis, 0.0, rng);
    return {y_eve, StateSpec{eve_basis, y_eve, params.squeezed_variance(eve_basis),
                             params.antisqueezed_variance(eve_basis)}};
}

}  // namespace

InterceptResendOutcome intercept_resend(double x, QuadratureBasis sent_basis,
                                        const ProtocolParams& params, Rng& rng) {
    const StateSpec sent{sent_basis, x, params.squeezed_variance(sent_basis),
                         params.antisqueezed_variance(sent_basis)};
    const QuadratureBasis eve_basis = random_basis(rng);
    const auto [y_eve, resent] = measure_and_resend(sent, eve_basis, params, rng);
    const double y_bob = measure(resent, sent_basis, 0.0, rng);
    return {y_bob, eve_basis, y_eve};
}

TransmissionRecord transmit(const ProtocolParams& params, const AttackModel& attack,
                            QuadratureBasis sent_basis, QuadratureBasis bob_basis, Rng& rng) {
    const EncodedKey enc = alice_encode(params, sent_basis, rng);
    TransmissionRecord rec;
    rec.sent_basis = sent_basis;
    rec.x = enc.x;
    rec.bob_basis = bob_basis;

    std::visit(overloaded{
                   [&](const NoAttack&) { rec.y = bob_measure(enc.state, bob_basis, 0.0, rng); },
                   [&](const InterceptResend&) {
                       const QuadratureBasis eve_basis = random_basis(rng);
                       const auto [y_eve, resent] = measure_and_resend(enc.state, eve_basis, params, rng);
                       rec.eve_basis = eve_basis;
                       rec.eve_outcome = y_eve;
                       rec.y = bob_measure(resent, bob_basis, 0.0, rng);
                   },
                   [&](const Cloner& c) {
                       const CloneNoise noise = cloner_noise(params, c.chi, c.g);
                       // Eve waits for the basis announcement, so she always
                       // measures the sent basis.
                       rec.eve_basis = sent_basis;
                       if (bob_basis == sent_basis) {
                           const auto out = apply_cloner(enc.x, sent_basis, params, noise, rng);
                           rec.y = out.bob;
                           rec.eve_outcome = out.eve;
                       } else {
                           rec.y = bob_measure(enc.state, bob_basis, noise.bob(bob_basis), rng);
                           rec.eve_outcome = measure(enc.state, sent_basis, noise.eve(sent_basis), rng);
                       }
                   },
               },
               attack);
    return rec;
}

std::vector<TransmissionRecord> simulate_rounds(const ProtocolParams& params,
                                                const AttackModel& attack, std::size_t rounds,
                                                std::uint64_t seed, const RoundOptions& options) {
    validate(attack);
    std::vector<TransmissionRecord> out(rounds);
    const Rng root(seed);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng = root.substream(i);
            const QuadratureBasis sent = options.sent_basis ? *options.sent_basis : random_basis(rng);
            const QuadratureBasis bob = options.bob_basis ? *options.bob_basis : random_basis(rng);
            out[i] = transmit(params, attack, sent, bob, rng);
        }
    };

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, threads);
    constexpr std::size_t kMinChunk = 16384;
    const auto chunks = std::min<std::size_t>(threads, std::max<std::size_t>(1, rounds / kMinChunk));
    if (chunks <= 1) {
        work(0, rounds);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(chunks);
        const std::size_t per = (rounds + chunks - 1) / chunks;
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t begin = c * per;
            const std::size_t end = std::min(rounds, begin + per);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
    }
    return out;
}

}  // namespace cvqkd
