#include "cvqkd/pipeline.hpp"

#include "cvqkd/errors.hpp"
#include "cvqkd/estimation.hpp"
#include "cvqkd/gaussian.hpp"
#include "cvqkd/privacy_amplification.hpp"
#include "cvqkd/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cvqkd {

void PipelineConfig::validate() const {
    if (rounds == 0) throw std::invalid_argument("rounds must be positive");
    if (!(disclose_fraction > 0.0 && disclose_fraction < 1.0)) {
        throw std::invalid_argument("disclose_fraction must be in (0, 1)");
    }
    if (quantizer_n < 1) throw std::invalid_argument("quantizer_n must be at least 1");
    if (!(confidence_z >= 0.0) || !std::isfinite(confidence_z)) {
        throw std::invalid_argument("confidence_z must be non-negative and finite");
    }
    cvqkd::validate(attack);
}

double infer_eve_information(const ProtocolParams& params, double measured_snr) {
    if (!(measured_snr > 0.0)) return params.i0_bits;
    // Bob's SNR under the cloner is gamma / (1 + t / alpha).
    const double t = std::max(0.0, params.alpha * (params.snr / measured_snr - 1.0));
    if (t == 0.0) return 0.0;
    return cloner_information(params.alpha, 1.0 / t);
}

namespace {

enum Stream : std::uint64_t { kRounds = 1, kDisclose = 2, kReconcile = 3, kHash = 4 };

double bob_information_from_snr(const ProtocolParams& params, double measured_snr) {
    if (!(measured_snr > 0.0)) return 0.0;
    const double t = std::max(0.0, params.alpha * (params.snr / measured_snr - 1.0));
    return cloner_information(params.alpha, t);
}

InfoReport empirical_report(const PipelineResult& r) {
    InfoReport rep;
    const ProtocolParams& p = r.params;
    rep.i0_bits = p.i0_bits;
    rep.snr_threshold = r.snr_threshold;
    const DisturbanceEstimate& bob = r.basis1 ? *r.basis1 : r.pooled;
    rep.i_bob_bits = empirical_mi_gaussian(bob.snr);

    // Eve's Gaussian-channel information on basis-2 key rounds, from the
    // simulator's record of her outcomes.
    RunningMoments eve;
    for (const auto& rec : r.records) {
        if (rec.matched() && rec.sent_basis == QuadratureBasis::X2 && rec.eve_outcome) {
            eve.add(*rec.eve_outcome - rec.x);
        }
    }
    if (eve.count() >= 2 && eve.variance() > 0.0) {
        rep.i_eve_bits = empirical_mi_gaussian(p.key_var2 / eve.variance());
    }
    rep.key_rate_bound_bits = key_rate_bound(rep.i_bob_bits, rep.i_eve_bits);
    rep.secure = rep.key_rate_bound_bits > 0.0;
    return rep;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    config.validate();
    PipelineResult out;
    out.params = derive_params(config.r1, config.r2);
    const ProtocolParams& params = out.params;
    out.snr_threshold = snr_security_threshold(params.snr);
    out.analytic = analytic_report(params, config.attack);

    const Rng root(config.seed);
    out.records = simulate_rounds(params, config.attack, config.rounds, root.substream(kRounds).next_u64());
    const std::vector<SiftedPair> sifted = sift(out.records);
    out.sifted_rounds = sifted.size();

    Rng disclose_rng = root.substream(kDisclose);
    const std::vector<std::size_t> disclosed_idx = select_disclosed(sifted.size(), config.disclose_fraction, disclose_rng);
    out.disclosed.assign(out.records.size(), 0);
    std::vector<SiftedPair> disclosed;
    std::vector<std::uint8_t> is_disclosed(sifted.size(), 0);
    for (std::size_t i : disclosed_idx) {
        disclosed.push_back(sifted[i]);
        is_disclosed[i] = 1;
        out.disclosed[sifted[i].round] = 1;
    }
    const auto in_basis = [&](QuadratureBasis b) {
        return static_cast<std::size_t>(std::count_if(disclosed.begin(), disclosed.end(),
                                                      [b](const SiftedPair& p) { return p.basis == b; }));
    };
    const std::size_t n1 = in_basis(QuadratureBasis::X1);
    const std::size_t n2 = in_basis(QuadratureBasis::X2);
    if (n1 < kMinDisclosedPerBasis || n2 < kMinDisclosedPerBasis) {
        throw InsufficientData("run_pipeline: too few disclosed pairs per basis (" + std::to_string(n1) +
                               ", " + std::to_string(n2) + "); increase rounds or disclose_fraction");
    }

    out.pooled = estimate_disturbance(disclosed, params, config.confidence_z);
    out.basis1 = estimate_disturbance(disclosed, params, QuadratureBasis::X1, config.confidence_z);
    out.basis2 = estimate_disturbance(disclosed, params, QuadratureBasis::X2, config.confidence_z);
    out.empirical = empirical_report(out);

    const double snr_low = std::min(out.basis1->snr_lower(), out.basis2->snr_lower());
    if (out.basis1->suspicious || out.basis2->suspicious) {
        out.abort_reason = "disclosed noise is below the intrinsic squeezed variance";
        return out;
    }
    if (snr_low <= out.snr_threshold) {
        out.abort_reason = "measured SNR at or below the security threshold";
        return out;
    }

    KeyMaterial& key = out.key;
    key.eve_info_estimate = std::max(infer_eve_information(params, out.basis1->snr_lower()),
                                     infer_eve_information(params, out.basis2->snr_lower()));
    key.i_bob_measured_bits = std::min(bob_information_from_snr(params, out.basis1->snr_lower()),
                                       bob_information_from_snr(params, out.basis2->snr_lower()));

    // Key symbols: sifted rounds that were not disclosed. Bob quantizes his
    // minimum mean-square estimate of x rather than y itself.
    std::vector<double> alice_values;
    std::vector<double> bob_values;
    double residual_var = 0.0;
    for (QuadratureBasis b : {QuadratureBasis::X1, QuadratureBasis::X2}) {
        const DisturbanceEstimate& e = b == QuadratureBasis::X1 ? *out.basis1 : *out.basis2;
        const double sig = params.key_variance(b);
        residual_var = std::max(residual_var, sig * e.noise_variance / (sig + e.noise_variance));
    }
    for (std::size_t i = 0; i < sifted.size(); ++i) {
        if (is_disclosed[i]) continue;
        const SiftedPair& p = sifted[i];
        const DisturbanceEstimate& e = p.basis == QuadratureBasis::X1 ? *out.basis1 : *out.basis2;
        const double sig = params.key_variance(p.basis);
        alice_values.push_back(p.x);
        bob_values.push_back(p.y * sig / (sig + e.noise_variance));
    }
    key.symbols = alice_values.size();

    QuantizedKey alice_q = quantize(alice_values, config.quantizer_n);
    QuantizedKey bob_q = quantize(bob_values, config.quantizer_n);
    const double n = config.quantizer_n;
    ReconcileOptions options;
    // Both parties' bin centres add a uniform quantization error.
    options.residual_std = std::sqrt(n * n * residual_var + 1.0 / 6.0);
    Rng reconcile_rng = root.substream(kReconcile);
    ReconcileResult rec = reconcile(alice_q, bob_q, reconcile_rng, options);

    key.bits_per_symbol = rec.corrected.bits_per_symbol;
    key.alice_entropy_bits = symbol_entropy(alice_q.symbols);
    key.reconciled_bits = serialize_symbols(alice_q.symbols, key.bits_per_symbol);
    key.leakage_bits = rec.leakage_bits;
    key.transcript = std::move(rec.transcript);
    key.planes = std::move(rec.planes);
    key.hash_seed = root.substream(kHash).next_u64();

    AmplificationInputs amp;
    amp.symbols = key.symbols;
    amp.alice_entropy_bits = key.alice_entropy_bits;
    amp.i_bob_bits = key.i_bob_measured_bits;
    amp.eve_info_bits = key.eve_info_estimate;
    amp.leakage_bits = key.leakage_bits;
    amp.security_margin = config.security_margin;
    AmplifiedKey amplified = privacy_amplify(key.reconciled_bits, amp, key.hash_seed);
    if (amplified.aborted) {
        out.abort_reason = "no secret length left after reconciliation leakage and privacy amplification";
        return out;
    }
    // Bob hashes his own corrected string with the same public seed.
    const BitString bob_reconciled = serialize_symbols(rec.corrected.symbols, key.bits_per_symbol);
    if (privacy_amplify(bob_reconciled, amp, key.hash_seed).key != amplified.key) {
        out.abort_reason = "reconciled keys differ after the final audit";
        return out;
    }
    key.final_key = std::move(amplified.key);
    out.status = PipelineStatus::Ok;
    return out;
}

}  // namespace cvqkd
