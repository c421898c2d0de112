#pragma once

#include "cvqkd/attacks.hpp"
#include "cvqkd/protocol.hpp"

namespace cvqkd {

/// No-eavesdropper rate -log2(alpha) = (r1 + r2) / ln 2.
double info_rate_no_eve(const ProtocolParams& params) noexcept;

/// Information a receiver extracts when the cloner balance product is `t`:
/// 0.5 log2[(1 + alpha t) / (alpha^2 + alpha t)]. Bob in basis 1 sees
/// t = chi g, Bob in basis 2 sees t = chi / g. Eve sees the reciprocal
/// balance, which is where the sum rule I_B + I_E = I0 comes from.
double cloner_information(double alpha, double t);

/// Alice-Bob information under the cloner, in `basis`.
double info_bob(const ProtocolParams& params, double chi, double g, QuadratureBasis basis);

/// Alice-Eve information under the cloner, in `basis`.
double info_eve(const ProtocolParams& params, double chi, double g, QuadratureBasis basis);

/// Mean photon number per key pulse, (1 - alpha) / (2 alpha). Throws
/// UnsupportedParameters unless both quadratures are equally squeezed.
double mean_photon_number(const ProtocolParams& params);

/// Photons in one displaced squeezed state, x^2 + sinh^2 r.
double photon_number(double x, double r) noexcept;

/// log2(2 N + 1).
double capacity_from_photons(double mean_n);

/// I_bob - I_eve. Negative values are returned as-is.
double key_rate_bound(double i_bob, double i_eve) noexcept;

/// Minimum SNR Bob must measure, sqrt(1 + gamma) - 1.
double snr_security_threshold(double gamma);

/// SNR reduction factor of intercept-resend, 2 / (3 + gamma), from the
/// conditional-variance mixture.
double snr_reduction_intercept_resend(double gamma);

/// Noise variance of y - x under intercept-resend as the disclosed-subset
/// estimator sees it: sigma^2 + 1/(32 sigma^2) + Sigma^2 / 2.
double intercept_resend_difference_variance(const ProtocolParams& params, QuadratureBasis basis);

/// Mixture of the conditional outcome variances, sigma^2 [1 + 1/(2 alpha^2)].
double intercept_resend_conditional_variance(const ProtocolParams& params, QuadratureBasis basis);

/// Basis-averaged secret rate under the cloner,
/// 0.5 [(I_1B - I_1E) + (I_2B - I_2E)] = I0 - I_1E - I_2E.
/// Positive exactly when chi < 1, for every g.
double basis_averaged_key_rate(const ProtocolParams& params, double chi, double g);

struct InfoReport {
    double i0_bits = 0.0;
    double i_bob_bits = 0.0;
    double i_eve_bits = 0.0;
    double key_rate_bound_bits = 0.0;
    bool secure = false;
    double snr_threshold = 0.0;
};

/// Analytic report for `attack`, with Bob's information in `key_basis` and
/// Eve's in the conjugate basis.
///
/// Under a cloner the pair satisfies i_bob + i_eve = i0. For intercept-resend
/// Bob's figure is the Gaussian-channel information at the y - x difference
/// variance and Eve's is i0 / 2 (she holds a clean copy in half the rounds).
InfoReport analytic_report(const ProtocolParams& params, const AttackModel& attack,
                           QuadratureBasis key_basis = QuadratureBasis::X1);

}  // namespace cvqkd
