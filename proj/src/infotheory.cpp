#include "cvqkd/infotheory.hpp"

#include "cvqkd/errors.hpp"
#include "cvqkd/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace cvqkd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// Balance product seen by Bob in `basis`; Eve's is the value at 1/chi.
double bob_balance(double chi, double g, QuadratureBasis basis) {
    return basis == QuadratureBasis::X1 ? chi * g : chi / g;
}

}  // namespace

double info_rate_no_eve(const ProtocolParams& params) noexcept { return params.i0_bits; }

double cloner_information(double alpha, double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("cloner_information: balance must be non-negative");
    }
    if (std::isinf(t)) return 0.0;
    const double at = alpha * t;
    return 0.5 * std::log2((1.0 + at) / (alpha * alpha + at));
}

double info_bob(const ProtocolParams& params, double chi, double g, QuadratureBasis basis) {
    validate(Cloner{chi, g});
    return cloner_information(params.alpha, bob_balance(chi, g, basis));
}

double info_eve(const ProtocolParams& params, double chi, double g, QuadratureBasis basis) {
    validate(Cloner{chi, g});
    return cloner_information(params.alpha, bob_balance(1.0 / chi, g, basis));
}

double mean_photon_number(const ProtocolParams& params) {
    if (!params.symmetric()) {
        throw UnsupportedParameters("mean_photon_number: requires equal squeezing in both bases");
    }
    return (1.0 - params.alpha) / (2.0 * params.alpha);
}

double photon_number(double x, double r) noexcept {
    const double s = std::sinh(r);
    return x * x + s * s;
}

double capacity_from_photons(double mean_n) {
    if (!(mean_n >= 0.0)) {
        throw std::invalid_argument("capacity_from_photons: photon number must be non-negative");
    }
    return std::log2(2.0 * mean_n + 1.0);
}

double key_rate_bound(double i_bob, double i_eve) noexcept { return i_bob - i_eve; }

double snr_security_threshold(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("snr_security_threshold: gamma must be positive");
    // sqrt(1 + gamma) - 1 without cancellation for small gamma.
    return gamma / (std::sqrt(1.0 + gamma) + 1.0);
}

double snr_reduction_intercept_resend(double gamma) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("snr_reduction_intercept_resend: gamma must be positive");
    }
    return 2.0 / (3.0 + gamma);
}

double intercept_resend_difference_variance(const ProtocolParams& params, QuadratureBasis basis) {
    // Right guess: y - x ~ N(0, 2 sigma^2). Wrong guess: y is independent of
    // x with variance 1/(16 sigma_eve^2), so y - x also carries Sigma^2.
    const double right = 2.0 * params.squeezed_variance(basis);
    const double wrong = params.antisqueezed_variance(conjugate(basis)) + params.key_variance(basis);
    return 0.5 * right + 0.5 * wrong;
}

double intercept_resend_conditional_variance(const ProtocolParams& params, QuadratureBasis basis) {
    const double right = 2.0 * params.squeezed_variance(basis);
    const double wrong = params.antisqueezed_variance(conjugate(basis));
    return 0.5 * right + 0.5 * wrong;
}

double basis_averaged_key_rate(const ProtocolParams& params, double chi, double g) {
    const double b1 = info_bob(params, chi, g, QuadratureBasis::X1) -
                      info_eve(params, chi, g, QuadratureBasis::X1);
    const double b2 = info_bob(params, chi, g, QuadratureBasis::X2) -
                      info_eve(params, chi, g, QuadratureBasis::X2);
    return 0.5 * (b1 + b2);
}

InfoReport analytic_report(const ProtocolParams& params, const AttackModel& attack,
                           QuadratureBasis key_basis) {
    validate(attack);
    InfoReport r;
    r.i0_bits = params.i0_bits;
    r.snr_threshold = snr_security_threshold(params.snr);
    std::visit(overloaded{
                   [&](const NoAttack&) {
                       r.i_bob_bits = params.i0_bits;
                       r.i_eve_bits = 0.0;
                   },
                   [&](const InterceptResend&) {
                       r.i_bob_bits = gaussian_mutual_information(
                           params.key_variance(key_basis),
                           intercept_resend_difference_variance(params, key_basis));
                       r.i_eve_bits = 0.5 * params.i0_bits;
                   },
                   [&](const Cloner& c) {
                       r.i_bob_bits = info_bob(params, c.chi, c.g, key_basis);
                       r.i_eve_bits = info_eve(params, c.chi, c.g, conjugate(key_basis));
                   },
               },
               attack);
    r.key_rate_bound_bits = key_rate_bound(r.i_bob_bits, r.i_eve_bits);
    r.secure = r.key_rate_bound_bits > 0.0;
    return r;
}

}  // namespace cvqkd
