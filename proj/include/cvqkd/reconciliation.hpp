#pragma once

#include "cvqkd/quantizer.hpp"
#include "cvqkd/rng.hpp"
#include "cvqkd/transcript.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cvqkd {

struct ReconcileOptions {
    /// Standard deviation, in symbol units, of Bob's symbol around Alice's.
    /// When set, noisy low planes whose expected Cascade cost is at least one
    /// bit per bit are disclosed outright, and Cascade block sizes follow the
    /// predicted error rate. When unset every plane goes through Cascade
    /// sized for `assumed_error_rate`.
    std::optional<double> residual_std;
    double assumed_error_rate = 0.01;
    /// Expected Cascade leakage per bit is modelled as this factor times the
    /// binary entropy of the error rate.
    double cascade_inefficiency = 1.25;
    int cascade_passes = 4;
    /// Extra Cascade passes allowed after a failed audit before the plane is
    /// disclosed in the clear.
    int max_extra_passes = 16;
};

struct PlaneReport {
    int plane = 0;
    double predicted_error_rate = 0.0;
    std::size_t initial_errors = 0;  ///< diagnostic only; not known to either party
    std::size_t corrections = 0;
    bool disclosed = false;
    int cascade_passes = 0;
    std::uint64_t leaked_bits = 0;
};

struct ReconcileResult {
    QuantizedKey corrected;  ///< Bob's symbols after reconciliation, equal to Alice's
    std::uint64_t leakage_bits = 0;
    std::uint64_t audit_bits = 0;
    std::size_t corrections = 0;
    std::vector<PlaneReport> planes;
    Transcript transcript;
};

/// Interactive reconciliation of Bob's symbols onto Alice's, one two's
/// complement bit plane at a time from the least significant up.
///
/// For each plane Bob guesses Alice's bit by coset decoding: among the
/// symbols that agree with the planes already reconciled he takes the one
/// nearest his own value. Each plane is then either disclosed, or checked with
/// a 64-parity random-subset audit and corrected with Cascade (block parities
/// plus binary search, re-auditing until the audit passes). `rng` is the
/// public randomness for permutations and audit subsets.
///
/// Throws std::invalid_argument on length or quantizer mismatch.
ReconcileResult reconcile(const QuantizedKey& alice, const QuantizedKey& bob, Rng& rng,
                          const ReconcileOptions& options = {});

/// Predicted probability that coset decoding gets bit `plane` wrong when Bob's
/// value is off by N(0, residual_std^2) symbols.
double predicted_plane_error_rate(int plane, double residual_std);

}  // namespace cvqkd
