#include "cvqkd/reconciliation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace cvqkd {

namespace {

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Symbol congruent to `low` modulo 2^plane that is nearest to `estimate`,
// restricted to [lo, hi].
std::int64_t coset_decode(std::int64_t estimate, std::uint64_t low, int plane, std::int64_t lo,
                          std::int64_t hi) {
    if (plane == 0) return std::clamp(estimate, lo, hi);
    const std::int64_t step = std::int64_t{1} << plane;
    const auto base = static_cast<std::int64_t>(low);
    std::int64_t candidate = base + step * floor_div(estimate - base + step / 2, step);
    while (candidate > hi) candidate -= step;
    while (candidate < lo) candidate += step;
    return candidate;
}

// One bit plane being reconciled. Alice's bits are only read through the
// parity queries, each of which is written to the transcript.
class PlaneSession {
public:
    PlaneSession(const std::vector<std::uint8_t>& alice, std::vector<std::uint8_t>& bob, Rng& rng,
                 Transcript& transcript)
        : alice_(alice), bob_(bob), rng_(rng), transcript_(transcript) {}

    bool audit(std::uint32_t plane) {
        std::uint64_t alice_acc = 0;
        std::uint64_t bob_acc = 0;
        for (std::size_t i = 0; i < alice_.size(); ++i) {
            const std::uint64_t subset_mask = rng_.next_u64();
            if (alice_[i]) alice_acc ^= subset_mask;
            if (bob_[i]) bob_acc ^= subset_mask;
        }
        BitString payload(64);
        for (int b = 0; b < 64; ++b) payload.set(b, (alice_acc >> b) & 1u);
        transcript_.append(StageTag::Audit, plane, std::move(payload));
        return alice_acc == bob_acc;
    }

    void disclose(std::uint32_t plane) {
        BitString payload(alice_.size());
        for (std::size_t i = 0; i < alice_.size(); ++i) {
            payload.set(i, alice_[i]);
            if (bob_[i] != alice_[i]) ++corrections_;
        }
        transcript_.append(StageTag::PlaneDisclosure, plane, std::move(payload));
        std::copy(alice_.begin(), alice_.end(), bob_.begin());
    }

    void cascade_pass(std::size_t block_size) {
        const std::size_t n = alice_.size();
        Pass pass;
        pass.block = std::max<std::size_t>(1, std::min(block_size, n));
        pass.order.resize(n);
        std::iota(pass.order.begin(), pass.order.end(), std::uint32_t{0});
        if (!passes_.empty()) {
            for (std::size_t i = n; i > 1; --i) {
                std::swap(pass.order[i - 1], pass.order[rng_.uniform_index(i)]);
            }
        }
        pass.position.resize(n);
        for (std::size_t p = 0; p < n; ++p) pass.position[pass.order[p]] = static_cast<std::uint32_t>(p);

        const std::size_t blocks = (n + pass.block - 1) / pass.block;
        pass.alice_parity.resize(blocks);
        BitString alice_msg(blocks);
        BitString bob_msg(blocks);
        const auto pass_index = static_cast<std::uint32_t>(passes_.size());
        passes_.push_back(std::move(pass));
        const Pass& cur = passes_.back();

        std::deque<std::pair<std::size_t, std::size_t>> queue;
        for (std::size_t b = 0; b < blocks; ++b) {
            const auto [lo, hi] = block_range(cur, b);
            const std::uint8_t pa = parity(alice_, cur, lo, hi);
            passes_.back().alice_parity[b] = pa;
            alice_msg.set(b, pa);
            const bool mismatch = pa != parity(bob_, cur, lo, hi);
            bob_msg.set(b, mismatch);
            if (mismatch) queue.emplace_back(pass_index, b);
        }
        transcript_.append(StageTag::BlockParity, pass_index, std::move(alice_msg));
        transcript_.append(StageTag::MismatchReport, pass_index, std::move(bob_msg));

        while (!queue.empty()) {
            const auto [q, b] = queue.front();
            queue.pop_front();
            const Pass& pass_q = passes_[q];
            const auto [lo, hi] = block_range(pass_q, b);
            if (parity(bob_, pass_q, lo, hi) == pass_q.alice_parity[b]) continue;
            const std::uint32_t fixed = bisect(pass_q, b, lo, hi);
            bob_[fixed] ^= 1u;
            ++corrections_;
            // The flip toggles the parity of the block holding `fixed` in
            // every other pass; those that now disagree get searched too.
            for (std::size_t other = 0; other < passes_.size(); ++other) {
                if (other == q) continue;
                const Pass& po = passes_[other];
                queue.emplace_back(other, po.position[fixed] / po.block);
            }
        }
    }

    std::size_t corrections() const noexcept { return corrections_; }
    int passes_run() const noexcept { return static_cast<int>(passes_.size()); }

private:
    struct Pass {
        std::vector<std::uint32_t> order;     // position -> bit index
        std::vector<std::uint32_t> position;  // bit index -> position
        std::size_t block = 1;
        std::vector<std::uint8_t> alice_parity;
    };

    std::pair<std::size_t, std::size_t> block_range(const Pass& p, std::size_t b) const {
        const std::size_t lo = b * p.block;
        return {lo, std::min(alice_.size(), lo + p.block)};
    }

    static std::uint8_t parity(const std::vector<std::uint8_t>& bits, const Pass& p, std::size_t lo,
                               std::size_t hi) {
        std::uint8_t acc = 0;
        for (std::size_t i = lo; i < hi; ++i) acc ^= bits[p.order[i]];
        return acc;
    }

    // Binary search for one differing bit in a block of odd error parity.
    std::uint32_t bisect(const Pass& p, std::size_t block, std::size_t lo, std::size_t hi) {
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const std::uint8_t pa = parity(alice_, p, lo, mid);
            BitString msg(1);
            msg.set(0, pa);
            transcript_.append(StageTag::Bisect, static_cast<std::uint32_t>(block), std::move(msg));
            if (pa != parity(bob_, p, lo, mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return p.order[lo];
    }

    const std::vector<std::uint8_t>& alice_;
    std::vector<std::uint8_t>& bob_;
    Rng& rng_;
    Transcript& transcript_;
    std::vector<Pass> passes_;
    std::size_t corrections_ = 0;
};

std::size_t initial_block_size(double error_rate, std::size_t n) {
    const double p = std::max(error_rate, 1.0 / static_cast<double>(std::max<std::size_t>(n, 1)));
    const auto k = static_cast<std::size_t>(std::ceil(0.73 / p));
    return std::clamp<std::size_t>(k, 2, std::max<std::size_t>(n, 2));
}

}  // namespace

double predicted_plane_error_rate(int plane, double residual_std) {
    if (!(residual_std > 0.0)) return 0.0;
    const double step = std::ldexp(1.0, plane);
    // Decoding lands m cosets away with probability mass of the offset in
    // ((m - 1/2) step, (m + 1/2) step); odd m flips the bit.
    double p = 0.0;
    for (int m = 1;; m += 2) {
        const double a = (m - 0.5) * step / residual_std;
        if (a > 40.0) break;
        const double b = (m + 0.5) * step / residual_std;
        p += 2.0 * (normal_cdf(b) - normal_cdf(a));
    }
    return std::min(p, 0.5);
}

ReconcileResult reconcile(const QuantizedKey& alice, const QuantizedKey& bob, Rng& rng,
                          const ReconcileOptions& options) {
    if (alice.symbols.size() != bob.symbols.size()) {
        throw std::invalid_argument("reconcile: symbol strings differ in length");
    }
    if (alice.quantizer_n != bob.quantizer_n) {
        throw std::invalid_argument("reconcile: quantizer scales differ");
    }
    if (options.cascade_passes < 1 || options.max_extra_passes < 0) {
        throw std::invalid_argument("reconcile: invalid Cascade pass counts");
    }

    const std::size_t n = alice.symbols.size();
    const int width = std::max(alice.bits_per_symbol, bob.bits_per_symbol);
    const std::int64_t lo = -(std::int64_t{1} << (width - 1));
    const std::int64_t hi = (std::int64_t{1} << (width - 1)) - 1;

    ReconcileResult result;
    std::vector<std::uint64_t> known_low(n, 0);  // Bob's view of Alice's reconciled planes
    std::vector<std::uint8_t> alice_bits(n);
    std::vector<std::uint8_t> bob_bits(n);

    for (int plane = 0; plane < width && n > 0; ++plane) {
        for (std::size_t i = 0; i < n; ++i) {
            alice_bits[i] = symbol_bit(alice.symbols[i], plane);
            bob_bits[i] = symbol_bit(coset_decode(bob.symbols[i], known_low[i], plane, lo, hi), plane);
        }

        PlaneReport report;
        report.plane = plane;
        for (std::size_t i = 0; i < n; ++i) report.initial_errors += alice_bits[i] != bob_bits[i];
        report.predicted_error_rate = options.residual_std
                                          ? predicted_plane_error_rate(plane, *options.residual_std)
                                          : options.assumed_error_rate;

        const std::uint64_t leaked_before = result.transcript.leaked_bits();
        PlaneSession session(alice_bits, bob_bits, rng, result.transcript);
        const auto plane_tag = static_cast<std::uint32_t>(plane);
        const bool disclose = options.residual_std &&
                              options.cascade_inefficiency * binary_entropy(report.predicted_error_rate) >= 1.0;
        if (disclose) {
            session.disclose(plane_tag);
            report.disclosed = true;
        } else if (!session.audit(plane_tag)) {
            std::size_t block = initial_block_size(report.predicted_error_rate, n);
            for (int pass = 0; pass < options.cascade_passes; ++pass) {
                session.cascade_pass(block);
                block *= 2;
            }
            int extra = 0;
            const std::size_t first_block = initial_block_size(report.predicted_error_rate, n);
            while (!session.audit(plane_tag)) {
                if (extra == options.max_extra_passes) {
                    session.disclose(plane_tag);
                    report.disclosed = true;
                    break;
                }
                session.cascade_pass(first_block);
                ++extra;
            }
        }
        report.corrections = session.corrections();
        report.cascade_passes = session.passes_run();
        report.leaked_bits = result.transcript.leaked_bits() - leaked_before;
        result.corrections += report.corrections;
        result.planes.push_back(report);

        for (std::size_t i = 0; i < n; ++i) {
            known_low[i] |= std::uint64_t{bob_bits[i]} << plane;
        }
    }

    result.corrected.quantizer_n = alice.quantizer_n;
    result.corrected.bits_per_symbol = width;
    result.corrected.symbols.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.corrected.symbols[i] = sign_extend(known_low[i], width);
    result.leakage_bits = result.transcript.leaked_bits();
    result.audit_bits = result.transcript.bits_with_tag(StageTag::Audit);
    return result;
}

}  // namespace cvqkd
