#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ostrowski/cfrac.hpp"
#include "ostrowski/error.hpp"

namespace ostrowski {

using Digit = std::uint64_t;

// Ostrowski digits eps_0, eps_1, ... stored least significant first with
// trailing (most significant) zeros trimmed. The empty string encodes 0.
using DigitString = std::vector<Digit>;

// Greedy expansion n = sum eps_k q_k. Throws RangeError when
// n >= scale.capacity().
DigitString encode(std::uint64_t n, const ConvergentTable& scale);

// True iff the digits satisfy
//   0 <= eps_0 < a_1,  0 <= eps_k <= a_{k+1},  eps_k = a_{k+1} => eps_{k-1} = 0,
// and every partial sum sum_{k<K'} eps_k q_k stays below q_{K'}.
// Trailing zeros are accepted; digits beyond the table must be zero.
bool validate(std::span<const Digit> digits, const ConvergentTable& scale) noexcept;

// sum eps_k q_k; throws ValidationError if validate() fails.
std::uint64_t decode(std::span<const Digit> digits, const ConvergentTable& scale);

// Ostrowski sum of digits.
std::uint64_t sigma(std::uint64_t n, const ConvergentTable& scale);

// eps_k(n); zero beyond the expansion.
Digit digit_at(std::uint64_t n, std::size_t k, const ConvergentTable& scale);

// Truncation to the low lambda digits: sum_{i<lambda} eps_i(n) q_i.
std::uint64_t psi(std::uint64_t n, std::size_t lambda, const ConvergentTable& scale);

// Odometer over consecutive integers. increment() moves to the lexicographic
// successor among legal digit strings (most significant digit dominant),
// which is the expansion of n + 1. Amortized O(1) per step.
class OstrowskiCounter {
public:
    explicit OstrowskiCounter(const ConvergentTable& scale, std::uint64_t start = 0);

    std::uint64_t value() const noexcept { return value_; }
    std::uint64_t digit_sum() const noexcept { return digit_sum_; }

    // Trimmed digits of value().
    std::span<const Digit> digits() const noexcept { return {digits_.data(), used_}; }
    Digit digit(std::size_t k) const noexcept { return k < used_ ? digits_[k] : 0; }

    // Position whose digit grew in the last increment; every position below
    // it was reset to zero and every position above it is unchanged.
    std::size_t changed_position() const noexcept { return changed_; }

    // Throws RangeError when value() + 1 reaches the scale capacity.
    void increment();

private:
    const ConvergentTable* scale_;
    std::vector<Digit> digits_;
    std::vector<Digit> bounds_;
    std::size_t used_ = 0;
    std::size_t changed_ = 0;
    std::uint64_t value_ = 0;
    std::uint64_t digit_sum_ = 0;
};

enum class IterationStrategy { reencode, odometer };

// Calls visit(n, digits) for n = 0 .. count-1 in order. The default re-encodes
// every n greedily; the odometer path must produce identical digit strings.
template <class Visitor>
void iterate(const ConvergentTable& scale, std::uint64_t count, Visitor&& visit,
             IterationStrategy strategy = IterationStrategy::reencode);

enum class BlockKind : std::uint8_t { long_gap, short_gap };

// Increasing enumeration w_0 < w_1 < ... of the integers whose low lambda
// digits vanish. kinds[i] tags the gap w_{i+1} - w_i: short (q_{lambda-1})
// exactly when eps_lambda(w_i) = a_{lambda+1}, long (q_lambda) otherwise.
struct BlockIndex {
    std::size_t lambda = 0;
    std::vector<std::uint64_t> starts;
    std::vector<BlockKind> kinds;
};

// Steps gap by gap from w_0 = 0. Throws OverflowError when a start would
// leave the scale capacity.
BlockIndex w_sequence(std::size_t lambda, std::size_t count, const ConvergentTable& scale);

// Long and short block counts among blocks [w_i, w_{i+1}) with w_{i+1} <= N,
// as raw counts and as fractions of N.
struct BlockDensities {
    double long_fraction = 0.0;
    double short_fraction = 0.0;
    std::uint64_t long_count = 0;
    std::uint64_t short_count = 0;
};

BlockDensities block_densities(std::size_t lambda, std::uint64_t N, const ConvergentTable& scale);

// ---------------------------------------------------------------------------

template <class Visitor>
void iterate(const ConvergentTable& scale, std::uint64_t count, Visitor&& visit, IterationStrategy strategy) {
    if (count == 0) return;
    if (count > scale.capacity()) throw RangeError("iterate: count exceeds scale capacity");
    if (strategy == IterationStrategy::reencode) {
        for (std::uint64_t n = 0; n < count; ++n) {
            const DigitString d = encode(n, scale);
            visit(n, std::span<const Digit>(d));
        }
        return;
    }
    OstrowskiCounter counter(scale);
    for (std::uint64_t n = 0;; ++n) {
        visit(n, counter.digits());
        if (n + 1 == count) break;
        counter.increment();
    }
}

}  // namespace ostrowski
