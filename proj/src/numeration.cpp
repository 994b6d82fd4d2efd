#include "ostrowski/numeration.hpp"

#include <algorithm>
#include <string>

#include "ostrowski/error.hpp"

namespace ostrowski {

namespace {

void require_encodable(std::uint64_t n, const ConvergentTable& scale) {
    if (n >= scale.capacity()) {
        throw RangeError("n = " + std::to_string(n) + " is outside the scale (capacity " +
                         std::to_string(scale.capacity()) + ")");
    }
}

}  // namespace

DigitString encode(std::uint64_t n, const ConvergentTable& scale) {
    require_encodable(n, scale);
    DigitString digits;
    std::uint64_t rest = n;
    for (std::size_t k = scale.digit_positions(); k-- > 0;) {
        const std::uint64_t qk = scale.q(k);
        if (qk > rest) continue;
        if (digits.empty()) digits.assign(k + 1, 0);
        digits[k] = rest / qk;
        rest -= digits[k] * qk;
    }
    return digits;
}

bool validate(std::span<const Digit> digits, const ConvergentTable& scale) noexcept {
    const std::size_t positions = scale.digit_positions();
    std::uint64_t partial = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        const Digit d = digits[k];
        if (k >= positions) {
            if (d != 0) return false;
            continue;
        }
        const Digit bound = scale.digit_bound(k);
        if (d > bound) return false;
        if (k >= 1 && d == bound && digits[k - 1] != 0) return false;
        std::uint64_t term = 0;
        if (__builtin_mul_overflow(d, scale.q(k), &term) || __builtin_add_overflow(partial, term, &partial)) {
            return false;
        }
        const std::uint64_t next_q = k + 1 <= scale.max_index() ? scale.q(k + 1) : scale.capacity();
        if (partial >= next_q) return false;
    }
    return true;
}

std::uint64_t decode(std::span<const Digit> digits, const ConvergentTable& scale) {
    if (!validate(digits, scale)) throw ValidationError("digit string violates the Ostrowski conditions");
    std::uint64_t n = 0;
    for (std::size_t k = 0; k < digits.size() && k < scale.digit_positions(); ++k) n += digits[k] * scale.q(k);
    return n;
}

std::uint64_t sigma(std::uint64_t n, const ConvergentTable& scale) {
    std::uint64_t s = 0;
    for (Digit d : encode(n, scale)) s += d;
    return s;
}

Digit digit_at(std::uint64_t n, std::size_t k, const ConvergentTable& scale) {
    const DigitString d = encode(n, scale);
    return k < d.size() ? d[k] : 0;
}

std::uint64_t psi(std::uint64_t n, std::size_t lambda, const ConvergentTable& scale) {
    const DigitString d = encode(n, scale);
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < lambda && k < d.size(); ++k) out += d[k] * scale.q(k);
    return out;
}

OstrowskiCounter::OstrowskiCounter(const ConvergentTable& scale, std::uint64_t start)
    : scale_(&scale), digits_(scale.digit_positions(), 0), bounds_(scale.digit_positions(), 0), value_(start) {
    for (std::size_t k = 0; k < bounds_.size(); ++k) bounds_[k] = scale.digit_bound(k);
    const DigitString d = encode(start, scale);
    std::copy(d.begin(), d.end(), digits_.begin());
    used_ = d.size();
    for (Digit x : d) digit_sum_ += x;
}

void OstrowskiCounter::increment() {
    const std::size_t positions = digits_.size();
    for (std::size_t k = 0; k < positions; ++k) {
        if (digits_[k] >= bounds_[k]) continue;
        // eps_{k+1} = a_{k+2} forces eps_k = 0.
        if (k + 1 < positions && digits_[k + 1] == bounds_[k + 1]) continue;
        for (std::size_t j = 0; j < k; ++j) {
            digit_sum_ -= digits_[j];
            digits_[j] = 0;
        }
        ++digits_[k];
        ++digit_sum_;
        ++value_;
        if (k + 1 > used_) used_ = k + 1;
        changed_ = k;
        return;
    }
    throw RangeError("counter reached the scale capacity " + std::to_string(scale_->capacity()));
}

BlockIndex w_sequence(std::size_t lambda, std::size_t count, const ConvergentTable& scale) {
    if (lambda < 1) throw RangeError("w_sequence needs lambda >= 1");
    if (lambda > scale.max_index()) throw RangeError("lambda beyond the convergent table");
    const Quotient a_next = scale.spec().quotient(lambda + 1);
    const std::uint64_t long_gap = scale.q(lambda);
    const std::uint64_t short_gap = scale.q(lambda - 1);

    BlockIndex index;
    index.lambda = lambda;
    index.starts.reserve(count);
    index.kinds.reserve(count);
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (w >= scale.capacity()) {
            throw OverflowError("w_sequence left the scale after " + std::to_string(i) + " blocks", 0);
        }
        const bool is_short = digit_at(w, lambda, scale) == a_next;
        index.starts.push_back(w);
        index.kinds.push_back(is_short ? BlockKind::short_gap : BlockKind::long_gap);
        const std::uint64_t gap = is_short ? short_gap : long_gap;
        if (__builtin_add_overflow(w, gap, &w)) {
            throw OverflowError("w_sequence start overflowed 64 bits", 0);
        }
    }
    return index;
}

BlockDensities block_densities(std::size_t lambda, std::uint64_t N, const ConvergentTable& scale) {
    if (lambda < 1) throw RangeError("block_densities needs lambda >= 1");
    if (lambda > scale.max_index()) throw RangeError("lambda beyond the convergent table");
    if (N > scale.capacity()) throw RangeError("N exceeds the scale capacity");
    const Quotient a_next = scale.spec().quotient(lambda + 1);
    const std::uint64_t long_gap = scale.q(lambda);
    const std::uint64_t short_gap = scale.q(lambda - 1);

    BlockDensities out;
    std::uint64_t w = 0;
    while (w < N) {
        const bool is_short = digit_at(w, lambda, scale) == a_next;
        const std::uint64_t next = w + (is_short ? short_gap : long_gap);
        if (next > N) break;
        ++(is_short ? out.short_count : out.long_count);
        w = next;
    }
    if (N > 0) {
        out.long_fraction = static_cast<double>(out.long_count) / static_cast<double>(N);
        out.short_fraction = static_cast<double>(out.short_count) / static_cast<double>(N);
    }
    return out;
}

}  // namespace ostrowski
