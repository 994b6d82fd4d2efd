#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ostrowski {

using Quotient = std::uint64_t;

// Largest admissible convergent denominator: q_i must stay below 2^63.
inline constexpr std::uint64_t kMaxDenominator = (std::uint64_t{1} << 63) - 1;

// The partial quotient stream a_1, a_2, ... of alpha = [0; a_1, a_2, ...].
//
// A spec is a (possibly empty) preperiod followed by a (possibly empty)
// period repeated forever. With an empty period the preperiod is an explicit
// finite list and reading past it raises IndexError.
class QuotientSpec {
public:
    QuotientSpec(std::vector<Quotient> preperiod, std::vector<Quotient> period);

    static QuotientSpec golden() { return {{}, {1}}; }
    static QuotientSpec silver() { return {{}, {2}}; }
    static QuotientSpec list(std::vector<Quotient> quotients) { return {std::move(quotients), {}}; }

    // Grammar: golden | silver | periodic:<a,b,...>/<c,d,...> | list:<a,b,...>
    static QuotientSpec parse(std::string_view text);

    // a_i for i >= 1.
    Quotient quotient(std::size_t i) const;
    bool has_quotient(std::size_t i) const noexcept;

    // True when the stream is infinite (period nonempty).
    bool explicit_tail_allowed() const noexcept { return !period_.empty(); }
    std::optional<std::size_t> length() const noexcept;

    const std::vector<Quotient>& preperiod() const noexcept { return preperiod_; }
    const std::vector<Quotient>& period() const noexcept { return period_; }

    // Canonical text form; parse(to_string()) reproduces the quotient stream.
    std::string to_string() const;

    friend bool operator==(const QuotientSpec&, const QuotientSpec&) = default;

private:
    std::vector<Quotient> preperiod_;
    std::vector<Quotient> period_;
};

// Convergents p_i/q_i for 0 <= i <= K together with the quotients that
// generated them. The q_i are the Ostrowski numeration scale.
//
// Digit position k of an Ostrowski expansion is bounded by a_{k+1}, so the
// table also remembers a_{K+1} when the quotient stream provides it: positions 0..K are
// then usable and every n < q_{K+1} is encodable. Without a_{K+1} only
// positions 0..K-1 are usable and the capacity drops to q_K.
class ConvergentTable {
public:
    std::size_t max_index() const noexcept { return p_.size() - 1; }

    std::uint64_t p(std::size_t i) const { return p_.at(i); }
    std::uint64_t q(std::size_t i) const { return q_.at(i); }
    std::span<const std::uint64_t> p() const noexcept { return p_; }
    std::span<const std::uint64_t> q() const noexcept { return q_; }

    // a_i for 1 <= i <= K (+1 when known).
    Quotient quotient(std::size_t i) const;

    // Number of usable digit positions (K or K+1).
    std::size_t digit_positions() const noexcept { return digit_positions_; }

    // Largest legal digit at position k: a_1 - 1 at k = 0, a_{k+1} above.
    Quotient digit_bound(std::size_t k) const;

    // Exclusive upper bound on encodable integers (saturates at 2^64 - 1).
    std::uint64_t capacity() const noexcept { return capacity_; }

    const QuotientSpec& spec() const noexcept { return spec_; }

private:
    friend ConvergentTable expand(const QuotientSpec& spec, std::size_t K);

    explicit ConvergentTable(QuotientSpec spec) : spec_(std::move(spec)) {}

    QuotientSpec spec_;
    std::vector<std::uint64_t> p_;
    std::vector<std::uint64_t> q_;
    std::vector<Quotient> a_;  // a_[i] = a_i, a_[0] unused
    std::size_t digit_positions_ = 0;
    std::uint64_t capacity_ = 0;
};

// Builds p_0..p_K, q_0..q_K. Throws OverflowError (carrying the largest safe
// K) if some q_i would exceed 2^63 - 1 and IndexError if a finite list runs out.
ConvergentTable expand(const QuotientSpec& spec, std::size_t K);

// Largest table the quotient stream supports: stops just before overflow, or at the end
// of a finite list.
ConvergentTable expand_max(const QuotientSpec& spec);

struct Approximation {
    double value = 0.0;
    double error_bound = 0.0;
};

// p_depth / q_depth with the classical bound 1/(q_depth q_{depth+1}).
Approximation alpha_value(const QuotientSpec& spec, std::size_t depth);

// [0; a_{lambda+1}, a_{lambda+2}, ...] by backward evaluation over `depth`
// quotients. The error bound combines the truncation bound of the shifted
// fraction with the accumulated rounding of the backward recursion.
struct TailValue {
    double value = 0.0;
    double error_bound = 0.0;
};

inline constexpr std::size_t kDefaultTailDepth = 40;

TailValue tail(const QuotientSpec& spec, std::size_t lambda, std::size_t depth = kDefaultTailDepth);

}  // namespace ostrowski
