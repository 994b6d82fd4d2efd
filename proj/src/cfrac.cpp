#include "ostrowski/cfrac.hpp"

#include <cfloat>
#include <charconv>
#include <cmath>
#include <limits>

#include "ostrowski/error.hpp"

namespace ostrowski {

namespace {

std::vector<Quotient> parse_quotient_list(std::string_view text, std::string_view context) {
    std::vector<Quotient> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view item =
            text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        Quotient value = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
            throw UsageError("bad partial quotient '" + std::string(item) + "' in alpha spec '" +
                             std::string(context) + "'");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string join(const std::vector<Quotient>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

bool checked_affine(Quotient a, std::uint64_t x, std::uint64_t y, std::uint64_t& out) {
    std::uint64_t prod = 0;
    if (__builtin_mul_overflow(a, x, &prod)) return false;
    return !__builtin_add_overflow(prod, y, &out);
}

}  // namespace

QuotientSpec::QuotientSpec(std::vector<Quotient> preperiod, std::vector<Quotient> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (preperiod_.empty() && period_.empty()) {
        throw ValidationError("quotient spec needs a nonempty preperiod or period");
    }
    for (const auto* part : {&preperiod_, &period_}) {
        for (Quotient a : *part) {
            if (a < 1) throw ValidationError("partial quotients must be >= 1");
        }
    }
}

QuotientSpec QuotientSpec::parse(std::string_view text) {
    if (text == "golden") return golden();
    if (text == "silver") return silver();
    if (text.starts_with("list:")) {
        auto values = parse_quotient_list(text.substr(5), text);
        if (values.empty()) throw UsageError("empty quotient list in alpha spec");
        return list(std::move(values));
    }
    if (text.starts_with("periodic:")) {
        const std::string_view body = text.substr(9);
        const std::size_t slash = body.find('/');
        if (slash == std::string_view::npos) {
            throw UsageError("periodic alpha spec needs '<preperiod>/<period>': " + std::string(text));
        }
        auto pre = parse_quotient_list(body.substr(0, slash), text);
        auto per = parse_quotient_list(body.substr(slash + 1), text);
        if (pre.empty() && per.empty()) throw UsageError("empty periodic alpha spec");
        return {std::move(pre), std::move(per)};
    }
    throw UsageError("unknown alpha spec '" + std::string(text) +
                     "' (expected golden, silver, periodic:<a,..>/<b,..> or list:<a,..>)");
}

Quotient QuotientSpec::quotient(std::size_t i) const {
    if (i == 0) throw IndexError("partial quotients are indexed from 1");
    if (i <= preperiod_.size()) return preperiod_[i - 1];
    if (period_.empty()) {
        throw IndexError("quotient a_" + std::to_string(i) + " requested but the explicit list has only " +
                         std::to_string(preperiod_.size()) + " entries");
    }
    return period_[(i - 1 - preperiod_.size()) % period_.size()];
}

bool QuotientSpec::has_quotient(std::size_t i) const noexcept {
    return i >= 1 && (i <= preperiod_.size() || !period_.empty());
}

std::optional<std::size_t> QuotientSpec::length() const noexcept {
    if (!period_.empty()) return std::nullopt;
    return preperiod_.size();
}

std::string QuotientSpec::to_string() const {
    if (preperiod_.empty() && period_ == std::vector<Quotient>{1}) return "golden";
    if (preperiod_.empty() && period_ == std::vector<Quotient>{2}) return "silver";
    if (period_.empty()) return "list:" + join(preperiod_);
    return "periodic:" + join(preperiod_) + "/" + join(period_);
}

Quotient ConvergentTable::quotient(std::size_t i) const {
    if (i == 0 || i >= a_.size()) {
        throw IndexError("quotient a_" + std::to_string(i) + " is not part of this table");
    }
    return a_[i];
}

Quotient ConvergentTable::digit_bound(std::size_t k) const {
    if (k >= digit_positions_) throw RangeError("digit position " + std::to_string(k) + " beyond table");
    return k == 0 ? a_[1] - 1 : a_[k + 1];
}

ConvergentTable expand(const QuotientSpec& spec, std::size_t K) {
    if (K < 1) throw RangeError("expand needs K >= 1");
    ConvergentTable table(spec);
    table.a_.assign(1, 0);
    table.p_ = {0, 1};
    table.q_ = {1, spec.quotient(1)};
    table.a_.push_back(spec.quotient(1));
    if (table.q_[1] > kMaxDenominator) throw OverflowError("q_1 exceeds 2^63-1", 0);

    for (std::size_t i = 1; i < K; ++i) {
        const Quotient a = spec.quotient(i + 1);
        std::uint64_t p_next = 0;
        std::uint64_t q_next = 0;
        if (!checked_affine(a, table.q_[i], table.q_[i - 1], q_next) || q_next > kMaxDenominator ||
            !checked_affine(a, table.p_[i], table.p_[i - 1], p_next)) {
            throw OverflowError("q_" + std::to_string(i + 1) + " exceeds 2^63-1; largest safe K is " +
                                    std::to_string(i),
                                i);
        }
        table.a_.push_back(a);
        table.p_.push_back(p_next);
        table.q_.push_back(q_next);
    }

    if (spec.has_quotient(K + 1)) {
        const Quotient a = spec.quotient(K + 1);
        table.a_.push_back(a);
        table.digit_positions_ = K + 1;
        std::uint64_t cap = 0;
        table.capacity_ = checked_affine(a, table.q_[K], table.q_[K - 1], cap)
                              ? cap
                              : std::numeric_limits<std::uint64_t>::max();
    } else {
        table.digit_positions_ = K;
        table.capacity_ = table.q_[K];
    }
    return table;
}

ConvergentTable expand_max(const QuotientSpec& spec) {
    if (auto len = spec.length()) {
        try {
            return expand(spec, *len);
        } catch (const OverflowError& e) {
            if (e.largest_safe_index() < 1) throw;
            return expand(spec, e.largest_safe_index());
        }
    }
    // Denominators at least double every two steps, so 130 indices always
    // overflow 63 bits.
    try {
        return expand(spec, 130);
    } catch (const OverflowError& e) {
        if (e.largest_safe_index() < 1) throw;
        return expand(spec, e.largest_safe_index());
    }
}

Approximation alpha_value(const QuotientSpec& spec, std::size_t depth) {
    if (depth < 2) throw RangeError("alpha_value needs depth >= 2");
    const ConvergentTable table = expand(spec, depth);
    const Quotient a_next = spec.quotient(depth + 1);
    const double q = static_cast<double>(table.q(depth));
    const double q_next = static_cast<double>(a_next) * q + static_cast<double>(table.q(depth - 1));
    const double value = static_cast<double>(table.p(depth)) / q;
    return {value, 1.0 / (q * q_next) + DBL_EPSILON * value};
}

TailValue tail(const QuotientSpec& spec, std::size_t lambda, std::size_t depth) {
    if (depth < 2) throw RangeError("tail needs depth >= 2");
    double x = 0.0;
    for (std::size_t j = lambda + depth; j > lambda; --j) {
        x = 1.0 / (static_cast<double>(spec.quotient(j)) + x);
    }
    // Denominators of the shifted fraction [0; a_{lambda+1}, ...].
    double q_prev = 1.0;
    double q_cur = static_cast<double>(spec.quotient(lambda + 1));
    for (std::size_t j = 2; j <= depth; ++j) {
        const double q_next = static_cast<double>(spec.quotient(lambda + j)) * q_cur + q_prev;
        q_prev = q_cur;
        q_cur = q_next;
    }
    const double truncation = 1.0 / (q_cur * (q_cur + q_prev));
    return {x, truncation + static_cast<double>(depth) * DBL_EPSILON};
}

}  // namespace ostrowski
