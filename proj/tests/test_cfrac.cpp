#include <doctest.h>

#include "oracles.hpp"
#include "ostrowski/cfrac.hpp"
#include "ostrowski/error.hpp"

using namespace ostrowski;

namespace {

// Fixed point of x = 1/(k + x) by plain iteration.
double fixed_point(double k) {
    double x = 0.5;
    for (int i = 0; i < 200; ++i) x = 1.0 / (k + x);
    return x;
}

std::vector<QuotientSpec> specs_under_test() {
    return {QuotientSpec::golden(), QuotientSpec::silver(), QuotientSpec::parse("periodic:/1,2"),
            QuotientSpec::parse("periodic:/1,2,3,1,1,4"), QuotientSpec::parse("periodic:3,7/1,5")};
}

}  // namespace

TEST_CASE("expand reproduces the hand recurrence") {
    const auto golden = expand(QuotientSpec::golden(), 4);
    CHECK(std::vector<std::uint64_t>(golden.q().begin(), golden.q().end()) ==
          oracle::denominators(oracle::quotients({}, {1}, 5), 4));
    CHECK(std::vector<std::uint64_t>(golden.q().begin(), golden.q().end()) == std::vector<std::uint64_t>{1, 1, 2, 3, 5});

    const auto silver = expand(QuotientSpec::silver(), 4);
    CHECK(std::vector<std::uint64_t>(silver.q().begin(), silver.q().end()) ==
          oracle::denominators(oracle::quotients({}, {2}, 5), 4));
    CHECK(std::vector<std::uint64_t>(silver.q().begin(), silver.q().end()) ==
          std::vector<std::uint64_t>{1, 2, 5, 12, 29});
}

TEST_CASE("expand base case") {
    const auto t = expand(QuotientSpec::golden(), 1);
    CHECK(t.max_index() == 1);
    CHECK(t.p(0) == 0);
    CHECK(t.p(1) == 1);
    CHECK(t.q(0) == 1);
    CHECK(t.q(1) == 1);
    CHECK(static_cast<std::int64_t>(t.p(1) * t.q(0)) - static_cast<std::int64_t>(t.p(0) * t.q(1)) == 1);
}

TEST_CASE("convergent table invariants on every spec") {
    for (const auto& spec : specs_under_test()) {
        const auto t = expand_max(spec);
        CAPTURE(spec.to_string());
        REQUIRE(t.max_index() >= 20);
        CHECK(t.p(0) == 0);
        CHECK(t.q(0) == 1);
        CHECK(t.p(1) == 1);
        CHECK(t.q(1) == spec.quotient(1));
        for (std::size_t i = 1; i <= t.max_index(); ++i) {
            if (i + 1 <= t.max_index()) {
                CHECK(t.q(i + 1) == spec.quotient(i + 1) * t.q(i) + t.q(i - 1));
                CHECK(t.p(i + 1) == spec.quotient(i + 1) * t.p(i) + t.p(i - 1));
            }
            // p_i q_{i-1} - p_{i-1} q_i = (-1)^{i+1}
            const auto det = static_cast<__int128>(t.p(i)) * t.q(i - 1) - static_cast<__int128>(t.p(i - 1)) * t.q(i);
            CHECK(det == (i % 2 == 1 ? 1 : -1));
            CHECK(t.q(i) >= t.q(i - 1));
            if (i >= 2) CHECK(t.q(i) > t.q(i - 1));
            CHECK(t.q(i) <= kMaxDenominator);
        }
    }
}

TEST_CASE("consecutive convergents differ by exactly 1/(q_i q_{i+1})") {
    // |p_i/q_i - p_{i+1}/q_{i+1}| = |p_i q_{i+1} - p_{i+1} q_i| / (q_i q_{i+1}),
    // so the claim is that the numerator is exactly one.
    for (const auto& spec : specs_under_test()) {
        const auto t = expand_max(spec);
        for (std::size_t i = 0; i < t.max_index(); ++i) {
            const auto num = static_cast<__int128>(t.p(i)) * t.q(i + 1) - static_cast<__int128>(t.p(i + 1)) * t.q(i);
            CHECK((num == 1 || num == -1));
        }
    }
}

TEST_CASE("expand reports overflow with the largest safe index") {
    std::size_t largest = 0;
    try {
        (void)expand(QuotientSpec::golden(), 200);
        FAIL("expected OverflowError");
    } catch (const OverflowError& e) {
        largest = e.largest_safe_index();
    }
    // Oracle: Fibonacci-type recurrence in 128-bit arithmetic.
    unsigned __int128 prev = 1;
    unsigned __int128 cur = 1;
    std::size_t index = 1;
    while (true) {
        const unsigned __int128 next = cur + prev;
        if (next > kMaxDenominator) break;
        prev = cur;
        cur = next;
        ++index;
    }
    CHECK(largest == index);
    CHECK_NOTHROW((void)expand(QuotientSpec::golden(), largest));
    CHECK(expand_max(QuotientSpec::golden()).max_index() == largest);
}

TEST_CASE("finite lists") {
    CHECK_THROWS_AS((void)expand(QuotientSpec::list({2}), 2), IndexError);
    const auto t = expand(QuotientSpec::list({2, 3}), 2);
    CHECK(t.digit_positions() == 2);
    CHECK(t.capacity() == t.q(2));
    const auto u = expand(QuotientSpec::list({2, 3, 4}), 2);
    CHECK(u.digit_positions() == 3);
    CHECK(u.capacity() == 4 * u.q(2) + u.q(1));
    CHECK(expand_max(QuotientSpec::list({1, 2, 3})).max_index() == 3);
}

TEST_CASE("alpha_value") {
    const auto g = alpha_value(QuotientSpec::golden(), 40);
    CHECK(std::abs(g.value - fixed_point(1.0)) < 1e-15);
    CHECK(g.error_bound < 1e-15);
    CHECK(std::abs(g.value - 0.6180339887498949) < 1e-15);

    const auto s = alpha_value(QuotientSpec::silver(), 40);
    CHECK(std::abs(s.value - fixed_point(2.0)) < 1e-15);
    CHECK(s.error_bound < 1e-15);
    CHECK(std::abs(s.value - 0.41421356237309503) < 1e-15);

    CHECK_THROWS_AS((void)alpha_value(QuotientSpec::list({2}), 2), IndexError);
}

TEST_CASE("tail values") {
    const auto golden = tail(QuotientSpec::golden(), 2, 40);
    CHECK(std::abs(golden.value - fixed_point(1.0)) < 1e-15);
    CHECK(golden.error_bound < 1e-12);

    const auto silver = tail(QuotientSpec::silver(), 5, 40);
    CHECK(std::abs(silver.value - fixed_point(2.0)) < 1e-15);
    CHECK(silver.error_bound < 1e-12);

    const auto shifted = tail(QuotientSpec::parse("periodic:3/1"), 1, 40);
    CHECK(std::abs(shifted.value - fixed_point(1.0)) < 1e-15);

    CHECK_THROWS_AS((void)tail(QuotientSpec::list({1, 2, 3}), 1, 5), IndexError);
}

TEST_CASE("tail lies between consecutive convergents of the shifted fraction") {
    for (const auto& spec : specs_under_test()) {
        for (std::size_t lambda = 0; lambda < 6; ++lambda) {
            std::vector<Quotient> shifted;
            for (std::size_t j = 1; j <= 20; ++j) shifted.push_back(spec.quotient(lambda + j));
            const auto t = expand(QuotientSpec::list(shifted), 12);
            for (std::size_t d = 2; d <= 11; ++d) {
                const double lo = static_cast<double>(t.p(d - 1)) / static_cast<double>(t.q(d - 1));
                const double hi = static_cast<double>(t.p(d)) / static_cast<double>(t.q(d));
                // The true tail (approximated one level deeper) is strictly inside.
                const double v = tail(spec, lambda, d + 1).value;
                CHECK(v > std::min(lo, hi));
                CHECK(v < std::max(lo, hi));
                // Backward evaluation over d quotients is the d-th convergent.
                CHECK(std::abs(tail(spec, lambda, d).value - hi) < 1e-15);
            }
        }
    }
}

TEST_CASE("alpha spec grammar") {
    CHECK(QuotientSpec::parse("golden") == QuotientSpec({}, {1}));
    CHECK(QuotientSpec::parse("silver") == QuotientSpec({}, {2}));
    CHECK(QuotientSpec::parse("periodic:/1,2") == QuotientSpec({}, {1, 2}));
    CHECK(QuotientSpec::parse("periodic:3/1") == QuotientSpec({3}, {1}));
    CHECK(QuotientSpec::parse("list:1,2,3") == QuotientSpec({1, 2, 3}, {}));
    CHECK(QuotientSpec::parse("periodic:4,5/") == QuotientSpec::list({4, 5}));

    for (const char* text : {"golden", "silver", "list:1,2,3", "periodic:/1,2", "periodic:3,1/2,5"}) {
        CHECK(QuotientSpec::parse(QuotientSpec::parse(text).to_string()) == QuotientSpec::parse(text));
    }

    for (const char* bad : {"", "bronze", "list:", "list:1,,2", "list:1,x", "periodic:1,2", "periodic:/", "list:-1"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS((void)QuotientSpec::parse(bad), UsageError);
    }
    CHECK_THROWS_AS((void)QuotientSpec::parse("list:1,0,2"), ValidationError);

    const auto spec = QuotientSpec::parse("periodic:3/1,2");
    CHECK(spec.quotient(1) == 3);
    CHECK(spec.quotient(2) == 1);
    CHECK(spec.quotient(3) == 2);
    CHECK(spec.quotient(4) == 1);
    CHECK(spec.explicit_tail_allowed());
    CHECK_FALSE(QuotientSpec::list({1}).explicit_tail_allowed());
    CHECK_THROWS_AS((void)QuotientSpec::list({1}).quotient(2), IndexError);
}
