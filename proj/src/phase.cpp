#include "ostrowski/phase.hpp"

namespace ostrowski {

namespace {

// frac(m * y) for m < 2^32 and y in [0, 1). p + e is the exact product.
double frac_two_product(std::uint64_t m, double y) noexcept {
    const double md = static_cast<double>(m);
    const double p = md * y;
    const double e = std::fma(md, y, -p);
    return frac(frac(p) + e);
}

}  // namespace

double frac_mul(std::uint64_t n, double x) noexcept {
    const double y = frac(x);
    const std::uint64_t hi = n >> 32;
    const std::uint64_t lo = n & 0xffffffffULL;
    // 2^32 * y is exact; its fractional part is exact as well.
    const double y_shifted = frac(std::ldexp(y, 32));
    return frac(frac_two_product(hi, y_shifted) + frac_two_product(lo, y));
}

double frac_mul(UInt128 n, double x) noexcept {
    const auto hi = static_cast<std::uint64_t>(n >> 64);
    const auto lo = static_cast<std::uint64_t>(n);
    if (hi == 0) return frac_mul(lo, x);
    const double y_shifted = frac(std::ldexp(frac(x), 64));
    return frac(frac_mul(hi, y_shifted) + frac_mul(lo, x));
}

}  // namespace ostrowski
