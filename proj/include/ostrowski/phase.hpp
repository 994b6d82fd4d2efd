#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace ostrowski {

using Complex = std::complex<double>;

__extension__ typedef unsigned __int128 UInt128;

// Fractional part of x, in [0, 1).
inline double frac(double x) noexcept {
    const double f = x - std::floor(x);
    return f < 1.0 ? f : 0.0;
}

// frac(n * x) for the binary64 value x, accurate to a few ulps of 1 for every
// 64-bit n. n is split into 32-bit halves and each half-product is formed
// with an exact two-product before reduction, so no bits of n * x are lost.
double frac_mul(std::uint64_t n, double x) noexcept;

// The same for 128-bit multipliers (digit multiples e * q_k of the top
// position can exceed 64 bits).
double frac_mul(UInt128 n, double x) noexcept;

// e(x) = exp(2 pi i x). The argument is reduced mod 1 first.
inline Complex unit(double x) noexcept {
    double r = frac(x);
    if (r >= 0.5) r -= 1.0;
    const double angle = 2.0 * std::numbers::pi * r;
    return {std::cos(angle), std::sin(angle)};
}

// e(n * x) with the phase reduced through frac_mul.
inline Complex unit_mul(std::uint64_t n, double x) noexcept { return unit(frac_mul(n, x)); }

// e(-n * x).
inline Complex unit_mul_neg(std::uint64_t n, double x) noexcept { return unit(-frac_mul(n, x)); }

// Plain complex product. std::complex operator* goes through the C99 Annex G
// NaN/inf recovery path, which is slow and never needed for bounded values.
inline Complex cmul(Complex a, Complex b) noexcept {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// a * conj(b).
inline Complex cmul_conj(Complex a, Complex b) noexcept {
    return {a.real() * b.real() + a.imag() * b.imag(), a.imag() * b.real() - a.real() * b.imag()};
}

}  // namespace ostrowski
