#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ostrowski/alphafun.hpp"

namespace ostrowski {

// ---------------------------------------------------------------------------
// Autocorrelation

// Finite-N estimates gamma_r = (1/N) sum_{n<N} g(n+r) conj(g(n)) for r < R.
struct CorrelationProfile {
    std::size_t R = 0;
    std::uint64_t N = 0;
    std::vector<Complex> gamma;
    double quadratic_mean = 0.0;  // (1/R) sum |gamma_r|^2
    double absolute_mean = 0.0;   // (1/R) sum |gamma_r|
};

// (1/N) sum_{n<N} values[n+r] conj(values[n]) by pairwise summation.
// values must hold at least N + r samples.
Complex correlation(std::span<const Complex> values, std::size_t r, std::size_t N);
Complex correlation(const AlphaFunction& g, std::uint64_t r, std::uint64_t N);

CorrelationProfile correlation_profile(std::span<const Complex> values, std::size_t R, std::size_t N,
                                       unsigned threads = 0);
CorrelationProfile correlation_profile(const AlphaFunction& g, std::size_t R, std::uint64_t N,
                                       unsigned threads = 0);

// Prefix means of a profile: entry R' - 1 holds ((1/R') sum_{r<R'} |gamma_r|^2,
// (1/R') sum_{r<R'} |gamma_r|), both pairwise-summed.
struct MeanPair {
    double quadratic = 0.0;
    double absolute = 0.0;
};
MeanPair profile_means(std::span<const Complex> gamma, std::size_t R);

// Estimate of gamma_r from the block structure at level lambda:
//   A * sum_{n<q_lambda} g_l(n+r) conj g_l(n) + B * sum_{n<q_{lambda-1}} g_l(n+r) conj g_l(n)
// where A, B are the long/short block fractions below N and g_l = g o psi_lambda.
Complex block_decomposition_estimate(const AlphaFunction& g, std::size_t lambda, std::uint64_t r,
                                     std::uint64_t N);

// ---------------------------------------------------------------------------
// Fourier coefficients on one period window

inline constexpr std::uint64_t kDefaultFourierCap = std::uint64_t{1} << 20;
// Windows up to this length always use the direct O(q^2) transform.
inline constexpr std::uint64_t kDirectFourierLimit = 4096;

// G_lambda(h) = (1/q_lambda) sum_{u<q_lambda} g(u) e(h u / q_lambda).
struct FourierTable {
    std::size_t lambda = 0;
    std::uint64_t q = 0;
    std::vector<Complex> G;

    // sum_h |G(h)|^2
    double energy() const;
};

// Normalised DFT X[h] = (1/q) sum_u x[u] e(h u / q), direct and fast routes.
std::vector<Complex> dft_direct(std::span<const Complex> x);
std::vector<Complex> dft_fast(std::span<const Complex> x);

// Throws CapError if q_lambda exceeds cap.
FourierTable fourier_coeffs(const AlphaFunction& g, std::size_t lambda, std::uint64_t cap = kDefaultFourierCap);

struct IdentityCheck {
    Complex lhs;
    Complex rhs;
    double delta = 0.0;
};

// Parseval: lhs = sum |G(h)|^2, rhs = (1/q) sum_u |g(u)|^2.
IdentityCheck parseval_check(const FourierTable& table, std::span<const Complex> window);

// Cyclic correlation identity at scale q = q_lambda:
//   sum_h |G(h)|^2 e(-h r / q) = (1/q) sum_{v<q} g((v + r) mod q) conj(g(v)).
IdentityCheck cyclic_identity_check(const FourierTable& table, std::span<const Complex> window, std::uint64_t r);
IdentityCheck cyclic_identity_check(const AlphaFunction& g, std::size_t lambda, std::uint64_t r,
                                    std::uint64_t cap = kDefaultFourierCap);

// ---------------------------------------------------------------------------
// Exponential sums

// (1/N) sum_{n<N} values[n] e(-n beta) with N = values.size().
Complex exponential_sum(std::span<const Complex> values, double beta);
Complex exponential_sum(const AlphaFunction& g, double beta, std::uint64_t N);

// S_i = (1/q_i) sum_{n<q_i} h(n) for h = twist(g, beta), 0 <= i <= K, via
//   S_{i+1} = (q_i/q_{i+1}) (sum_{b<a_{i+1}} h(b q_i)) S_i
//           + (q_{i-1}/q_{i+1}) h(a_{i+1} q_i) S_{i-1},
// seeded with S_0 = 1 and a direct S_1.
std::vector<Complex> scale_sums(const AlphaFunction& g, double beta, std::size_t K);

// |exponential_sum| on the grid beta_j = j / grid_size (profile[j]), then
// ternary refinement around the five largest local maxima down to width 1e-6.
struct SpectrumScan {
    double beta_peak = 0.0;
    double peak_value = 0.0;
    std::vector<double> profile;
};

inline constexpr std::size_t kDefaultSpectrumGrid = 4096;
inline constexpr double kSpectrumRefineWidth = 1e-6;

SpectrumScan spectrum_scan(std::span<const Complex> values, std::size_t grid_size = kDefaultSpectrumGrid,
                           unsigned threads = 0);
SpectrumScan spectrum_scan(const AlphaFunction& g, std::uint64_t N, std::size_t grid_size = kDefaultSpectrumGrid,
                           unsigned threads = 0);

// ---------------------------------------------------------------------------
// Exact identities and inequalities with explicit constants

// sum_{|r|<R} (R - |r|) e(r x) against |sum_{r<R} e(r x)|^2.
struct FejerCheck {
    Complex lhs;
    double rhs = 0.0;
    double delta = 0.0;
};
FejerCheck fejer_check(std::size_t R, double x);

// sum_{h<H} |(1/R) sum_{r<R} e(r (t + h/H))|^2 <= (H + R - 1)/R.
struct SieveCheck {
    double lhs = 0.0;
    double bound = 0.0;
    bool ok = false;
};
inline constexpr double kSieveSlack = 1e-9;
SieveCheck large_sieve_check(std::size_t H, std::size_t R, double t);

// |sum a_n|^2 <= ((N - 1 + R)/R) sum_{|r|<R} (1 - |r|/R) sum_{n, n+r in I} a_{n+r} conj(a_n).
struct VdcCheck {
    double lhs = 0.0;
    Complex rhs;
    bool ok = false;
};
VdcCheck vdc_check(std::span<const Complex> a, std::size_t R);

}  // namespace ostrowski
