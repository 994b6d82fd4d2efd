#include "ostrowski/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numeric>
#include <string>

#include "ostrowski/error.hpp"
#include "ostrowski/summation.hpp"

namespace ostrowski {

namespace {

double squared_modulus(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

// The FFTW planner is not reentrant.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Autocorrelation

Complex correlation(std::span<const Complex> values, std::size_t r, std::size_t N) {
    if (N < 1) throw RangeError("correlation needs N >= 1");
    if (values.size() < N || values.size() - N < r) throw RangeError("correlation needs N + r samples");
    const Complex* x = values.data();
    const Complex sum =
        pairwise_sum(0, N, [x, r](std::size_t n) { return cmul_conj(x[n + r], x[n]); });
    const double inv = 1.0 / static_cast<double>(N);
    return {sum.real() * inv, sum.imag() * inv};
}

Complex correlation(const AlphaFunction& g, std::uint64_t r, std::uint64_t N) {
    if (N < 1) throw RangeError("correlation needs N >= 1");
    const std::vector<Complex> values = g.sample(N + r);
    return correlation(values, r, N);
}

MeanPair profile_means(std::span<const Complex> gamma, std::size_t R) {
    if (R < 1 || R > gamma.size()) throw RangeError("profile_means: R out of range");
    const Complex* x = gamma.data();
    const double inv = 1.0 / static_cast<double>(R);
    return {pairwise_sum_real(0, R, [x](std::size_t r) { return squared_modulus(x[r]); }) * inv,
            pairwise_sum_real(0, R, [x](std::size_t r) { return std::abs(x[r]); }) * inv};
}

CorrelationProfile correlation_profile(std::span<const Complex> values, std::size_t R, std::size_t N,
                                       unsigned threads) {
    if (R < 1) throw RangeError("correlation_profile needs R >= 1");
    if (N < 1) throw RangeError("correlation_profile needs N >= 1");
    if (values.size() < N + R - 1) throw RangeError("correlation_profile needs N + R - 1 samples");
    CorrelationProfile profile;
    profile.R = R;
    profile.N = N;
    profile.gamma.resize(R);
    parallel_for(R, threads, [&](std::size_t r) { profile.gamma[r] = correlation(values, r, N); });
    const MeanPair means = profile_means(profile.gamma, R);
    profile.quadratic_mean = means.quadratic;
    profile.absolute_mean = means.absolute;
    return profile;
}

CorrelationProfile correlation_profile(const AlphaFunction& g, std::size_t R, std::uint64_t N, unsigned threads) {
    if (R < 1) throw RangeError("correlation_profile needs R >= 1");
    const std::vector<Complex> values = g.sample(N + R - 1);
    return correlation_profile(values, R, N, threads);
}

Complex block_decomposition_estimate(const AlphaFunction& g, std::size_t lambda, std::uint64_t r,
                                     std::uint64_t N) {
    const ConvergentTable& scale = g.scale();
    const BlockDensities densities = block_densities(lambda, N, scale);
    auto template_sum = [&](std::uint64_t length) {
        return pairwise_sum(0, length, [&](std::size_t n) {
            return cmul_conj(g.eval_truncated(lambda, n + r), g.eval_truncated(lambda, n));
        });
    };
    const Complex long_sum = template_sum(scale.q(lambda));
    const Complex short_sum = template_sum(scale.q(lambda - 1));
    return densities.long_fraction * long_sum + densities.short_fraction * short_sum;
}

// ---------------------------------------------------------------------------
// Fourier coefficients

double FourierTable::energy() const {
    const Complex* x = G.data();
    return pairwise_sum_real(0, G.size(), [x](std::size_t h) { return squared_modulus(x[h]); });
}

std::vector<Complex> dft_direct(std::span<const Complex> x) {
    const std::size_t q = x.size();
    std::vector<Complex> twiddle(q);
    for (std::size_t k = 0; k < q; ++k) twiddle[k] = unit(static_cast<double>(k) / static_cast<double>(q));
    std::vector<Complex> out(q);
    const double inv = 1.0 / static_cast<double>(q);
    for (std::size_t h = 0; h < q; ++h) {
        const Complex s = pairwise_sum(0, q, [&](std::size_t u) {
            return cmul(x[u], twiddle[static_cast<std::size_t>((static_cast<UInt128>(h) * u) % q)]);
        });
        out[h] = {s.real() * inv, s.imag() * inv};
    }
    return out;
}

std::vector<Complex> dft_fast(std::span<const Complex> x) {
    const std::size_t q = x.size();
    if (q == 0) return {};
    auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * q));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * q));
    if (in == nullptr || out == nullptr) {
        fftw_free(in);
        fftw_free(out);
        throw std::bad_alloc();
    }
    fftw_plan plan = nullptr;
    {
        const std::lock_guard lock(fftw_planner_mutex());
        // FFTW_BACKWARD uses the e(+hu/q) kernel.
        plan = fftw_plan_dft_1d(static_cast<int>(q), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (std::size_t u = 0; u < q; ++u) {
        in[u][0] = x[u].real();
        in[u][1] = x[u].imag();
    }
    fftw_execute(plan);
    std::vector<Complex> result(q);
    const double inv = 1.0 / static_cast<double>(q);
    for (std::size_t h = 0; h < q; ++h) result[h] = {out[h][0] * inv, out[h][1] * inv};
    {
        const std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    return result;
}

FourierTable fourier_coeffs(const AlphaFunction& g, std::size_t lambda, std::uint64_t cap) {
    const ConvergentTable& scale = g.scale();
    if (lambda > scale.max_index()) throw RangeError("lambda beyond the convergent table");
    const std::uint64_t q = scale.q(lambda);
    if (q > cap) {
        throw CapError("q_" + std::to_string(lambda) + " = " + std::to_string(q) + " exceeds the transform cap " +
                       std::to_string(cap));
    }
    FourierTable table;
    table.lambda = lambda;
    table.q = q;
    const std::vector<Complex> window = g.sample(q);
    table.G = q <= kDirectFourierLimit ? dft_direct(window) : dft_fast(window);
    return table;
}

IdentityCheck parseval_check(const FourierTable& table, std::span<const Complex> window) {
    if (window.size() != table.q) throw RangeError("parseval_check: window length must equal q");
    const double lhs = table.energy();
    const Complex* x = window.data();
    const double rhs = pairwise_sum_real(0, window.size(), [x](std::size_t u) { return squared_modulus(x[u]); }) /
                       static_cast<double>(table.q);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

IdentityCheck cyclic_identity_check(const FourierTable& table, std::span<const Complex> window, std::uint64_t r) {
    const std::uint64_t q = table.q;
    if (window.size() != q) throw RangeError("cyclic_identity_check: window length must equal q");
    const std::uint64_t shift = r % q;
    const double qd = static_cast<double>(q);
    const Complex lhs = pairwise_sum(0, q, [&](std::size_t h) {
        const auto k = static_cast<std::uint64_t>((static_cast<UInt128>(h) * shift) % q);
        return squared_modulus(table.G[h]) * unit(-static_cast<double>(k) / qd);
    });
    const Complex sum = pairwise_sum(0, q, [&](std::size_t v) {
        const std::uint64_t shifted = (v + shift) % q;
        return cmul_conj(window[shifted], window[v]);
    });
    const Complex rhs = sum / qd;
    return {lhs, rhs, std::abs(lhs - rhs)};
}

IdentityCheck cyclic_identity_check(const AlphaFunction& g, std::size_t lambda, std::uint64_t r, std::uint64_t cap) {
    const FourierTable table = fourier_coeffs(g, lambda, cap);
    const std::vector<Complex> window = g.sample(table.q);
    return cyclic_identity_check(table, window, r);
}

// ---------------------------------------------------------------------------
// Exponential sums

Complex exponential_sum(std::span<const Complex> values, double beta) {
    const std::size_t N = values.size();
    if (N < 1) throw RangeError("exponential_sum needs N >= 1");
    // e(-n beta) = e(-(n - j) beta) e(-j beta) with j = n mod 256; both factors
    // come from phases reduced mod 1.
    constexpr std::size_t kBlockBits = 8;
    constexpr std::size_t kBlock = std::size_t{1} << kBlockBits;
    std::vector<Complex> low(kBlock);
    for (std::size_t j = 0; j < kBlock; ++j) low[j] = unit_mul_neg(j, beta);
    std::vector<Complex> high((N + kBlock - 1) / kBlock);
    for (std::size_t b = 0; b < high.size(); ++b) high[b] = unit_mul_neg(b << kBlockBits, beta);
    const Complex* x = values.data();
    const Complex sum = pairwise_sum(0, N, [&](std::size_t n) {
        return cmul(x[n], cmul(high[n >> kBlockBits], low[n & (kBlock - 1)]));
    });
    const double inv = 1.0 / static_cast<double>(N);
    return {sum.real() * inv, sum.imag() * inv};
}

Complex exponential_sum(const AlphaFunction& g, double beta, std::uint64_t N) {
    if (N < 1) throw RangeError("exponential_sum needs N >= 1");
    const std::vector<Complex> values = g.sample(N);
    return exponential_sum(values, beta);
}

std::vector<Complex> scale_sums(const AlphaFunction& g, double beta, std::size_t K) {
    const ConvergentTable& scale = g.scale();
    if (K > scale.max_index()) throw RangeError("scale_sums: K beyond the convergent table");
    const AlphaFunction h = g.twist(beta);
    std::vector<Complex> S(K + 1);
    S[0] = Complex(1.0, 0.0);
    if (K == 0) return S;
    const std::uint64_t q1 = scale.q(1);
    const std::vector<Complex> head = h.sample(q1);
    S[1] = pairwise_sum(0, q1, [&](std::size_t n) { return head[n]; }) / static_cast<double>(q1);
    for (std::size_t i = 1; i < K; ++i) {
        const Quotient a = scale.quotient(i + 1);
        Complex digit_sum(0.0, 0.0);
        for (Quotient b = 0; b < a; ++b) digit_sum += h.atom(i, b);
        const double q_prev = static_cast<double>(scale.q(i - 1));
        const double q_cur = static_cast<double>(scale.q(i));
        const double q_next = static_cast<double>(scale.q(i + 1));
        S[i + 1] = (q_cur / q_next) * cmul(digit_sum, S[i]) + (q_prev / q_next) * cmul(h.atom(i, a), S[i - 1]);
    }
    return S;
}

SpectrumScan spectrum_scan(std::span<const Complex> values, std::size_t grid_size, unsigned threads) {
    if (grid_size < 16) throw RangeError("spectrum_scan needs grid_size >= 16");
    const std::size_t N = values.size();
    if (N < 1) throw RangeError("spectrum_scan needs N >= 1");
    const std::size_t M = grid_size;

    // On the grid beta_j = j/M only n mod M matters: fold, then a length-M
    // transform with an exact integer phase index.
    std::vector<Complex> folded(M, Complex(0.0, 0.0));
    for (std::size_t n = 0; n < N; ++n) folded[n % M] += values[n];
    std::vector<Complex> twiddle(M);
    for (std::size_t k = 0; k < M; ++k) twiddle[k] = unit(-static_cast<double>(k) / static_cast<double>(M));

    SpectrumScan scan;
    scan.profile.resize(M);
    const double inv = 1.0 / static_cast<double>(N);
    parallel_for(M, threads, [&](std::size_t j) {
        const Complex s = pairwise_sum(0, M, [&](std::size_t m) {
            return cmul(folded[m], twiddle[static_cast<std::size_t>((static_cast<UInt128>(m) * j) % M)]);
        });
        scan.profile[j] = std::abs(s) * inv;
    });

    std::vector<std::size_t> maxima;
    for (std::size_t j = 0; j < M; ++j) {
        const double v = scan.profile[j];
        if (v >= scan.profile[(j + M - 1) % M] && v >= scan.profile[(j + 1) % M]) maxima.push_back(j);
    }
    if (maxima.empty()) {
        maxima.resize(M);
        std::iota(maxima.begin(), maxima.end(), std::size_t{0});
    }
    const std::size_t keep = std::min<std::size_t>(5, maxima.size());
    std::partial_sort(maxima.begin(), maxima.begin() + static_cast<std::ptrdiff_t>(keep), maxima.end(),
                      [&](std::size_t a, std::size_t b) {
                          return scan.profile[a] != scan.profile[b] ? scan.profile[a] > scan.profile[b] : a < b;
                      });
    maxima.resize(keep);

    scan.beta_peak = static_cast<double>(maxima.front()) / static_cast<double>(M);
    scan.peak_value = scan.profile[maxima.front()];

    std::vector<double> refined_beta(keep);
    std::vector<double> refined_value(keep);
    auto magnitude = [&](double beta) { return std::abs(exponential_sum(values, beta)); };
    parallel_for(keep, threads, [&](std::size_t i) {
        const double step = 1.0 / static_cast<double>(M);
        double lo = static_cast<double>(maxima[i]) * step - step;
        double hi = lo + 2.0 * step;
        while (hi - lo > kSpectrumRefineWidth) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (magnitude(m1) < magnitude(m2)) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        refined_beta[i] = 0.5 * (lo + hi);
        refined_value[i] = magnitude(refined_beta[i]);
    });
    for (std::size_t i = 0; i < keep; ++i) {
        if (refined_value[i] > scan.peak_value) {
            scan.peak_value = refined_value[i];
            scan.beta_peak = frac(refined_beta[i]);
        }
    }
    return scan;
}

SpectrumScan spectrum_scan(const AlphaFunction& g, std::uint64_t N, std::size_t grid_size, unsigned threads) {
    if (N < 1) throw RangeError("spectrum_scan needs N >= 1");
    const std::vector<Complex> values = g.sample(N);
    return spectrum_scan(values, grid_size, threads);
}

// ---------------------------------------------------------------------------
// Identities and inequalities

FejerCheck fejer_check(std::size_t R, double x) {
    if (R < 1) throw RangeError("fejer_check needs R >= 1");
    const auto Rs = static_cast<std::int64_t>(R);
    const Complex lhs = pairwise_sum(0, 2 * R - 1, [&](std::size_t i) {
        const std::int64_t r = static_cast<std::int64_t>(i) - (Rs - 1);
        const double weight = static_cast<double>(Rs - (r < 0 ? -r : r));
        const Complex phase = r >= 0 ? unit_mul(static_cast<std::uint64_t>(r), x)
                                     : unit_mul_neg(static_cast<std::uint64_t>(-r), x);
        return weight * phase;
    });
    const Complex partial = pairwise_sum(0, R, [&](std::size_t r) { return unit_mul(r, x); });
    const double rhs = squared_modulus(partial);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

SieveCheck large_sieve_check(std::size_t H, std::size_t R, double t) {
    if (H < 1 || R < 1) throw RangeError("large_sieve_check needs H, R >= 1");
    const double Rd = static_cast<double>(R);
    const double Hd = static_cast<double>(H);
    const double lhs = pairwise_sum_real(0, H, [&](std::size_t h) {
        const Complex s = pairwise_sum(0, R, [&](std::size_t r) {
            const auto k = static_cast<double>((static_cast<UInt128>(r) * h) % H);
            return unit(frac_mul(r, t) + k / Hd);
        });
        return squared_modulus(s / Rd);
    });
    const double bound = (Hd + Rd - 1.0) / Rd;
    return {lhs, bound, lhs <= bound + kSieveSlack};
}

VdcCheck vdc_check(std::span<const Complex> a, std::size_t R) {
    const std::size_t N = a.size();
    if (R < 1 || R > N) throw RangeError("vdc_check needs 1 <= R <= length");
    const Complex total = pairwise_sum(0, N, [&](std::size_t n) { return a[n]; });
    const double lhs = squared_modulus(total);
    const auto Rs = static_cast<std::int64_t>(R);
    const Complex weighted = pairwise_sum(0, 2 * R - 1, [&](std::size_t i) {
        const std::int64_t r = static_cast<std::int64_t>(i) - (Rs - 1);
        const std::size_t shift = static_cast<std::size_t>(r < 0 ? -r : r);
        // sum over n with n, n + r in [0, N)
        const Complex c = pairwise_sum(0, N - shift, [&](std::size_t m) {
            return r >= 0 ? cmul_conj(a[m + shift], a[m]) : cmul_conj(a[m], a[m + shift]);
        });
        return (1.0 - static_cast<double>(shift) / static_cast<double>(R)) * c;
    });
    const Complex rhs = (static_cast<double>(N) - 1.0 + static_cast<double>(R)) / static_cast<double>(R) * weighted;
    const double slack = 1e-9 * static_cast<double>(N) * static_cast<double>(N);
    return {lhs, rhs, lhs <= rhs.real() + slack};
}

}  // namespace ostrowski
