#include "ostrowski/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "ostrowski/error.hpp"
#include "ostrowski/summation.hpp"

namespace ostrowski {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Values are equal up to rounding of a product of at most ~90 unit factors.
constexpr double kCarryTolerance = 1e-12;

// g, g_lambda and the high part n - psi_lambda(n) for n < length.
struct CarryTables {
    std::vector<Complex> full;
    std::vector<Complex> truncated;
    std::vector<std::uint64_t> high;
};

CarryTables carry_tables(const AlphaFunction& g, std::size_t lambda, std::uint64_t length) {
    const ConvergentTable& scale = g.scale();
    if (length > scale.capacity()) throw RangeError("carry check leaves the scale capacity");
    CarryTables t;
    t.full = g.sample(length);
    t.truncated.resize(length);
    t.high.resize(length);
    OstrowskiCounter counter(scale);
    for (std::uint64_t n = 0; n < length; ++n) {
        if (n > 0) counter.increment();
        const auto digits = counter.digits();
        const auto low = digits.first(std::min(lambda, digits.size()));
        std::uint64_t psi_n = 0;
        for (std::size_t k = 0; k < low.size(); ++k) psi_n += low[k] * scale.q(k);
        t.truncated[n] = g.eval(low);
        t.high[n] = n - psi_n;
    }
    return t;
}

// Records the carry instance for (lambda, r, N) given the exact count.
void record_carry(CheckReport& report, std::size_t lambda, std::uint64_t r, std::uint64_t N, std::uint64_t count,
                  std::uint64_t q_prev) {
    const bool ok = static_cast<UInt128>(count) * q_prev <= static_cast<UInt128>(N) * r;
    const double bound = static_cast<double>(N) * static_cast<double>(r) / static_cast<double>(q_prev);
    report.record("lambda=" + std::to_string(lambda) + " r=" + std::to_string(r) + " N=" + std::to_string(N),
                  static_cast<double>(count), bound, ok);
}

// Number of n < N (per entry of sorted Ns) where the correlation term changes
// under truncation.
std::vector<std::uint64_t> carry_counts(const CarryTables& t, std::uint64_t r, const std::vector<std::uint64_t>& Ns) {
    std::vector<std::uint64_t> counts;
    counts.reserve(Ns.size());
    std::uint64_t count = 0;
    std::uint64_t n = 0;
    for (std::uint64_t limit : Ns) {
        for (; n < limit; ++n) {
            // Equal high parts mean equal high digits, so the terms agree exactly.
            if (t.high[n + r] == t.high[n]) continue;
            const Complex full = cmul_conj(t.full[n + r], t.full[n]);
            const Complex low = cmul_conj(t.truncated[n + r], t.truncated[n]);
            if (std::abs(full - low) > kCarryTolerance) ++count;
        }
        counts.push_back(count);
    }
    return counts;
}

std::size_t require_lambda(std::size_t lambda, const ConvergentTable& scale) {
    if (lambda < 1) throw RangeError("lambda must be at least 1");
    if (lambda > scale.max_index()) throw RangeError("lambda beyond the convergent table");
    return lambda;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config and reports

void ExperimentConfig::validate(const ConvergentTable& scale) const {
    if (N < 1) throw UsageError("N must be positive");
    if (R_list.empty()) throw UsageError("R list is empty");
    for (std::size_t R : R_list) {
        if (R < 1) throw UsageError("every R must be positive");
    }
    const std::size_t R_max = *std::max_element(R_list.begin(), R_list.end());
    if (N < R_max) throw UsageError("N must be at least max(R)");
    for (std::size_t lambda : lambda_list) {
        if (lambda > scale.max_index() || scale.q(lambda) > N) {
            throw UsageError("lambda " + std::to_string(lambda) + " needs q_lambda <= N");
        }
    }
    if (grid < 16) throw UsageError("grid must be at least 16");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json doc = {{"alpha", alpha_spec},
                          {"fn", fn_spec},
                          {"N", N},
                          {"R", R_list},
                          {"lambda", lambda_list},
                          {"seed", seed},
                          {"out", output_path},
                          {"format", format == OutputFormat::csv ? "csv" : "json"},
                          {"threads", threads},
                          {"grid", grid}};
    if (only) doc["only"] = *only;
    return doc;
}

std::string ExperimentConfig::csv_header() const { return "# config " + to_json().dump(); }

void CheckReport::record(const std::string& instance, double observed, double bound, bool ok) {
    const double margin = bound - observed;
    worst_margin = instances_run == 0 ? margin : std::min(worst_margin, margin);
    ++instances_run;
    if (ok) {
        ++instances_passed;
    } else {
        details.push_back({instance, observed, bound});
    }
}

void CheckReport::merge(const CheckReport& other) {
    if (other.instances_run == 0) return;
    worst_margin = instances_run == 0 ? other.worst_margin : std::min(worst_margin, other.worst_margin);
    instances_run += other.instances_run;
    instances_passed += other.instances_passed;
    details.insert(details.end(), other.details.begin(), other.details.end());
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& d : details) failures.push_back({{"instance", d.instance}, {"observed", d.observed}, {"bound", d.bound}});
    return {{"check_name", check_name},
            {"instances_run", instances_run},
            {"instances_passed", instances_passed},
            {"worst_margin", worst_margin},
            {"details", failures}};
}

CheckReport CheckReport::from_json(const nlohmann::json& doc) {
    CheckReport report;
    try {
        report.check_name = doc.at("check_name").get<std::string>();
        report.instances_run = doc.at("instances_run").get<std::uint64_t>();
        report.instances_passed = doc.at("instances_passed").get<std::uint64_t>();
        report.worst_margin = doc.at("worst_margin").get<double>();
        for (const auto& d : doc.at("details")) {
            report.details.push_back(
                {d.at("instance").get<std::string>(), d.at("observed").get<double>(), d.at("bound").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed check report: ") + e.what());
    }
    if (report.instances_passed > report.instances_run) throw ValidationError("instances_passed > instances_run");
    return report;
}

// ---------------------------------------------------------------------------
// Carry lemma

CheckReport carry_bound_check(const AlphaFunction& g, std::size_t lambda, std::uint64_t r, std::uint64_t N) {
    const ConvergentTable& scale = g.scale();
    require_lambda(lambda, scale);
    if (N < 1) throw RangeError("carry check needs N >= 1");
    const CarryTables t = carry_tables(g, lambda, N + r);
    CheckReport report;
    report.check_name = "carry";
    record_carry(report, lambda, r, N, carry_counts(t, r, {N}).front(), scale.q(lambda - 1));
    return report;
}

CheckReport carry_bound_sweep(const AlphaFunction& g, std::size_t lambda, const std::vector<std::uint64_t>& Ns,
                              unsigned threads) {
    const ConvergentTable& scale = g.scale();
    require_lambda(lambda, scale);
    if (Ns.empty()) throw RangeError("carry sweep needs at least one N");
    std::vector<std::uint64_t> sorted = Ns;
    std::sort(sorted.begin(), sorted.end());
    const std::uint64_t q_prev = scale.q(lambda - 1);
    const CarryTables t = carry_tables(g, lambda, sorted.back() + q_prev);

    std::vector<std::vector<std::uint64_t>> counts(q_prev);
    parallel_for(q_prev, threads, [&](std::size_t r) { counts[r] = carry_counts(t, r, sorted); });

    CheckReport report;
    report.check_name = "carry";
    for (std::uint64_t r = 0; r < q_prev; ++r) {
        for (std::size_t j = 0; j < sorted.size(); ++j) record_carry(report, lambda, r, sorted[j], counts[r][j], q_prev);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Densities

double density_formula(std::size_t lambda, std::uint64_t a, const ConvergentTable& scale) {
    require_lambda(lambda, scale);
    const std::uint64_t q = scale.q(lambda);
    const std::uint64_t q_prev = scale.q(lambda - 1);
    if (a >= q) throw RangeError("density needs a < q_lambda");
    const double t = tail(scale.spec(), lambda).value;
    const double delta = 1.0 / (static_cast<double>(q) + static_cast<double>(q_prev) * t);
    return a >= q_prev ? delta : delta * (1.0 + t);
}

namespace {

std::vector<std::uint64_t> psi_histogram(std::size_t lambda, std::uint64_t N, const ConvergentTable& scale) {
    if (N < 1) throw RangeError("density check needs N >= 1");
    if (N > scale.capacity()) throw RangeError("N exceeds the scale capacity");
    std::vector<std::uint64_t> histogram(scale.q(lambda), 0);
    OstrowskiCounter counter(scale);
    for (std::uint64_t n = 0; n < N; ++n) {
        if (n > 0) counter.increment();
        std::uint64_t psi_n = 0;
        for (std::size_t k = 0; k < lambda; ++k) psi_n += counter.digit(k) * scale.q(k);
        ++histogram[psi_n];
    }
    return histogram;
}

void record_density(CheckReport& report, std::size_t lambda, std::uint64_t a, std::uint64_t N, std::uint64_t hits,
                    const ConvergentTable& scale) {
    const double empirical = static_cast<double>(hits) / static_cast<double>(N);
    const double deviation = std::abs(empirical - density_formula(lambda, a, scale));
    report.record("lambda=" + std::to_string(lambda) + " a=" + std::to_string(a) + " N=" + std::to_string(N),
                  deviation, kDensityTolerance, deviation < kDensityTolerance);
}

}  // namespace

CheckReport density_check(std::size_t lambda, std::uint64_t a, std::uint64_t N, const ConvergentTable& scale) {
    require_lambda(lambda, scale);
    if (a >= scale.q(lambda)) throw RangeError("density needs a < q_lambda");
    const auto histogram = psi_histogram(lambda, N, scale);
    CheckReport report;
    report.check_name = "density";
    record_density(report, lambda, a, N, histogram[a], scale);
    return report;
}

CheckReport density_sweep(std::size_t lambda, std::uint64_t N, const ConvergentTable& scale) {
    require_lambda(lambda, scale);
    const auto histogram = psi_histogram(lambda, N, scale);
    CheckReport report;
    report.check_name = "density";
    double total = 0.0;
    for (std::uint64_t a = 0; a < histogram.size(); ++a) {
        record_density(report, lambda, a, N, histogram[a], scale);
        total += density_formula(lambda, a, scale);
    }
    const double deviation = std::abs(total - 1.0);
    report.record("lambda=" + std::to_string(lambda) + " sum of densities", deviation, kIdentityTolerance,
                  deviation <= kIdentityTolerance);
    return report;
}

// ---------------------------------------------------------------------------
// Gap structure

CheckReport gap_structure_check(std::size_t lambda, std::size_t count, const ConvergentTable& scale) {
    require_lambda(lambda, scale);
    const Quotient a_next = scale.spec().quotient(lambda + 1);
    const std::uint64_t long_gap = scale.q(lambda);
    const std::uint64_t short_gap = scale.q(lambda - 1);

    // Brute force: every n whose low lambda digits vanish, with eps_lambda(n).
    std::vector<std::uint64_t> starts;
    std::vector<Digit> top_digit;
    starts.reserve(count + 1);
    top_digit.reserve(count + 1);
    OstrowskiCounter counter(scale);
    for (std::uint64_t n = 0; starts.size() < count + 1; ++n) {
        if (n > 0) counter.increment();
        bool low_zero = true;
        for (std::size_t k = 0; k < lambda && low_zero; ++k) low_zero = counter.digit(k) == 0;
        if (low_zero) {
            starts.push_back(n);
            top_digit.push_back(counter.digit(lambda));
        }
    }
    const BlockIndex index = w_sequence(lambda, count + 1, scale);

    CheckReport report;
    report.check_name = "gaps";
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t gap = starts[i + 1] - starts[i];
        const bool expect_short = top_digit[i] == a_next;
        const BlockKind expected = expect_short ? BlockKind::short_gap : BlockKind::long_gap;
        const bool ok = index.starts[i] == starts[i] && index.starts[i + 1] == starts[i + 1] &&
                        (gap == long_gap || gap == short_gap) && index.kinds[i] == expected &&
                        gap == (expect_short ? short_gap : long_gap);
        report.record("lambda=" + std::to_string(lambda) + " block=" + std::to_string(i), ok ? 0.0 : 1.0, 0.0, ok);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Experiments

PseudorandomnessReport pseudorandomness_experiment(const ExperimentConfig& config) {
    const auto start = Clock::now();
    const ConvergentTable scale = expand_max(QuotientSpec::parse(config.alpha_spec));
    const AlphaFunction g = parse_function(config.fn_spec, scale);
    config.validate(scale);

    PseudorandomnessReport report;
    report.config = config;
    const std::size_t R_max = *std::max_element(config.R_list.begin(), config.R_list.end());
    const std::vector<Complex> values = g.sample(config.N + R_max - 1);
    const auto profile_start = Clock::now();
    const CorrelationProfile profile = correlation_profile(values, R_max, config.N, config.threads);
    report.profile_seconds = seconds_since(profile_start);
    for (std::size_t R : config.R_list) {
        const MeanPair m = profile_means(profile.gamma, R);
        report.rows.push_back({R, m.quadratic, m.absolute});
    }
    for (std::size_t lambda : config.lambda_list) {
        const FourierTable t = fourier_coeffs(g, lambda);
        ConcentrationRow row{lambda, t.q, 0.0, 0.0};
        for (const Complex& G : t.G) row.max_power = std::max(row.max_power, std::norm(G));
        row.fourth_moment = pairwise_sum_real(0, t.G.size(), [&](std::size_t h) {
            const double p = std::norm(t.G[h]);
            return p * p;
        });
        report.concentration.push_back(row);
    }
    report.total_seconds = seconds_since(start);
    return report;
}

SpectrumReport spectrum_experiment(const ExperimentConfig& config) {
    const auto start = Clock::now();
    const ConvergentTable scale = expand_max(QuotientSpec::parse(config.alpha_spec));
    const AlphaFunction g = parse_function(config.fn_spec, scale);
    config.validate(scale);

    SpectrumReport report;
    report.config = config;
    std::vector<std::uint64_t> ladder;
    for (std::uint64_t N = 10000; N < config.N; N *= 2) ladder.push_back(N);
    ladder.push_back(config.N);
    const std::vector<Complex> values = g.sample(config.N);
    for (std::uint64_t N : ladder) {
        const auto t0 = Clock::now();
        const SpectrumScan scan = spectrum_scan(std::span<const Complex>(values).first(N), config.grid, config.threads);
        report.peaks.push_back({N, scan.beta_peak, scan.peak_value, seconds_since(t0)});
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit_interval(0.0, 1.0);
    for (int trial = 0; trial < 16; ++trial) {
        ScaleSumRow row;
        row.beta = unit_interval(rng);
        const std::vector<Complex> S = scale_sums(g, row.beta, scale.max_index());
        for (const Complex& s : S) row.magnitudes.push_back(std::abs(s));
        row.contraction_excess = -1.0;
        for (std::size_t i = 1; i + 1 < S.size(); ++i) {
            const double excess = row.magnitudes[i + 1] - std::max(row.magnitudes[i], row.magnitudes[i - 1]);
            row.contraction_excess = std::max(row.contraction_excess, excess);
        }
        report.worst_contraction_excess =
            trial == 0 ? row.contraction_excess : std::max(report.worst_contraction_excess, row.contraction_excess);
        report.scale_sums.push_back(std::move(row));
    }
    report.total_seconds = seconds_since(start);
    return report;
}

// ---------------------------------------------------------------------------
// verify_all

namespace {

std::mt19937_64 family_rng(std::uint64_t seed, std::size_t family_index) {
    // Each family draws from its own stream so --only reproduces the full run.
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(family_index)};
    return std::mt19937_64(seq);
}

std::vector<AlphaFunction> identity_functions(const AlphaFunction& g) {
    std::vector<AlphaFunction> out{g};
    for (double theta : {0.5, 1.0 / 3.0, 0.1234567, 0.0}) out.push_back(AlphaFunction::from_theta(theta, g.scale()));
    return out;
}

CheckReport run_fejer(std::mt19937_64 rng) {
    CheckReport report;
    report.check_name = "fejer";
    std::uniform_int_distribution<std::size_t> R_dist(1, 64);
    std::uniform_real_distribution<double> x_dist(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const std::size_t R = R_dist(rng);
        const double x = x_dist(rng);
        const FejerCheck c = fejer_check(R, x);
        const double tol = kIdentityTolerance * static_cast<double>(R * R);
        report.record("R=" + std::to_string(R) + " x=" + num(x), c.delta, tol, c.delta <= tol);
    }
    return report;
}

CheckReport run_sieve(std::mt19937_64 rng) {
    CheckReport report;
    report.check_name = "sieve";
    std::uniform_int_distribution<std::size_t> dist(1, 128);
    std::uniform_real_distribution<double> t_dist(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const std::size_t H = dist(rng);
        const std::size_t R = dist(rng);
        const double t = t_dist(rng);
        const SieveCheck c = large_sieve_check(H, R, t);
        report.record("H=" + std::to_string(H) + " R=" + std::to_string(R) + " t=" + num(t), c.lhs,
                      c.bound + kSieveSlack, c.ok);
    }
    return report;
}

CheckReport run_vdc(std::mt19937_64 rng) {
    CheckReport report;
    report.check_name = "vdc";
    std::uniform_int_distribution<std::size_t> N_dist(1, 256);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const std::size_t N = N_dist(rng);
        const std::size_t R = std::uniform_int_distribution<std::size_t>(1, N)(rng);
        std::vector<Complex> a(N);
        for (auto& x : a) x = Complex(normal(rng), normal(rng));
        const VdcCheck c = vdc_check(a, R);
        const double slack = 1e-9 * static_cast<double>(N) * static_cast<double>(N);
        report.record("N=" + std::to_string(N) + " R=" + std::to_string(R), c.lhs, c.rhs.real() + slack, c.ok);
    }
    return report;
}

CheckReport run_parseval(const AlphaFunction& g) {
    CheckReport report;
    report.check_name = "parseval";
    const ConvergentTable& scale = g.scale();
    for (const AlphaFunction& f : identity_functions(g)) {
        const double tol = kIdentityTolerance * std::max(1.0, f.modulus_bound() * f.modulus_bound());
        for (std::size_t lambda = 1; lambda <= scale.max_index() && scale.q(lambda) <= kDirectFourierLimit; ++lambda) {
            const FourierTable t = fourier_coeffs(f, lambda);
            const IdentityCheck c = parseval_check(t, f.sample(t.q));
            report.record("lambda=" + std::to_string(lambda), c.delta, tol, c.delta <= tol);
        }
    }
    return report;
}

CheckReport run_cyclic(const AlphaFunction& g) {
    CheckReport report;
    report.check_name = "cyclic";
    const ConvergentTable& scale = g.scale();
    for (const AlphaFunction& f : identity_functions(g)) {
        for (std::size_t lambda = 1; lambda <= scale.max_index() && scale.q(lambda) <= 1024; ++lambda) {
            const FourierTable t = fourier_coeffs(f, lambda);
            const std::vector<Complex> window = f.sample(t.q);
            const double tol = kIdentityTolerance * static_cast<double>(t.q) *
                               std::max(1.0, f.modulus_bound() * f.modulus_bound());
            for (std::uint64_t r = 0; r <= std::min<std::uint64_t>(t.q, 64); ++r) {
                const IdentityCheck c = cyclic_identity_check(t, window, r);
                report.record("lambda=" + std::to_string(lambda) + " r=" + std::to_string(r), c.delta, tol,
                              c.delta <= tol);
            }
        }
    }
    return report;
}

constexpr std::uint64_t kCarryMaxShift = 20000;

CheckReport run_carry(const AlphaFunction& g, unsigned threads) {
    CheckReport report;
    report.check_name = "carry";
    const ConvergentTable& scale = g.scale();
    const std::vector<std::uint64_t> Ns = {1000, 10000, 100000};
    for (std::size_t lambda = 1; lambda <= 12 && lambda <= scale.max_index(); ++lambda) {
        if (scale.q(lambda - 1) > kCarryMaxShift) break;
        report.merge(carry_bound_sweep(g, lambda, Ns, threads));
    }
    return report;
}

CheckReport run_density(const ConvergentTable& scale) {
    CheckReport report;
    report.check_name = "density";
    for (std::size_t lambda = 1; lambda <= 6 && lambda <= scale.max_index(); ++lambda) {
        report.merge(density_sweep(lambda, 1000000, scale));
    }
    return report;
}

CheckReport run_gaps(const ConvergentTable& scale) {
    CheckReport report;
    report.check_name = "gaps";
    for (std::size_t lambda = 1; lambda <= 8 && lambda <= scale.max_index(); ++lambda) {
        report.merge(gap_structure_check(lambda, 10000, scale));
    }
    return report;
}

}  // namespace

bool VerifyReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed(); });
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) list.push_back(c.to_json());
    return {{"passed", passed()}, {"seconds", seconds}, {"checks", list}};
}

VerifyReport verify_all(const ExperimentConfig& config) {
    const auto start = Clock::now();
    const ConvergentTable scale = expand_max(QuotientSpec::parse(config.alpha_spec));
    const AlphaFunction g = parse_function(config.fn_spec, scale);
    const auto& families = check_families();
    if (config.only && std::find(families.begin(), families.end(), *config.only) == families.end()) {
        throw UsageError("unknown check family '" + *config.only + "'");
    }

    VerifyReport report;
    for (std::size_t index = 0; index < families.size(); ++index) {
        const std::string& family = families[index];
        if (config.only && *config.only != family) continue;
        const auto rng = family_rng(config.seed, index);
        if (family == "fejer") report.checks.push_back(run_fejer(rng));
        if (family == "sieve") report.checks.push_back(run_sieve(rng));
        if (family == "vdc") report.checks.push_back(run_vdc(rng));
        if (family == "parseval") report.checks.push_back(run_parseval(g));
        if (family == "cyclic") report.checks.push_back(run_cyclic(g));
        if (family == "carry") report.checks.push_back(run_carry(g, config.threads));
        if (family == "density") report.checks.push_back(run_density(scale));
        if (family == "gaps") report.checks.push_back(run_gaps(scale));
    }
    report.seconds = seconds_since(start);
    return report;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const PseudorandomnessReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"R", r.R}, {"quadratic_mean", r.quadratic_mean}, {"absolute_mean", r.absolute_mean}});
    }
    nlohmann::json conc = nlohmann::json::array();
    for (const auto& c : report.concentration) {
        conc.push_back({{"lambda", c.lambda}, {"q", c.q}, {"max_power", c.max_power}, {"fourth_moment", c.fourth_moment}});
    }
    return {{"config", report.config.to_json()},
            {"decay", rows},
            {"concentration", conc},
            {"profile_seconds", report.profile_seconds},
            {"total_seconds", report.total_seconds}};
}

nlohmann::json to_json(const SpectrumReport& report) {
    nlohmann::json peaks = nlohmann::json::array();
    for (const auto& p : report.peaks) {
        peaks.push_back({{"N", p.N}, {"beta_peak", p.beta_peak}, {"peak_value", p.peak_value}, {"seconds", p.seconds}});
    }
    nlohmann::json sums = nlohmann::json::array();
    for (const auto& s : report.scale_sums) {
        sums.push_back({{"beta", s.beta}, {"magnitudes", s.magnitudes}, {"contraction_excess", s.contraction_excess}});
    }
    return {{"config", report.config.to_json()},
            {"peaks", peaks},
            {"scale_sums", sums},
            {"worst_contraction_excess", report.worst_contraction_excess},
            {"total_seconds", report.total_seconds}};
}

std::string to_csv(const PseudorandomnessReport& report) {
    std::ostringstream out;
    out << report.config.csv_header() << '\n';
    out << "R,quadratic_mean,absolute_mean\n";
    for (const auto& r : report.rows) out << r.R << ',' << num(r.quadratic_mean) << ',' << num(r.absolute_mean) << '\n';
    for (const auto& c : report.concentration) {
        out << "# concentration lambda=" << c.lambda << " q=" << c.q << " max_power=" << num(c.max_power)
            << " fourth_moment=" << num(c.fourth_moment) << '\n';
    }
    out << "# runtime profile_seconds=" << num(report.profile_seconds) << " total_seconds=" << num(report.total_seconds)
        << '\n';
    return out.str();
}

std::string to_csv(const SpectrumReport& report) {
    std::ostringstream out;
    out << report.config.csv_header() << '\n';
    out << "section,N,beta,i,value\n";
    for (const auto& p : report.peaks) out << "peak," << p.N << ',' << num(p.beta_peak) << ",," << num(p.peak_value) << '\n';
    for (const auto& s : report.scale_sums) {
        for (std::size_t i = 0; i < s.magnitudes.size(); ++i) {
            out << "scale_sum,," << num(s.beta) << ',' << i << ',' << num(s.magnitudes[i]) << '\n';
        }
    }
    out << "# worst_contraction_excess=" << num(report.worst_contraction_excess)
        << " total_seconds=" << num(report.total_seconds) << '\n';
    return out.str();
}

std::string to_csv(const VerifyReport& report, const ExperimentConfig& config) {
    std::ostringstream out;
    out << config.csv_header() << '\n';
    out << "check,instances_run,instances_passed,worst_margin\n";
    for (const auto& c : report.checks) {
        out << c.check_name << ',' << c.instances_run << ',' << c.instances_passed << ',' << num(c.worst_margin) << '\n';
    }
    for (const auto& c : report.checks) {
        for (const auto& d : c.details) {
            out << "# failure " << c.check_name << ' ' << d.instance << " observed=" << num(d.observed)
                << " bound=" << num(d.bound) << '\n';
        }
    }
    return out.str();
}

}  // namespace ostrowski
