#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ostrowski/spectral.hpp"

namespace ostrowski {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
    std::string alpha_spec = "golden";
    std::string fn_spec = "theta:1/2";
    std::uint64_t N = 2'000'000;
    std::vector<std::size_t> R_list = {32, 64, 128, 256, 512, 1024, 2048, 4096};
    std::vector<std::size_t> lambda_list;
    std::uint64_t seed = 1;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    unsigned threads = 0;
    std::size_t grid = kDefaultSpectrumGrid;
    // verify_all: run a single check family when set.
    std::optional<std::string> only;

    // Throws UsageError unless N >= max(R_list) and q_lambda <= N for every
    // lambda in lambda_list.
    void validate(const ConvergentTable& scale) const;

    nlohmann::json to_json() const;
    // One-line "# config {...}" header for CSV output.
    std::string csv_header() const;
};

// One failed instance of a check.
struct FailureRecord {
    std::string instance;
    double observed = 0.0;
    double bound = 0.0;

    friend bool operator==(const FailureRecord&, const FailureRecord&) = default;
};

// Pass/fail tally of a family of check instances. The margin of an instance
// is bound - observed, so negative margins are violations; worst_margin is
// the smallest margin seen, kept on a full pass too.
struct CheckReport {
    std::string check_name;
    std::uint64_t instances_run = 0;
    std::uint64_t instances_passed = 0;
    double worst_margin = 0.0;
    std::vector<FailureRecord> details;

    bool passed() const noexcept { return instances_passed == instances_run; }

    // Adds one instance. `ok` is passed separately because exact checks
    // decide in integer arithmetic rather than by the sign of the margin.
    void record(const std::string& instance, double observed, double bound, bool ok);
    void merge(const CheckReport& other);

    nlohmann::json to_json() const;
    static CheckReport from_json(const nlohmann::json& doc);

    friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

// Counts n < N with g(n+r) conj g(n) != g_lambda(n+r) conj g_lambda(n) and
// compares count * q_{lambda-1} <= N * r exactly.
CheckReport carry_bound_check(const AlphaFunction& g, std::size_t lambda, std::uint64_t r, std::uint64_t N);

// Every r < q_{lambda-1} for each N in Ns, sharing one precomputed table.
CheckReport carry_bound_sweep(const AlphaFunction& g, std::size_t lambda, const std::vector<std::uint64_t>& Ns,
                              unsigned threads = 0);

// Limit density of {n : psi_lambda(n) = a}:
//   1/(q_lambda + q_{lambda-1} t)        if a >= q_{lambda-1},
//   (1 + t)/(q_lambda + q_{lambda-1} t)  otherwise,
// with t = [0; a_{lambda+1}, a_{lambda+2}, ...].
double density_formula(std::size_t lambda, std::uint64_t a, const ConvergentTable& scale);

inline constexpr double kDensityTolerance = 0.005;
inline constexpr double kIdentityTolerance = 1e-10;

CheckReport density_check(std::size_t lambda, std::uint64_t a, std::uint64_t N, const ConvergentTable& scale);

// All a < q_lambda from one histogram, plus the instance sum_a formula(a) = 1.
CheckReport density_sweep(std::size_t lambda, std::uint64_t N, const ConvergentTable& scale);

// w_sequence against a brute-force scan of the low digits over the first
// `count` blocks: starts, gap lengths and the short-gap criterion.
CheckReport gap_structure_check(std::size_t lambda, std::size_t count, const ConvergentTable& scale);

// ---------------------------------------------------------------------------
// Experiments

struct DecayRow {
    std::size_t R = 0;
    double quadratic_mean = 0.0;
    double absolute_mean = 0.0;
};

// Fourier concentration of g_lambda: sum_h |G(h)|^4 equals the full-period
// quadratic mean of the cyclic correlations.
struct ConcentrationRow {
    std::size_t lambda = 0;
    std::uint64_t q = 0;
    double max_power = 0.0;
    double fourth_moment = 0.0;
};

struct PseudorandomnessReport {
    ExperimentConfig config;
    std::vector<DecayRow> rows;
    std::vector<ConcentrationRow> concentration;
    double profile_seconds = 0.0;
    double total_seconds = 0.0;
};

PseudorandomnessReport pseudorandomness_experiment(const ExperimentConfig& config);

struct PeakRow {
    std::uint64_t N = 0;
    double beta_peak = 0.0;
    double peak_value = 0.0;
    double seconds = 0.0;
};

struct ScaleSumRow {
    double beta = 0.0;
    std::vector<double> magnitudes;  // |S_i| for i = 0..K
    // max_i |S_{i+1}| - max(|S_i|, |S_{i-1}|); at most 1e-12 for unimodular g.
    double contraction_excess = 0.0;
};

struct SpectrumReport {
    ExperimentConfig config;
    std::vector<PeakRow> peaks;
    std::vector<ScaleSumRow> scale_sums;
    double worst_contraction_excess = 0.0;
    double total_seconds = 0.0;
};

// Spectrum peaks along N = 1e4, 2e4, 4e4, ... below config.N, then config.N;
// |S_i| for 16 seeded random beta.
SpectrumReport spectrum_experiment(const ExperimentConfig& config);

inline const std::vector<std::string>& check_families() {
    static const std::vector<std::string> families = {"fejer",  "sieve", "vdc",     "parseval",
                                                      "cyclic", "carry", "density", "gaps"};
    return families;
}

struct VerifyReport {
    std::vector<CheckReport> checks;
    double seconds = 0.0;

    bool passed() const noexcept;
    nlohmann::json to_json() const;
};

// Parses alpha and function first (so a corrupted atom table fails with
// ValidationError before any check runs), then runs the default sweeps of
// every family or of config.only.
VerifyReport verify_all(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const PseudorandomnessReport& report);
nlohmann::json to_json(const SpectrumReport& report);
std::string to_csv(const PseudorandomnessReport& report);
std::string to_csv(const SpectrumReport& report);
std::string to_csv(const VerifyReport& report, const ExperimentConfig& config);

}  // namespace ostrowski
