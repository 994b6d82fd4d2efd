#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "oracles.hpp"
#include "ostrowski/error.hpp"
#include "ostrowski/harness.hpp"

using namespace ostrowski;

namespace {

// Brute-force carry count straight from the definition: g and g o psi_lambda
// evaluated through the greedy encoder for every n.
std::uint64_t brute_carry_count(const AlphaFunction& g, std::size_t lambda, std::uint64_t r, std::uint64_t N) {
    const ConvergentTable& scale = g.scale();
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n < N; ++n) {
        const Complex full = g.eval(n + r) * std::conj(g.eval(n));
        const Complex low = g.eval(psi(n + r, lambda, scale)) * std::conj(g.eval(psi(n, lambda, scale)));
        if (std::abs(full - low) > 1e-12) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("check report bookkeeping and JSON round trip") {
    CheckReport report;
    report.check_name = "demo";
    report.record("a", 1.0, 3.0, true);
    report.record("b", 5.0, 4.0, false);
    report.record("c", 0.5, 2.0, true);
    CHECK(report.instances_run == 3);
    CHECK(report.instances_passed == 2);
    CHECK(report.worst_margin == -1.0);
    CHECK_FALSE(report.passed());
    REQUIRE(report.details.size() == 1);
    CHECK(report.details[0] == FailureRecord{"b", 5.0, 4.0});

    CHECK(CheckReport::from_json(report.to_json()) == report);
    CHECK(CheckReport::from_json(nlohmann::json::parse(report.to_json().dump())) == report);

    CheckReport awkward;
    awkward.check_name = "precision";
    awkward.record("x", 0.1 + 0.2, 1.0 / 3.0, true);
    CHECK(CheckReport::from_json(nlohmann::json::parse(awkward.to_json().dump())) == awkward);
    CHECK(awkward.worst_margin == 1.0 / 3.0 - (0.1 + 0.2));

    CheckReport merged;
    merged.merge(awkward);
    merged.merge(report);
    CHECK(merged.instances_run == 4);
    CHECK(merged.worst_margin == -1.0);

    CHECK_THROWS_AS((void)CheckReport::from_json(nlohmann::json::object()), ValidationError);
}

TEST_CASE("config validation") {
    const auto golden = expand_max(QuotientSpec::golden());
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate(golden));
    c.N = 100;
    CHECK_THROWS_AS(c.validate(golden), UsageError);
    c.R_list = {10, 100};
    CHECK_NOTHROW(c.validate(golden));
    c.lambda_list = {10};  // q_10 = 89
    CHECK_NOTHROW(c.validate(golden));
    c.lambda_list = {11};  // q_11 = 144
    CHECK_THROWS_AS(c.validate(golden), UsageError);
    CHECK(c.csv_header().rfind("# config {", 0) == 0);
}

TEST_CASE("carry bound examples") {
    const auto golden = expand_max(QuotientSpec::golden());
    const auto g = AlphaFunction::from_theta(0.5, golden);
    const auto zero = carry_bound_check(g, 3, 0, 1000);
    CHECK(zero.passed());
    CHECK(zero.worst_margin == 0.0);

    const auto small = carry_bound_check(g, 3, 1, 8);
    CHECK(small.passed());
    CHECK(brute_carry_count(g, 3, 1, 8) <= 4);
    CHECK(small.worst_margin == 4.0 - static_cast<double>(brute_carry_count(g, 3, 1, 8)));

    CHECK_THROWS_AS((void)carry_bound_check(g, 0, 1, 8), RangeError);
}

TEST_CASE("carry counts match the definition") {
    for (const char* spec : {"golden", "silver", "periodic:/1,2,3,1,1,4"}) {
        const auto table = expand_max(QuotientSpec::parse(spec));
        for (double theta : {0.5, 1.0 / 3.0, 0.1234567}) {
            const auto g = AlphaFunction::from_theta(theta, table);
            for (std::size_t lambda = 1; lambda <= 5; ++lambda) {
                for (std::uint64_t r = 0; r < table.q(lambda - 1) && r < 12; ++r) {
                    const auto report = carry_bound_check(g, lambda, r, 2000);
                    const double bound = 2000.0 * static_cast<double>(r) / static_cast<double>(table.q(lambda - 1));
                    CHECK(report.worst_margin == bound - static_cast<double>(brute_carry_count(g, lambda, r, 2000)));
                    CHECK(report.passed());
                }
            }
        }
    }
}

TEST_CASE("carry sweep agrees with single checks") {
    const auto silver = expand_max(QuotientSpec::silver());
    const auto g = AlphaFunction::from_theta(0.5, silver);
    const auto sweep = carry_bound_sweep(g, 4, {3000, 1000});
    CHECK(sweep.instances_run == 2 * silver.q(3));
    CHECK(sweep.passed());
    CheckReport singles;
    for (std::uint64_t r = 0; r < silver.q(3); ++r) {
        for (std::uint64_t N : {1000, 3000}) singles.merge(carry_bound_check(g, 4, r, N));
    }
    CHECK(singles.worst_margin == sweep.worst_margin);
}

TEST_CASE("density formula and examples") {
    const auto golden = expand_max(QuotientSpec::golden());
    CHECK(density_formula(2, 0, golden) == doctest::Approx(0.618034).epsilon(1e-6));
    CHECK(density_formula(2, 1, golden) == doctest::Approx(0.381966).epsilon(1e-6));
    CHECK_THROWS_AS((void)density_formula(2, 2, golden), RangeError);

    const auto a0 = density_check(2, 0, 1000000, golden);
    CHECK(a0.passed());
    CHECK(a0.worst_margin > 0.0);
    CHECK(density_check(2, 1, 1000000, golden).passed());

    for (const char* spec : {"golden", "silver", "periodic:/1,2", "periodic:/1,2,3,1,1,4"}) {
        const auto table = expand_max(QuotientSpec::parse(spec));
        for (std::size_t lambda = 1; lambda <= 6; ++lambda) {
            double total = 0.0;
            for (std::uint64_t a = 0; a < table.q(lambda); ++a) total += density_formula(lambda, a, table);
            CHECK(std::abs(total - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("density sweep counts every residue once") {
    const auto silver = expand_max(QuotientSpec::silver());
    const auto report = density_sweep(3, 200000, silver);
    CHECK(report.instances_run == silver.q(3) + 1);
    CHECK(report.passed());
}

TEST_CASE("gap structure examples") {
    const auto golden = expand_max(QuotientSpec::golden());
    const auto silver = expand_max(QuotientSpec::silver());
    const auto g2 = gap_structure_check(2, 10000, golden);
    CHECK(g2.instances_run == 10000);
    CHECK(g2.passed());
    CHECK(gap_structure_check(1, 1000, silver).passed());
    const auto g1 = gap_structure_check(1, 1000, golden);
    CHECK(g1.passed());
    const auto w = w_sequence(1, 1000, golden);
    for (std::size_t i = 0; i + 1 < w.starts.size(); ++i) CHECK(w.starts[i + 1] - w.starts[i] == 1);
}

TEST_CASE("pseudorandomness experiment") {
    ExperimentConfig c;
    c.fn_spec = "theta:0";
    c.N = 5000;
    c.R_list = {1, 8, 64};
    c.lambda_list = {5};
    const auto control = pseudorandomness_experiment(c);
    REQUIRE(control.rows.size() == 3);
    for (const auto& row : control.rows) {
        CHECK(row.quadratic_mean == 1.0);
        CHECK(row.absolute_mean == 1.0);
    }
    REQUIRE(control.concentration.size() == 1);
    CHECK(control.concentration[0].max_power == doctest::Approx(1.0));

    c.fn_spec = "theta:1/2";
    c.N = 20000;
    const auto report = pseudorandomness_experiment(c);
    const auto values = expand_max(QuotientSpec::golden());
    const auto g = AlphaFunction::from_theta(0.5, values);
    const auto sample = g.sample(20000 + 63);
    for (const auto& row : report.rows) {
        double q = 0.0;
        for (std::size_t r = 0; r < row.R; ++r) q += std::norm(oracle::naive_correlation(sample, r, 20000));
        CHECK(row.quadratic_mean == doctest::Approx(q / static_cast<double>(row.R)).epsilon(1e-10));
    }
    CHECK(report.rows.back().quadratic_mean < report.rows.front().quadratic_mean);

    const auto json = to_json(report);
    CHECK(json["decay"].size() == 3);
    const std::string csv = to_csv(report);
    CHECK(csv.rfind("# config {", 0) == 0);
    CHECK(csv.find("R,quadratic_mean,absolute_mean\n") != std::string::npos);

    c.R_list = {30000};
    CHECK_THROWS_AS((void)pseudorandomness_experiment(c), UsageError);
}

TEST_CASE("spectrum experiment") {
    ExperimentConfig c;
    c.fn_spec = "theta:0";
    c.N = 40000;
    c.grid = 256;
    const auto control = spectrum_experiment(c);
    REQUIRE(control.peaks.size() == 3);  // 1e4, 2e4, 4e4
    CHECK(control.peaks[0].N == 10000);
    CHECK(control.peaks.back().N == 40000);
    for (const auto& p : control.peaks) CHECK(p.peak_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(control.scale_sums.size() == 16);
    CHECK(control.worst_contraction_excess <= 1e-12);

    c.fn_spec = "theta:1/2";
    const auto report = spectrum_experiment(c);
    CHECK(report.worst_contraction_excess <= 1e-12);
    const auto again = spectrum_experiment(c);
    CHECK(to_json(again)["scale_sums"] == to_json(report)["scale_sums"]);
    CHECK(to_csv(report).find("section,N,beta,i,value\n") != std::string::npos);
}

TEST_CASE("verify_all gates on the atom table") {
    const std::string path = "test_harness_corrupt.json";
    {
        std::ofstream out(path);
        out << R"({"2": [[0.5, 0], [0, 1]]})";
    }
    ExperimentConfig c;
    c.fn_spec = "json:" + path;
    CHECK_THROWS_AS((void)verify_all(c), ValidationError);
    std::remove(path.c_str());

    c.fn_spec = "theta:1/2";
    c.only = "nonsense";
    CHECK_THROWS_AS((void)verify_all(c), UsageError);
}

TEST_CASE("verify_all single families are deterministic") {
    ExperimentConfig c;
    for (const char* family : {"fejer", "sieve", "vdc", "parseval", "cyclic"}) {
        c.only = family;
        const auto first = verify_all(c);
        REQUIRE(first.checks.size() == 1);
        CHECK(first.checks[0].check_name == family);
        CHECK(first.passed());
        const auto second = verify_all(c);
        CHECK(first.checks[0] == second.checks[0]);
    }
}

TEST_CASE("verify_all full suite on golden") {
    ExperimentConfig c;
    const auto report = verify_all(c);
    CHECK(report.checks.size() == check_families().size());
    for (const auto& check : report.checks) {
        CAPTURE(check.check_name);
        CHECK(check.passed());
        CHECK(check.instances_run > 0);
    }
    CHECK(report.passed());
    const auto json = report.to_json();
    CHECK(json["passed"] == true);
    CHECK(to_csv(report, c).find("check,instances_run,instances_passed,worst_margin\n") != std::string::npos);

    // Worker count does not change the reports.
    c.threads = 3;
    c.only = "carry";
    const auto threaded = verify_all(c);
    CHECK(threaded.checks[0] == report.checks[5]);
}
