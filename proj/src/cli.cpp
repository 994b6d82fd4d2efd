#include "ostrowski/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ostrowski/error.hpp"
#include "ostrowski/harness.hpp"

namespace ostrowski::cli {

namespace {

struct GlobalOptions {
    std::string alpha = "golden";
    std::string fn = "theta:1/2";
    std::string out;
    std::string format;  // empty: per-command default
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

OutputFormat resolve_format(const GlobalOptions& g, OutputFormat fallback) {
    if (g.format.empty()) return fallback;
    return g.format == "json" ? OutputFormat::json : OutputFormat::csv;
}

nlohmann::json base_config(const std::string& command, const GlobalOptions& g) {
    return {{"command", command}, {"alpha", g.alpha}, {"fn", g.fn}, {"seed", g.seed}, {"threads", g.threads}};
}

std::vector<Digit> parse_digits(const std::string& text) {
    std::vector<Digit> digits;
    if (text.empty()) return digits;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        Digit d = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
        if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
            throw UsageError("bad digit list '" + text + "'");
        }
        digits.push_back(d);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return digits;
}

// Key/value rows for the single-integer commands in CSV form.
std::string scalar_csv(const nlohmann::json& config, const nlohmann::json& doc) {
    std::ostringstream out;
    out << "# config " << config.dump() << "\nfield,value\n";
    for (const auto& [key, value] : doc.items()) {
        if (key == "psi") {
            for (const auto& [lambda, v] : value.items()) out << "psi_" << lambda << ',' << v.dump() << '\n';
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& d : value) joined += (joined.empty() ? "" : ";") + d.dump();
            out << key << ',' << joined << '\n';
        } else {
            out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        }
    }
    return out.str();
}

nlohmann::json digit_report(std::uint64_t n, const ConvergentTable& scale, const std::vector<std::size_t>& lambdas) {
    const DigitString digits = encode(n, scale);
    std::uint64_t sum = 0;
    for (Digit d : digits) sum += d;
    nlohmann::json psi_values = nlohmann::json::object();
    std::vector<std::size_t> levels = lambdas;
    if (levels.empty()) {
        for (std::size_t lambda = 0; lambda <= digits.size(); ++lambda) levels.push_back(lambda);
    }
    for (std::size_t lambda : levels) psi_values[std::to_string(lambda)] = psi(n, lambda, scale);
    return {{"n", n}, {"digits", digits}, {"sigma", sum}, {"psi", psi_values}};
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ostrowski numeration and spectral analysis of alpha-multiplicative functions", "ostrowski"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--alpha", g.alpha, "golden | silver | periodic:<pre>/<period> | list:<a,b,...>")
        ->capture_default_str();
    app.add_option("--fn", g.fn, "theta:<x> | beta:<x> | theta:<x>+beta:<y> | json:<path>")->capture_default_str();
    app.add_option("--out", g.out, "write results to this file instead of stdout");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", g.seed, "seed for randomized sweeps")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads, 0 = all cores")->capture_default_str();

    auto* encode_cmd = app.add_subcommand("encode", "Ostrowski digits of n");
    auto* sigma_cmd = app.add_subcommand("sigma", "digit sum of n (same fields as encode)");
    std::uint64_t n = 0;
    std::vector<std::size_t> psi_levels;
    for (auto* cmd : {encode_cmd, sigma_cmd}) {
        cmd->add_option("--n", n, "nonnegative integer")->required();
        cmd->add_option("--lambda", psi_levels, "truncation levels for psi (default: every level)")->delimiter(',');
    }

    auto* decode_cmd = app.add_subcommand("decode", "integer from Ostrowski digits");
    std::string digit_text;
    decode_cmd->add_option("--digits", digit_text, "comma-separated digits, least significant first")->required();

    auto* convergents_cmd = app.add_subcommand("convergents", "table of a_i, p_i, q_i");
    std::optional<std::size_t> K;
    convergents_cmd->add_option("--K", K, "largest index (default: largest supported)");

    auto* correlate_cmd = app.add_subcommand("correlate", "autocorrelation profile gamma_r, r < R");
    std::size_t R = 64;
    std::uint64_t N = 10000;
    correlate_cmd->add_option("--R", R, "number of shifts")->capture_default_str();
    correlate_cmd->add_option("--N", N, "truncation")->capture_default_str();

    auto* fourier_cmd = app.add_subcommand("fourier", "Fourier coefficients G_lambda(h), h < q_lambda");
    std::size_t fourier_lambda = 0;
    std::uint64_t cap = kDefaultFourierCap;
    fourier_cmd->add_option("--lambda", fourier_lambda, "level")->required();
    fourier_cmd->add_option("--cap", cap, "largest transform length")->capture_default_str();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "sup over beta of the normalized exponential sum");
    std::uint64_t spectrum_N = 10000;
    std::size_t grid = kDefaultSpectrumGrid;
    spectrum_cmd->add_option("--N", spectrum_N, "truncation")->capture_default_str();
    spectrum_cmd->add_option("--grid", grid, "grid points on [0, 1)")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    std::string only;
    verify_cmd->add_option("--only", only, "run a single check family")->check(CLI::IsMember(check_families()));

    auto* experiment_cmd = app.add_subcommand("experiment", "pseudorandomness or spectrum experiment");
    ExperimentConfig config;
    std::string kind = "pseudorandomness";
    experiment_cmd->add_option("--kind", kind, "experiment kind")
        ->check(CLI::IsMember({"pseudorandomness", "spectrum"}))
        ->capture_default_str();
    experiment_cmd->add_option("--N", config.N, "truncation")->capture_default_str();
    experiment_cmd->add_option("--R", config.R_list, "comma-separated shift counts")->delimiter(',');
    experiment_cmd->add_option("--lambda", config.lambda_list, "levels for Fourier concentration")->delimiter(',');
    experiment_cmd->add_option("--grid", config.grid, "spectrum grid size")->capture_default_str();

    for (auto* cmd : app.get_subcommands({})) cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        Output sink(g.out, out);
        std::ostream& os = sink.stream();
        const ConvergentTable scale = expand_max(QuotientSpec::parse(g.alpha));

        if (encode_cmd->parsed() || sigma_cmd->parsed() || decode_cmd->parsed()) {
            nlohmann::json doc;
            std::string command;
            if (decode_cmd->parsed()) {
                command = "decode";
                const std::vector<Digit> digits = parse_digits(digit_text);
                const std::uint64_t value = decode(digits, scale);
                doc = digit_report(value, scale, {});
            } else {
                command = encode_cmd->parsed() ? "encode" : "sigma";
                doc = digit_report(n, scale, psi_levels);
            }
            doc["alpha"] = scale.spec().to_string();
            if (resolve_format(g, OutputFormat::json) == OutputFormat::json) {
                os << doc.dump(2) << '\n';
            } else {
                os << scalar_csv(base_config(command, g), doc);
            }
            return kExitPass;
        }

        if (convergents_cmd->parsed()) {
            const ConvergentTable table = K ? expand(scale.spec(), *K) : scale;
            nlohmann::json cfg = base_config("convergents", g);
            cfg["K"] = table.max_index();
            if (resolve_format(g, OutputFormat::csv) == OutputFormat::json) {
                nlohmann::json rows = nlohmann::json::array();
                for (std::size_t i = 0; i <= table.max_index(); ++i) {
                    nlohmann::json row = {{"i", i}, {"p", table.p(i)}, {"q", table.q(i)}};
                    if (i >= 1) row["a"] = table.quotient(i);
                    rows.push_back(row);
                }
                os << nlohmann::json{{"config", cfg}, {"rows", rows}}.dump(2) << '\n';
            } else {
                os << "# config " << cfg.dump() << "\ni,a,p,q\n";
                for (std::size_t i = 0; i <= table.max_index(); ++i) {
                    os << i << ',' << (i >= 1 ? std::to_string(table.quotient(i)) : "") << ',' << table.p(i) << ','
                       << table.q(i) << '\n';
                }
            }
            return kExitPass;
        }

        const AlphaFunction f = parse_function(g.fn, scale);

        if (correlate_cmd->parsed()) {
            const CorrelationProfile p = correlation_profile(f, R, N, g.threads);
            nlohmann::json cfg = base_config("correlate", g);
            cfg["R"] = R;
            cfg["N"] = N;
            if (resolve_format(g, OutputFormat::csv) == OutputFormat::json) {
                nlohmann::json gamma = nlohmann::json::array();
                for (const Complex& x : p.gamma) gamma.push_back({x.real(), x.imag()});
                os << nlohmann::json{{"config", cfg},
                                     {"gamma", gamma},
                                     {"quadratic_mean", p.quadratic_mean},
                                     {"absolute_mean", p.absolute_mean}}
                          .dump(2)
                   << '\n';
            } else {
                os << "# config " << cfg.dump() << "\nr,re,im,abs\n";
                for (std::size_t r = 0; r < p.gamma.size(); ++r) {
                    const Complex x = p.gamma[r];
                    os << r << ',' << num(x.real()) << ',' << num(x.imag()) << ',' << num(std::abs(x)) << '\n';
                }
                os << "quadratic_mean," << num(p.quadratic_mean) << ",,\n";
                os << "absolute_mean," << num(p.absolute_mean) << ",,\n";
            }
            return kExitPass;
        }

        if (fourier_cmd->parsed()) {
            const FourierTable t = fourier_coeffs(f, fourier_lambda, cap);
            nlohmann::json cfg = base_config("fourier", g);
            cfg["lambda"] = fourier_lambda;
            cfg["q"] = t.q;
            if (resolve_format(g, OutputFormat::csv) == OutputFormat::json) {
                nlohmann::json G = nlohmann::json::array();
                for (const Complex& x : t.G) G.push_back({x.real(), x.imag()});
                os << nlohmann::json{{"config", cfg}, {"G", G}, {"energy", t.energy()}}.dump(2) << '\n';
            } else {
                os << "# config " << cfg.dump() << "\nh,re,im,abs\n";
                for (std::size_t h = 0; h < t.G.size(); ++h) {
                    const Complex x = t.G[h];
                    os << h << ',' << num(x.real()) << ',' << num(x.imag()) << ',' << num(std::abs(x)) << '\n';
                }
                os << "energy," << num(t.energy()) << ",,\n";
            }
            return kExitPass;
        }

        if (spectrum_cmd->parsed()) {
            const SpectrumScan s = spectrum_scan(f, spectrum_N, grid, g.threads);
            nlohmann::json cfg = base_config("spectrum", g);
            cfg["N"] = spectrum_N;
            cfg["grid"] = grid;
            if (resolve_format(g, OutputFormat::csv) == OutputFormat::json) {
                os << nlohmann::json{{"config", cfg},
                                     {"beta_peak", s.beta_peak},
                                     {"peak_value", s.peak_value},
                                     {"profile", s.profile}}
                          .dump(2)
                   << '\n';
            } else {
                os << "# config " << cfg.dump() << "\nj,beta,value\n";
                for (std::size_t j = 0; j < s.profile.size(); ++j) {
                    os << j << ',' << num(static_cast<double>(j) / static_cast<double>(grid)) << ','
                       << num(s.profile[j]) << '\n';
                }
                os << "peak," << num(s.beta_peak) << ',' << num(s.peak_value) << '\n';
            }
            return kExitPass;
        }

        config.alpha_spec = g.alpha;
        config.fn_spec = g.fn;
        config.seed = g.seed;
        config.threads = g.threads;
        config.output_path = g.out;

        if (verify_cmd->parsed()) {
            if (!only.empty()) config.only = only;
            config.format = resolve_format(g, OutputFormat::csv);
            const VerifyReport report = verify_all(config);
            if (config.format == OutputFormat::json) {
                os << report.to_json().dump(2) << '\n';
            } else {
                os << to_csv(report, config);
            }
            for (const auto& c : report.checks) {
                err << (c.passed() ? "PASS " : "FAIL ") << c.check_name << ' ' << c.instances_passed << '/'
                    << c.instances_run << " worst_margin=" << num(c.worst_margin) << '\n';
            }
            return report.passed() ? kExitPass : kExitCheckFailure;
        }

        if (experiment_cmd->parsed()) {
            config.format = resolve_format(g, OutputFormat::csv);
            const bool json = config.format == OutputFormat::json;
            if (kind == "pseudorandomness") {
                const auto report = pseudorandomness_experiment(config);
                os << (json ? to_json(report).dump(2) + "\n" : to_csv(report));
            } else {
                const auto report = spectrum_experiment(config);
                os << (json ? to_json(report).dump(2) + "\n" : to_csv(report));
            }
            return kExitPass;
        }
        return kExitUsage;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << " (largest safe index " << e.largest_safe_index() << ")\n";
        return kExitRange;
    } catch (const RangeError& e) {
        err << "range error: " << e.what() << '\n';
        return kExitRange;
    } catch (const IndexError& e) {
        err << "index error: " << e.what() << '\n';
        return kExitRange;
    } catch (const CapError& e) {
        err << "cap error: " << e.what() << '\n';
        return kExitRange;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailure;
    }
}

}  // namespace ostrowski::cli
