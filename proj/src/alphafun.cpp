#include "ostrowski/alphafun.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "ostrowski/error.hpp"

namespace ostrowski {

namespace {

constexpr double kUnimodularTolerance = 1e-12;
constexpr Quotient kMaxAtomRow = Quotient{1} << 20;

std::size_t row_length(const ConvergentTable& scale, std::size_t k) {
    const Quotient a = scale.quotient(k + 1);
    if (a >= kMaxAtomRow) throw ValidationError("partial quotient too large for an atom table");
    return static_cast<std::size_t>(a) + 1;
}

}  // namespace

AlphaFunction::AlphaFunction(ConvergentTable scale, std::vector<std::vector<Complex>> atoms)
    : scale_(std::move(scale)), atoms_(std::move(atoms)) {
    if (atoms_.size() != scale_.digit_positions()) {
        throw ValidationError("atom table needs one row per digit position (" +
                              std::to_string(scale_.digit_positions()) + "), got " + std::to_string(atoms_.size()));
    }
    modulus_bound_ = 0.0;
    unimodular_ = true;
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
        const auto& row = atoms_[k];
        if (row.size() != row_length(scale_, k)) {
            throw ValidationError("atom row " + std::to_string(k) + " must have a_{k+1}+1 entries");
        }
        if (row[0] != Complex(1.0, 0.0)) {
            throw ValidationError("atom v[" + std::to_string(k) + "][0] must equal 1 (g(0) = 1)");
        }
        for (const Complex& v : row) {
            const double m = std::abs(v);
            if (!std::isfinite(m)) throw ValidationError("atom values must be finite");
            modulus_bound_ = std::max(modulus_bound_, m);
            if (std::abs(m - 1.0) > kUnimodularTolerance) unimodular_ = false;
        }
    }
}

AlphaFunction AlphaFunction::from_theta(double theta, const ConvergentTable& scale) {
    std::vector<std::vector<Complex>> atoms(scale.digit_positions());
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        auto& row = atoms[k];
        row.resize(row_length(scale, k));
        row[0] = 1.0;
        for (std::size_t e = 1; e < row.size(); ++e) row[e] = unit_mul(e, theta);
    }
    return {scale, std::move(atoms)};
}

AlphaFunction AlphaFunction::from_json(const nlohmann::json& doc, const ConvergentTable& scale) {
    if (!doc.is_object()) throw ValidationError("atom table document must be a JSON object");
    std::vector<std::vector<Complex>> atoms(scale.digit_positions());
    for (std::size_t k = 0; k < atoms.size(); ++k) atoms[k].assign(row_length(scale, k), Complex(1.0, 0.0));

    for (const auto& [key, row] : doc.items()) {
        std::size_t k = 0;
        const auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
        if (ec != std::errc{} || end != key.data() + key.size()) {
            throw ValidationError("atom table key '" + key + "' is not a digit position");
        }
        if (k >= atoms.size()) throw ValidationError("atom table row " + key + " is beyond the scale");
        if (!row.is_array()) throw ValidationError("atom table row " + key + " must be an array");
        const std::size_t full = atoms[k].size();
        const std::size_t legal = static_cast<std::size_t>(scale.digit_bound(k)) + 1;
        if (row.size() != full && row.size() != legal) {
            throw ValidationError("atom table row " + key + " has the wrong number of entries");
        }
        for (std::size_t e = 0; e < row.size(); ++e) {
            const auto& v = row[e];
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
                throw ValidationError("atom entries must be [re, im] pairs");
            }
            atoms[k][e] = Complex(v[0].get<double>(), v[1].get<double>());
        }
    }
    return {scale, std::move(atoms)};
}

nlohmann::json AlphaFunction::to_json() const {
    nlohmann::json doc = nlohmann::json::object();
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
        nlohmann::json row = nlohmann::json::array();
        for (const Complex& v : atoms_[k]) row.push_back({v.real(), v.imag()});
        doc[std::to_string(k)] = std::move(row);
    }
    return doc;
}

AlphaFunction AlphaFunction::twist(double beta) const {
    auto atoms = atoms_;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const std::uint64_t qk = scale_.q(k);
        for (std::size_t e = 1; e < atoms[k].size(); ++e) {
            const auto multiple = static_cast<UInt128>(e) * qk;
            atoms[k][e] = cmul(atoms[k][e], unit(-frac_mul(multiple, beta)));
        }
    }
    return {scale_, std::move(atoms)};
}

Complex AlphaFunction::eval(std::span<const Digit> digits) const noexcept {
    Complex acc(1.0, 0.0);
    for (std::size_t k = digits.size(); k-- > 0;) {
        if (digits[k] != 0) acc = cmul(acc, atoms_[k][digits[k]]);
    }
    return acc;
}

Complex AlphaFunction::eval(std::uint64_t n) const {
    const DigitString d = encode(n, scale_);
    return eval(std::span<const Digit>(d));
}

Complex AlphaFunction::eval_truncated(std::size_t lambda, std::uint64_t n) const {
    const DigitString d = encode(n, scale_);
    return eval(std::span<const Digit>(d).first(std::min(lambda, d.size())));
}

void AlphaFunction::evaluate_range(std::uint64_t start, std::span<Complex> out) const {
    if (out.empty()) return;
    if (start >= scale_.capacity() || out.size() > scale_.capacity() - start) {
        throw RangeError("evaluate_range leaves the scale capacity");
    }
    OstrowskiCounter counter(scale_, start);
    const std::size_t positions = scale_.digit_positions();
    // suffix[k] = product of atoms at positions >= k, most significant first.
    std::vector<Complex> suffix(positions + 1, Complex(1.0, 0.0));
    auto refresh = [&](std::size_t top) {
        for (std::size_t k = top + 1; k-- > 0;) {
            const Digit d = counter.digit(k);
            suffix[k] = d != 0 ? cmul(suffix[k + 1], atoms_[k][d]) : suffix[k + 1];
        }
    };
    refresh(positions - 1);
    out[0] = suffix[0];
    for (std::size_t i = 1; i < out.size(); ++i) {
        counter.increment();
        refresh(counter.changed_position());
        out[i] = suffix[0];
    }
}

std::vector<Complex> AlphaFunction::sample(std::uint64_t count) const {
    std::vector<Complex> out(count);
    evaluate_range(0, out);
    return out;
}

double parse_real(std::string_view text) {
    auto parse_double = [&](std::string_view s) {
        double value = 0.0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
            throw UsageError("bad real number '" + std::string(text) + "'");
        }
        return value;
    };
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return parse_double(text);
    const double den = parse_double(text.substr(slash + 1));
    if (den == 0.0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    return parse_double(text.substr(0, slash)) / den;
}

AlphaFunction parse_function(std::string_view text, const ConvergentTable& scale) {
    if (text.starts_with("json:")) {
        const std::string path(text.substr(5));
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open atom table '" + path + "'");
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("atom table '" + path + "' is not valid JSON: " + e.what());
        }
        return AlphaFunction::from_json(doc, scale);
    }
    double theta = 0.0;
    double beta = 0.0;
    bool seen = false;
    std::string_view rest = text;
    while (!rest.empty()) {
        const std::size_t plus = rest.find('+');
        const std::string_view term = rest.substr(0, plus);
        if (term.starts_with("theta:")) {
            theta = parse_real(term.substr(6));
        } else if (term.starts_with("beta:")) {
            beta = parse_real(term.substr(5));
        } else {
            throw UsageError("unknown function spec term '" + std::string(term) + "'");
        }
        seen = true;
        rest = plus == std::string_view::npos ? std::string_view{} : rest.substr(plus + 1);
    }
    if (!seen) throw UsageError("empty function spec");
    AlphaFunction g = AlphaFunction::from_theta(theta, scale);
    return beta == 0.0 ? g : g.twist(beta);
}

}  // namespace ostrowski
