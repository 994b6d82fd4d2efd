#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ostrowski/cfrac.hpp"
#include "ostrowski/numeration.hpp"
#include "ostrowski/phase.hpp"

namespace ostrowski {

// A bounded alpha-multiplicative function
//
//     g(n) = prod_k g(eps_k(n) q_k),
//
// stored as its atom table v[k][e] = g(e q_k) for 0 <= e <= a_{k+1}. The
// table determines g completely, so twisting, truncation and Fourier analysis
// all act on this one object.
class AlphaFunction {
public:
    // Throws ValidationError unless every v[k][0] == 1 and row k has
    // a_{k+1} + 1 entries for each usable digit position k.
    AlphaFunction(ConvergentTable scale, std::vector<std::vector<Complex>> atoms);

    // g(n) = e(theta * sigma_alpha(n)).
    static AlphaFunction from_theta(double theta, const ConvergentTable& scale);

    // Atom table from {"k": [[re, im], ...], ...}. Rows that are absent stay
    // trivial (all ones); a present row lists v[k][0..m] with
    // m in {digit_bound(k), a_{k+1}}.
    static AlphaFunction from_json(const nlohmann::json& doc, const ConvergentTable& scale);

    // h(n) = g(n) e(-n beta), again alpha-multiplicative because n = sum eps_k q_k.
    AlphaFunction twist(double beta) const;

    Complex operator()(std::uint64_t n) const { return eval(n); }

    // Product over nonzero digits, most significant first. Throws RangeError
    // outside the scale.
    Complex eval(std::uint64_t n) const;
    Complex eval(std::span<const Digit> digits) const noexcept;

    // g(psi_lambda(n)).
    Complex eval_truncated(std::size_t lambda, std::uint64_t n) const;

    // out[i] = g(start + i), bit-identical to eval() but amortized O(1) per
    // value (odometer with suffix products).
    void evaluate_range(std::uint64_t start, std::span<Complex> out) const;
    std::vector<Complex> sample(std::uint64_t count) const;

    const ConvergentTable& scale() const noexcept { return scale_; }
    const std::vector<std::vector<Complex>>& atoms() const noexcept { return atoms_; }
    Complex atom(std::size_t k, Digit e) const { return atoms_.at(k).at(e); }

    double modulus_bound() const noexcept { return modulus_bound_; }
    // All atoms on the unit circle to 1e-12.
    bool unimodular() const noexcept { return unimodular_; }

    nlohmann::json to_json() const;

private:
    ConvergentTable scale_;
    std::vector<std::vector<Complex>> atoms_;
    double modulus_bound_ = 1.0;
    bool unimodular_ = true;
};

// Function spec grammar:
//   theta:<real>               g(n) = e(theta sigma(n))
//   theta:<real>+beta:<real>   the same, twisted by e(-n beta)
//   beta:<real>                e(-n beta)
//   json:<path>                atom table file
// Reals may be written as decimals or as p/q.
AlphaFunction parse_function(std::string_view text, const ConvergentTable& scale);

double parse_real(std::string_view text);

}  // namespace ostrowski
