#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "common.hpp"

namespace mlde3::hypergeom {

// 3F2(a1, a2, a3; b1, b2; z). Lower parameters may not be nonpositive integers.
struct HGParams {
    std::array<Rational, 3> upper;
    std::array<Rational, 2> lower;

    void validate() const;
};

// B_n = prod (a_i)_n / (prod (b_j)_n * n!)
Rational hg_coefficient(const HGParams& params, std::size_t n);
std::vector<Rational> hg_coefficients(const HGParams& params, std::size_t count);

// Eventually periodic p-adic expansion: preperiod digits, then period repeated.
struct PadicDigits {
    std::uint64_t prime = 0;
    std::vector<std::uint64_t> preperiod;
    std::vector<std::uint64_t> period;

    std::uint64_t digit(std::size_t i) const;
};

PadicDigits padic_digits(const Rational& alpha, std::uint64_t p);
Rational to_rational(const PadicDigits& d);

// Carries when adding k to the p-adic expansion of alpha. alpha must be
// p-integral; throws when the carry chain never ends (alpha + k a
// nonnegative integer with alpha a negative integer).
unsigned carry_count(const Rational& alpha, std::uint64_t k, std::uint64_t p);

// v_p(B_k) for the f0 parameters at x = h1 - 1, y = h2 - 1, via carry counts.
// nullopt means B_k = 0.
std::optional<long> vp_coefficient(const Rational& h1, const Rational& h2, std::uint64_t k, std::uint64_t p);

// Same valuation computed factor by factor.
std::optional<long> pochhammer_valuation_oracle(const HGParams& params, std::uint64_t k, std::uint64_t p);

// Smallest k < limit with v_p(B_k) < 0, provided v_p(B_n) >= 0 for all n < k.
// Every parameter must be p-integral.
std::optional<std::size_t> first_negative_index(const HGParams& params, std::uint64_t p, std::size_t limit);

// Parameters of the hypergeometric factor of f0 for (h1, h2).
HGParams f0_params(const Rational& h1, const Rational& h2);

}  // namespace mlde3::hypergeom
