#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mlde3 {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Errc : int {
    invalid_argument = 1,
    precondition = 2,
    beyond_order = 3,
    resonant = 4,
    prime_unusable = 5,
    numerical = 6,
    io = 7,
    internal = 8,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const char* what) {
    if (!cond) fail(code, what);
}

// Accepts "n", "n/d", "-n/d" with optional surrounding blanks.
Rational parse_rational(std::string_view text);

// "n/d" in lowest terms; integers print without the denominator.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer floor(const Rational& r);

// Fractional part in [0, 1).
Rational frac(const Rational& r);

// Valuation of a nonzero rational.
long valuation(const Rational& r, unsigned long p);
long valuation(const Integer& z, unsigned long p);

// Exact integer square root of n >= 0 when n is a perfect square.
bool exact_sqrt(const Integer& n, Integer& root);
bool exact_sqrt(const Rational& r, Rational& root);

bool is_prime(std::uint64_t n);

}  // namespace mlde3
