#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "common.hpp"

namespace mlde3::primes {

struct WindowConfig {
    std::uint64_t modulus = 30;
    Rational ratio{28, 27};
    std::uint64_t x_min = 6496;
    std::uint64_t x_max = 1000000;
    // Effective prime-count constants; only printed for modulus 30, so other
    // moduli must supply their own.
    std::optional<double> c_pi = 0.0005661;
    std::optional<std::uint64_t> x_pi = 789693271;
    unsigned threads = 1;
};

inline constexpr std::uint64_t kFullRange = 789693271;

// Primes in [lo, hi), segmented.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);

struct ClassGap {
    std::uint64_t residue = 0;
    std::uint64_t q = 0, q_next = 0;  // consecutive class primes with the largest q_next / q
    Rational worst_ratio{0};
};

struct Counterexample {
    std::uint64_t residue = 0;
    std::uint64_t q = 0, q_next = 0;  // q_next > ratio * q, so [X, ratio X] misses the class for X just above q
    bool boundary = false;            // the first class prime after x_min is already past ratio * x_min
};

struct WindowVerdict {
    bool pass = false;
    std::vector<ClassGap> classes;        // one per residue coprime to the modulus
    std::optional<Counterexample> failure;  // smallest failing q over all classes
    // Least X from which every window in [X, x_max] passes: x_min on a pass,
    // else the largest q_next / ratio over failing pairs.
    Rational holds_from{0};
    std::uint64_t sieve_limit = 0;
    std::uint64_t primes_scanned = 0;
};

// For X in [x_min, x_max] and each residue a coprime to the modulus, checks
// that [X, ratio X] holds a prime = a mod modulus, through consecutive class
// primes: q' <= ratio q for every q in [x_min, x_max], plus the first class
// prime >= x_min lying below ratio x_min.
WindowVerdict verify_windows(const WindowConfig& cfg);

// The same criterion over an explicit ascending prime list (for synthetic tests).
WindowVerdict verify_windows_on(const std::vector<std::uint64_t>& primes, const WindowConfig& cfg);

// Offset logarithmic integral  int_a^b dt / log t, adaptive Simpson.
long double log_integral(long double a, long double b);
// Li(x) = int_2^x dt / log t
long double Li(long double x);

std::uint64_t euler_phi(std::uint64_t n);

// (Li(rX) - Li(X)) / phi(q) - c_pi X (r / (log X + log r)^2 + 1 / (log X)^2),
// a lower bound for the count of class primes in [X, rX] once X >= x_pi.
// Throws precondition below x_pi and invalid_argument without constants.
long double analytic_lower_bound(long double X, const WindowConfig& cfg);

}  // namespace mlde3::primes
