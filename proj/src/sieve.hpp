#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "characters.hpp"
#include "surface.hpp"

namespace mlde3::sieve {

// Second coefficient of f1 normalized to leading coefficient 1. F2(x, y) = F1(y, x).
Rational F1(const Rational& x, const Rational& y);
Rational F2(const Rational& x, const Rational& y);

enum class Region { boxed, horizontal_y, horizontal_x, diagonal, excluded };
Region positivity_region(const Rational& x, const Rational& y);
std::string region_name(Region r);

enum class Status { survives, fails_positivity, fails_integrality, fails_region, excluded_reducible };
enum class Method { none, prefilter, witness, scan, family_proof };

struct Witness {
    std::uint64_t prime = 0;  // 0 when the denominator had no small prime factor
    std::size_t index = 0;
};

struct SieveVerdict {
    characters::CharacterSpec candidate;
    Rational m;
    Status status = Status::survives;
    int coordinate = -1;  // which f_i failed positivity
    std::size_t failed_index = 0;
    std::optional<Witness> witness;
    Method method = Method::none;
    surface::Provenance provenance = surface::Provenance::generic_enumeration;
    long family_parameter = 0;
    unsigned denominator = 0;  // 5, 7 or 16
};

std::string status_name(Status s);
std::string method_name(Method m);

// f0: nonnegative integers; f1, f2 with A = 1: nonnegative. `order` coefficients each.
SieveVerdict scan_candidate(const characters::CharacterSpec& spec, std::size_t order = 1000);

// First k < order with v_p(B_k) < 0 and v_p(B_n) >= 0 below it, over primes
// 5 <= p <= prime_cap at which every f0 parameter is p-integral. Such a k
// makes the k-th coefficient of f0 non-integral.
std::optional<Witness> find_witness(const Rational& h1, const Rational& h2, std::size_t order, std::uint64_t prime_cap);

// Zeroth p-adic digit of a p-integral rational.
std::uint64_t zeroth_digit(const Rational& a, std::uint64_t p);

// The residue class p0 mod 30 (p0 = 1 mod 3) where -y-1 has zeroth digit near 4p/5.
unsigned den5_class(const Rational& y);

// Window search for denominators 5 with the x-inequality 0 < [(p-1)x/3]_p < p/30.
std::optional<Witness> witness_search_den5(const Rational& x, const Rational& y, std::uint64_t prime_cap = 0);

// Same skeleton for modulus 6N: primes p = p0 mod 6N, k = p - digit0(-y-1).
std::optional<Witness> witness_search(const Rational& x, const Rational& y, unsigned N, std::uint64_t prime_cap);

// y = -3/2 family: p > 3 dividing beta + 24, k = (p-1)/2.
Witness witness_beta(long beta);

struct ClassifyOptions {
    std::set<unsigned> denominators{5, 7, 16};
    std::size_t order = 1000;
    std::uint64_t witness_prime_cap = 2000;
    long y_half_max_s = 40;       // family members scanned, 1 <= s <= this
    long beta_max = 2000;         // witness_beta checked on 24 < beta <= this
    long q4_max_m = 200;          // diagonal family x - y = 1/2 searched for m <= this
    unsigned threads = 0;         // 0: from MLDE3_THREADS or the hardware
};

struct ClassifyResult {
    std::vector<SieveVerdict> verdicts;  // every candidate with integral m >= 0, sorted
    std::size_t candidates = 0;
    std::size_t reducible_skipped = 0;
    std::size_t q4_outside_box_survivors = 0;
    std::size_t degenerate_line_survivors = 0;
    long beta_checked = 0;
    std::vector<std::string> log;

    // Without include_family, the tagged sets (see is_tagged) are left out.
    std::vector<SieveVerdict> survivors(unsigned denominator, bool include_family) const;
};

// The y = -1/2 family, the x - y = 1/2 family outside the box and the boxed
// degenerate-line points, none of which the figure tables list.
bool is_tagged(surface::Provenance p);

ClassifyResult classify_all(const ClassifyOptions& opts);

unsigned thread_count(unsigned requested);

nlohmann::json to_json(const SieveVerdict& v);
std::string verdict_csv_header();
std::string to_csv_row(const SieveVerdict& v);

}  // namespace mlde3::sieve
