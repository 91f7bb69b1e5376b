#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace mlde3::monodromy {

// Exponents of rho(T) mod 1, sorted, each in [0, 1).
using Triple = std::array<Rational, 3>;

enum class PairClass { den5, den7, imprimitive };

struct LabeledTriple {
    Triple exponents;
    std::string label;  // "n=8,k=3" or "(5,2)"
};

// Even n | 24 (n not 1 or 3), gcd(k, n) = 1: {k/n, -k/2n, (n-k)/2n} mod 1.
std::vector<LabeledTriple> imprimitive_triples();
// The twelve primitive triples for (p, r) in {(5,2), (5,6), (7,2), (7,6)}.
std::vector<LabeledTriple> primitive_triples();

struct CandidatePair {
    Rational h1, h2;  // residues in [0, 1), h1 >= h2
    unsigned multiplicity = 1;
};
std::vector<CandidatePair> candidate_pairs(PairClass cls);

Triple exponent_triple(const Rational& h1, const Rational& h2);

// Label of the listed triple equal to the exponent triple of (h1, h2), or empty.
std::string triple_label(const Rational& h1, const Rational& h2);

// Class of (h1, h2) by the denominators of h1, h2 mod 1: den5 and den7 use the
// primitive residue lists, imprimitive uses clauses (a)/(b) on denominators.
std::optional<PairClass> pair_class(const Rational& h1, const Rational& h2);
bool is_admissible(const Rational& h1, const Rational& h2);
PairClass classify_pair(const Rational& h1, const Rational& h2);

std::string class_name(PairClass c);

}  // namespace mlde3::monodromy
