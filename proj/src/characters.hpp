#pragma once

#include <array>
#include <memory>
#include <vector>

#include "common.hpp"
#include "hypergeom.hpp"
#include "qseries.hpp"

namespace mlde3::characters {

// Conformal weights h1, h2 of the two nontrivial modules plus the
// normalizations A1, A2 of f1, f2. Resonant data (h1, h2 or h1 - h2 an
// integer) is rejected.
struct CharacterSpec {
    Rational h1, h2;
    Rational A1{1}, A2{1};

    void validate() const;
    Rational x() const { return h1 - 1; }
    Rational y() const { return h2 - 1; }
};

Rational central_charge(const Rational& h1, const Rational& h2);
// c - 24 min(0, h1, h2)
Rational effective_central_charge(const Rational& h1, const Rational& h2);

// The monic MLDE (D^3 + a E4 D + b E6) f = 0 with indicial roots
// -c/24, h1 - c/24, h2 - c/24.
struct MldeCoefficients {
    Rational a, b;
    std::array<Rational, 3> exponents;
};
MldeCoefficients mlde_coefficients(const Rational& h1, const Rational& h2);

// Indicial polynomial x^3 - x^2/2 + (a + 1/18) x + b.
Rational indicial(const MldeCoefficients& m, const Rational& x);

struct CharacterVector {
    CharacterSpec spec;
    Rational c;
    std::array<qseries::QExpansion, 3> f;
};

// Hypergeometric parameters of f_i's 3F2 factor and its j-power.
hypergeom::HGParams component_params(const Rational& h1, const Rational& h2, int i);
Rational component_j_exponent(const Rational& h1, const Rational& h2, int i);

// f_i = A_i j^{e_i} 3F2(...; 1728/j), composed exactly in the series K.
CharacterVector character_vector(const CharacterSpec& spec, std::size_t order);
// Same vector from the MLDE recursion.
CharacterVector character_vector_frobenius(const CharacterSpec& spec, std::size_t order);

// The solution q^exponent (1 + ...) of (D^3 + a E4 D + b E6) f = 0.
qseries::QExpansion frobenius_solve(const Rational& a, const Rational& b, const Rational& exponent,
                                    std::size_t order);

struct EisensteinTable {
    std::vector<Integer> e2, e4, e6, e2sq;
};
std::shared_ptr<const EisensteinTable> eisenstein_table(std::size_t order);

// Coefficient-at-a-time Frobenius recursion in integer arithmetic. All
// coefficients so far are numerator(n) / denominator() with one common
// denominator, enlarged only when a new coefficient needs it.
class FrobeniusStream {
public:
    FrobeniusStream(const Rational& a, const Rational& b, const Rational& exponent, std::size_t max_order);

    // Computes the next coefficient; returns false once max_order is reached.
    bool advance();
    std::size_t size() const { return C_.size(); }
    const Integer& numerator(std::size_t n) const { return C_[n]; }
    const Integer& denominator() const { return den_; }
    // True when the coefficient just computed forced a larger common denominator.
    bool enlarged() const { return enlarged_; }
    Rational coefficient(std::size_t n) const;

private:
    std::size_t max_order_;
    std::shared_ptr<const EisensteinTable> eis_;
    Integer R_, D_;
    Integer i3_, i2_, i1_, i0_;
    std::vector<Integer> P_, Q_, S_;
    std::vector<Integer> C_, U_, V_;
    Integer den_{1};
    bool enlarged_ = false;
};

}  // namespace mlde3::characters
