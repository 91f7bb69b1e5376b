#pragma once

#include <json.hpp>

#include <array>
#include <optional>
#include <string>

#include "bigfloat.hpp"
#include "characters.hpp"
#include "qseries.hpp"

namespace mlde3::smatrix {

using Vec3 = std::array<Complex, 3>;
using Mat3 = std::array<std::array<Complex, 3>, 3>;

struct Evaluation {
    Vec3 value;
    BigFloat error;  // bound on |f_i(tau) - value_i| over i: truncation tail plus rounding
};

// Truncated q-series evaluation of a precomputed character vector.
class CharacterEvaluator {
public:
    CharacterEvaluator(const characters::CharacterSpec& spec, mpfr_prec_t precision, std::size_t terms);

    // Throws numerical when the tail bound is not below 2^-(precision/2)
    // relative to the largest |f_i(tau)|, or when Im tau <= 1/2.
    Evaluation operator()(const Complex& tau) const;

    mpfr_prec_t precision() const { return prec_; }
    std::size_t terms() const { return terms_; }
    const characters::CharacterVector& series() const { return cv_; }

private:
    characters::CharacterVector cv_;
    mpfr_prec_t prec_;
    std::size_t terms_;
    std::array<std::vector<BigFloat>, 3> coeffs_;
    std::array<double, 3> ratio_;  // largest |a_n / a_{n-1}| over the last stored terms
};

Evaluation eval_character(const characters::CharacterSpec& spec, const Complex& tau, mpfr_prec_t precision = 256,
                          std::size_t terms = 120);

// -1/tau
Complex s_transform(const Complex& tau);

struct SMatrix {
    Mat3 S;
    BigFloat error;     // entrywise bound
    double condition;   // infinity-norm condition number of the sample matrix
    unsigned attempt;   // 0 for the fixed sample points, then seeded resamples
};

// M with F(-1/tau_j) = M F(tau_j) at tau_j = i + j (0.05 + 0.03 i), j = 1..3.
// `seed` > 0 starts from a seeded resample instead of the fixed points.
SMatrix extract_S(const characters::CharacterSpec& spec, mpfr_prec_t precision = 256, std::size_t terms = 120,
                  unsigned seed = 0);

// diag(1, A1, A2) S diag(1, A1, A2)^-1
SMatrix fold_normalization(const SMatrix& s, const Rational& A1, const Rational& A2);

enum class SymmetrizeStatus { accepted, non_integer, nonreal_ratio, nonpositive_ratio, imprecise, reducible };

struct Symmetrization {
    SymmetrizeStatus status = SymmetrizeStatus::imprecise;
    Integer A1, A2;              // rounded, when accepted
    BigFloat A1_value, A2_value;
    BigFloat error;              // bound on |A_i - A_i_value|
};

// A_i = sqrt(S_0i / S_i0) from an S extracted with A1 = A2 = 1. The error
// bound must be below 1/4 (else `imprecise`); accepted when both values sit
// within that bound of positive integers. A zero S_0i or S_i0 is `reducible`.
Symmetrization symmetrize(const SMatrix& s_unit);

// extract_S + symmetrize, doubling precision and terms while the verdict is `imprecise`.
Symmetrization recover_normalization(const characters::CharacterSpec& spec, mpfr_prec_t precision = 256,
                                     std::size_t terms = 120, mpfr_prec_t max_precision = 2048);

std::string status_name(SymmetrizeStatus s);

struct Fusion {
    std::array<std::array<std::array<double, 3>, 3>, 3> N{};  // N[i][j][k], real parts
    double max_imag = 0;         // largest |Im N_ij^k|
    double max_deviation = 0;    // largest distance to the nearest integer
    bool integral = false;       // every entry within tolerance of a nonnegative integer
    bool negative_flagged = false;  // some entry within tolerance of a negative integer
    std::array<double, 3> quantum_dimensions{};  // S_0a / S_00
};

// N_ij^k = sum_a S_ia S_ja conj(S_ka) / S_0a.
Fusion verlinde_check(const SMatrix& s, double tolerance = 1e-6);

struct Glueing {
    int p = 0, k = 0;
    Integer A1, A2, B1, B2;        // normalizations of W(p) and V(k)
    qseries::QExpansion chi;       // sum_i f_i g_i
    Rational constant;             // chi's q^0 coefficient
    bool matches_j = false;        // chi == j - 744 + 48k through the computed order
    Integer dim_X1;                // (15-p)(2p+17) + 2k^2 + k
    bool weights_sum_to_two = false;
};

// The U-series character for p glued with the V(k) character, k = 15 - p.
// `order` counts coefficients from q^-1.
Glueing glueing_character(int p, std::size_t order = 12, mpfr_prec_t precision = 256);

nlohmann::json to_json(const SMatrix& s, int digits = 30);
nlohmann::json to_json(const Symmetrization& s);
nlohmann::json to_json(const Fusion& f);
nlohmann::json to_json(const Glueing& g);

}  // namespace mlde3::smatrix
