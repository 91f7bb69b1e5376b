#pragma once

#include <json.hpp>

#include <cstddef>
#include <vector>

#include "common.hpp"

namespace mlde3::qseries {

// q^e * (c_0 + c_1 q + ... + c_{N-1} q^{N-1} + O(q^N)). Every stored
// coefficient is reliable, trailing zeros included; order() is N.
class QExpansion {
public:
    QExpansion() = default;
    QExpansion(Rational leading_exponent, std::vector<Rational> coeffs);

    const Rational& leading_exponent() const { return exponent_; }
    std::size_t order() const { return coeffs_.size(); }
    const Rational& coeff(std::size_t n) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    QExpansion truncated(std::size_t order) const;
    // Same series written from a lower exponent, padded with zeros.
    QExpansion reexpressed(const Rational& new_exponent) const;

    QExpansion& operator*=(const Rational& s);

    friend bool operator==(const QExpansion&, const QExpansion&) = default;

private:
    Rational exponent_{0};
    std::vector<Rational> coeffs_;
};

QExpansion operator+(const QExpansion& f, const QExpansion& g);
QExpansion operator-(const QExpansion& f, const QExpansion& g);
QExpansion operator-(const QExpansion& f);
QExpansion operator*(const QExpansion& f, const QExpansion& g);
QExpansion operator*(const Rational& s, const QExpansion& f);

// 1/f; the leading coefficient must be nonzero.
QExpansion inverse(const QExpansion& f);

// f^alpha for f = q^e (1 + ...); alpha may be any rational.
QExpansion power(const QExpansion& f, const Rational& alpha);

// Plain power series in q with integer coefficients, sigma_k(n) based.
std::vector<Integer> eisenstein_integers(int k, std::size_t order);
QExpansion eisenstein(int k, std::size_t order);

// q*j(q) = 1 + 744 q + 196884 q^2 + ...
QExpansion j_times_q(std::size_t order);
// K = 1728/j = 1728 q - 1285632 q^2 + ...
QExpansion hauptmodul_K(std::size_t order);
// j^alpha = q^{-alpha} (1 + 744 q + ...)^alpha
QExpansion j_power(const Rational& alpha, std::size_t order);

// D_k f = q df/dq - (k/12) E_2 f
QExpansion modular_derivative(const QExpansion& f, const Rational& k);

nlohmann::json to_json(const QExpansion& f);
QExpansion from_json(const nlohmann::json& j);

}  // namespace mlde3::qseries
