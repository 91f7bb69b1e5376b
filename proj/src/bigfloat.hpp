#pragma once

#include <mpfr.h>

#include <string>

#include "common.hpp"

namespace mlde3 {

// RAII mpfr_t. Results of binary operations take the larger precision of the
// two operands; rounding is always to nearest.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64);
    BigFloat(long v, mpfr_prec_t prec);
    BigFloat(const Rational& v, mpfr_prec_t prec);
    BigFloat(const std::string& decimal, mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    static BigFloat pi(mpfr_prec_t prec);

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long exponent2() const;  // floor(log2 |x|) + 1, or LONG_MIN for zero
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Nearest integer.
    Integer round() const;
    // Scientific notation with `digits` significant digits.
    std::string str(int digits = 30) const;

private:
    mpfr_t v_;
};

BigFloat operator+(BigFloat a, const BigFloat& b);
BigFloat operator-(BigFloat a, const BigFloat& b);
BigFloat operator*(BigFloat a, const BigFloat& b);
BigFloat operator/(BigFloat a, const BigFloat& b);
BigFloat operator-(BigFloat a);
bool operator<(const BigFloat& a, const BigFloat& b);
bool operator>(const BigFloat& a, const BigFloat& b);

BigFloat abs(BigFloat a);
BigFloat sqrt(BigFloat a);
BigFloat exp(BigFloat a);
BigFloat log(BigFloat a);
BigFloat cos(BigFloat a);
BigFloat sin(BigFloat a);
BigFloat max(const BigFloat& a, const BigFloat& b);
// 2^e at the given precision
BigFloat ldexp_one(long e, mpfr_prec_t prec);

struct Complex {
    BigFloat re, im;

    explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    Complex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t precision() const { return re.precision(); }
    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const BigFloat& s, Complex a);
Complex conj(Complex a);
BigFloat abs(const Complex& z);
BigFloat norm(const Complex& z);  // |z|^2
// e^{2 pi i r z}
Complex exp_2pi_i(const Rational& r, const Complex& z);

}  // namespace mlde3
