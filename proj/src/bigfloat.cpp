#include "bigfloat.hpp"

#include <algorithm>
#include <climits>
#include <memory>

namespace mlde3 {

namespace {

// Raises the precision of `a` in place (keeping its value) so it can hold a result of width p.
void widen(BigFloat& a, mpfr_prec_t p) {
    if (a.precision() < p) mpfr_prec_round(a.get(), p, MPFR_RNDN);
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const std::string& decimal, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        fail(Errc::invalid_argument, "not a decimal number: " + decimal);
    }
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    // Leave `o` as a valid minimal-precision zero.
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    widen(*this, o.precision());
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
    widen(*this, o.precision());
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
    widen(*this, o.precision());
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
    if (o.is_zero()) fail(Errc::numerical, "division by zero");
    widen(*this, o.precision());
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

long BigFloat::exponent2() const {
    if (is_zero()) return LONG_MIN;
    return mpfr_get_exp(v_);
}

Integer BigFloat::round() const {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

std::string BigFloat::str(int digits) const {
    mpfr_exp_t e;
    std::unique_ptr<char, void (*)(char*)> s(mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN),
                                             mpfr_free_str);
    std::string m = s.get();
    if (mpfr_nan_p(v_) || mpfr_inf_p(v_)) return m;
    std::string sign;
    if (!m.empty() && m[0] == '-') {
        sign = "-";
        m.erase(0, 1);
    }
    if (is_zero()) return "0";
    return sign + m.substr(0, 1) + "." + m.substr(1) + "e" + std::to_string(static_cast<long>(e) - 1);
}

BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

BigFloat operator-(BigFloat a) {
    mpfr_neg(a.get(), a.get(), MPFR_RNDN);
    return a;
}

bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }

BigFloat abs(BigFloat a) {
    mpfr_abs(a.get(), a.get(), MPFR_RNDN);
    return a;
}

BigFloat sqrt(BigFloat a) {
    if (a.sign() < 0) fail(Errc::numerical, "sqrt of a negative number");
    mpfr_sqrt(a.get(), a.get(), MPFR_RNDN);
    return a;
}

BigFloat exp(BigFloat a) {
    mpfr_exp(a.get(), a.get(), MPFR_RNDN);
    return a;
}

BigFloat log(BigFloat a) {
    if (a.sign() <= 0) fail(Errc::numerical, "log of a nonpositive number");
    mpfr_log(a.get(), a.get(), MPFR_RNDN);
    return a;
}

BigFloat cos(BigFloat a) {
    mpfr_cos(a.get(), a.get(), MPFR_RNDN);
    return a;
}

BigFloat sin(BigFloat a) {
    mpfr_sin(a.get(), a.get(), MPFR_RNDN);
    return a;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat ldexp_one(long e, mpfr_prec_t prec) {
    BigFloat r(1, prec);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o) {
    BigFloat r = re * o.re - im * o.im;
    BigFloat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }

Complex operator/(const Complex& a, const Complex& b) {
    BigFloat d = norm(b);
    if (d.is_zero()) fail(Errc::numerical, "complex division by zero");
    return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}

Complex operator*(const BigFloat& s, Complex a) {
    a.re *= s;
    a.im *= s;
    return a;
}

Complex conj(Complex a) {
    a.im = -a.im;
    return a;
}

BigFloat norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
BigFloat abs(const Complex& z) { return sqrt(norm(z)); }

Complex exp_2pi_i(const Rational& r, const Complex& z) {
    const mpfr_prec_t p = z.precision();
    BigFloat t = BigFloat::pi(p) * BigFloat(Rational(2 * r), p);
    BigFloat mod = exp(-(t * z.im));
    BigFloat arg = t * z.re;
    return Complex(mod * cos(arg), mod * sin(arg));
}

}  // namespace mlde3
