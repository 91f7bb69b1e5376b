#include "qseries.hpp"

#include <algorithm>

namespace mlde3::qseries {

QExpansion::QExpansion(Rational leading_exponent, std::vector<Rational> coeffs)
    : exponent_(std::move(leading_exponent)), coeffs_(std::move(coeffs)) {
    exponent_.canonicalize();
    for (auto& c : coeffs_) c.canonicalize();
}

const Rational& QExpansion::coeff(std::size_t n) const {
    if (n >= coeffs_.size())
        fail(Errc::beyond_order, "coefficient " + std::to_string(n) + " beyond reliable order " +
                                     std::to_string(coeffs_.size()));
    return coeffs_[n];
}

QExpansion QExpansion::truncated(std::size_t order) const {
    if (order > coeffs_.size()) fail(Errc::beyond_order, "truncation beyond reliable order");
    return QExpansion(exponent_, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order));
}

QExpansion QExpansion::reexpressed(const Rational& new_exponent) const {
    Rational d = exponent_ - new_exponent;
    if (!is_integer(d) || d < 0) fail(Errc::invalid_argument, "exponent shift must be a nonnegative integer");
    std::size_t s = d.get_num().get_ui();
    std::vector<Rational> c(s, Rational(0));
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return QExpansion(new_exponent, std::move(c));
}

QExpansion& QExpansion::operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

QExpansion operator+(const QExpansion& f, const QExpansion& g) {
    Rational d = f.leading_exponent() - g.leading_exponent();
    if (!is_integer(d)) fail(Errc::invalid_argument, "exponents differ by a non-integer");
    const Rational& e = d < 0 ? f.leading_exponent() : g.leading_exponent();
    QExpansion a = f.reexpressed(e), b = g.reexpressed(e);
    std::size_t n = std::min(a.order(), b.order());
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a.coeffs()[i] + b.coeffs()[i];
    return QExpansion(e, std::move(c));
}

QExpansion operator-(const QExpansion& f) { return Rational(-1) * f; }
QExpansion operator-(const QExpansion& f, const QExpansion& g) { return f + (-g); }

QExpansion operator*(const Rational& s, const QExpansion& f) {
    QExpansion r = f;
    r *= s;
    return r;
}

QExpansion operator*(const QExpansion& f, const QExpansion& g) {
    std::size_t n = std::min(f.order(), g.order());
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    std::vector<Rational> c(n);
    Rational t;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t k = 0; i + k < n; ++k) {
            mpq_mul(t.get_mpq_t(), a[i].get_mpq_t(), b[k].get_mpq_t());
            c[i + k] += t;
        }
    }
    return QExpansion(f.leading_exponent() + g.leading_exponent(), std::move(c));
}

QExpansion inverse(const QExpansion& f) {
    std::size_t n = f.order();
    if (n == 0 || f.coeffs()[0] == 0) fail(Errc::precondition, "inverse needs a nonzero leading coefficient");
    const auto& a = f.coeffs();
    Rational inv0 = 1 / a[0];
    std::vector<Rational> r(n);
    r[0] = inv0;
    for (std::size_t i = 1; i < n; ++i) {
        Rational s = 0;
        for (std::size_t k = 1; k <= i; ++k) s += a[k] * r[i - k];
        r[i] = -s * inv0;
    }
    return QExpansion(-f.leading_exponent(), std::move(r));
}

QExpansion power(const QExpansion& f, const Rational& alpha) {
    std::size_t n = f.order();
    if (n == 0 || f.coeffs()[0] != 1) fail(Errc::precondition, "power needs leading coefficient 1");
    const auto& u = f.coeffs();
    // n p_n = sum_{k=1}^{n} (alpha k - (n - k)) u_k p_{n-k}
    std::vector<Rational> p(n);
    p[0] = 1;
    for (std::size_t i = 1; i < n; ++i) {
        Rational s = 0;
        for (std::size_t k = 1; k <= i; ++k) {
            if (u[k] == 0) continue;
            s += (alpha * static_cast<long>(k) - static_cast<long>(i - k)) * u[k] * p[i - k];
        }
        p[i] = s / static_cast<long>(i);
    }
    return QExpansion(f.leading_exponent() * alpha, std::move(p));
}

std::vector<Integer> eisenstein_integers(int k, std::size_t order) {
    long scale;
    switch (k) {
        case 2: scale = -24; break;
        case 4: scale = 240; break;
        case 6: scale = -504; break;
        default: fail(Errc::invalid_argument, "eisenstein weight must be 2, 4 or 6");
    }
    std::vector<Integer> sigma(order, Integer(0));
    for (std::size_t d = 1; d < order; ++d) {
        Integer dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), d, static_cast<unsigned long>(k - 1));
        for (std::size_t m = d; m < order; m += d) sigma[m] += dk;
    }
    std::vector<Integer> c(order);
    if (order) c[0] = 1;
    for (std::size_t n = 1; n < order; ++n) c[n] = scale * sigma[n];
    return c;
}

QExpansion eisenstein(int k, std::size_t order) {
    auto z = eisenstein_integers(k, order);
    return QExpansion(Rational(0), std::vector<Rational>(z.begin(), z.end()));
}

namespace {

// Delta/q to `order` terms, from E4^3 - E6^2 = 1728 Delta.
QExpansion delta_over_q(std::size_t order) {
    QExpansion e4 = eisenstein(4, order + 1), e6 = eisenstein(6, order + 1);
    QExpansion d = e4 * e4 * e4 - e6 * e6;
    std::vector<Rational> c(d.coeffs().begin() + 1, d.coeffs().end());
    for (auto& x : c) x /= 1728;
    return QExpansion(Rational(0), std::move(c));
}

}  // namespace

QExpansion j_times_q(std::size_t order) {
    QExpansion e4 = eisenstein(4, order);
    return e4 * e4 * e4 * inverse(delta_over_q(order));
}

QExpansion hauptmodul_K(std::size_t order) {
    if (order == 0) return QExpansion(Rational(1), {});
    QExpansion k = Rational(1728) * inverse(j_times_q(order));
    return QExpansion(Rational(1), k.coeffs());
}

QExpansion j_power(const Rational& alpha, std::size_t order) {
    QExpansion p = power(j_times_q(order), alpha);
    return QExpansion(-alpha, p.coeffs());
}

QExpansion modular_derivative(const QExpansion& f, const Rational& k) {
    QExpansion e2 = eisenstein(2, f.order());
    std::vector<Rational> d(f.order());
    for (std::size_t n = 0; n < f.order(); ++n) d[n] = (f.leading_exponent() + static_cast<long>(n)) * f.coeffs()[n];
    return QExpansion(f.leading_exponent(), std::move(d)) - (k / 12) * (e2 * f);
}

nlohmann::json to_json(const QExpansion& f) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : f.coeffs()) c.push_back(to_string(x));
    return {{"leading_exponent", to_string(f.leading_exponent())}, {"coeffs", c}};
}

QExpansion from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("leading_exponent") || !j.contains("coeffs") || !j["coeffs"].is_array())
        fail(Errc::invalid_argument, "q-expansion JSON needs leading_exponent and coeffs");
    std::vector<Rational> c;
    for (const auto& x : j["coeffs"]) {
        if (!x.is_string()) fail(Errc::invalid_argument, "coefficients must be \"n/d\" strings");
        c.push_back(parse_rational(x.get<std::string>()));
    }
    return QExpansion(parse_rational(j["leading_exponent"].get<std::string>()), std::move(c));
}

}  // namespace mlde3::qseries
