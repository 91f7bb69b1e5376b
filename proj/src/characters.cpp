#include "characters.hpp"

#include <algorithm>
#include <mutex>

namespace mlde3::characters {

using qseries::QExpansion;

void CharacterSpec::validate() const {
    if (is_integer(h1) || is_integer(h2) || is_integer(h1 - h2))
        fail(Errc::resonant, "resonant exponents: h1, h2 and h1 - h2 must be non-integers");
}

Rational central_charge(const Rational& h1, const Rational& h2) { return 8 * (h1 + h2 - Rational(1, 2)); }

Rational effective_central_charge(const Rational& h1, const Rational& h2) {
    Rational hmin = std::min({Rational(0), h1, h2});
    return central_charge(h1, h2) - 24 * hmin;
}

MldeCoefficients mlde_coefficients(const Rational& h1, const Rational& h2) {
    Rational c = central_charge(h1, h2);
    Rational r0 = -c / 24, r1 = h1 - c / 24, r2 = h2 - c / 24;
    if (r0 == r1 || r0 == r2 || r1 == r2) fail(Errc::invalid_argument, "repeated indicial roots");
    MldeCoefficients m;
    m.exponents = {r0, r1, r2};
    m.a = r0 * r1 + r0 * r2 + r1 * r2 - Rational(1, 18);
    m.b = -r0 * r1 * r2;
    return m;
}

Rational indicial(const MldeCoefficients& m, const Rational& x) {
    return x * x * x - x * x / 2 + (m.a + Rational(1, 18)) * x + m.b;
}

hypergeom::HGParams component_params(const Rational& h1, const Rational& h2, int i) {
    if (i == 0) return hypergeom::f0_params(h1, h2);
    const Rational& ha = i == 1 ? h1 : h2;
    const Rational& hb = i == 1 ? h2 : h1;
    Rational t = 4 * ha - 2 * hb;
    return hypergeom::HGParams{{(t + 1) / 6, (t + 3) / 6, (t + 5) / 6}, {1 + ha, 1 + ha - hb}};
}

Rational component_j_exponent(const Rational& h1, const Rational& h2, int i) {
    if (i == 0) return central_charge(h1, h2) / 24;
    const Rational& ha = i == 1 ? h1 : h2;
    const Rational& hb = i == 1 ? h2 : h1;
    return (2 * hb - 4 * ha - 1) / 6;
}

namespace {

// sum_n B_n K^n as a power series with `order` coefficients.
std::vector<Rational> compose_in_K(const std::vector<Rational>& B, const std::vector<Rational>& K, std::size_t order) {
    std::vector<Rational> res;
    Rational t;
    for (std::size_t n = order; n-- > 0;) {
        // Coefficients beyond order - n are never used: K^n has valuation n.
        std::size_t len = order - n;
        std::vector<Rational> next(len);
        for (std::size_t i = 1; i < len; ++i)
            for (std::size_t s = 1; s <= i && i - s < res.size(); ++s) {
                mpq_mul(t.get_mpq_t(), K[s].get_mpq_t(), res[i - s].get_mpq_t());
                next[i] += t;
            }
        next[0] += B[n];
        res = std::move(next);
    }
    return res;
}

}  // namespace

CharacterVector character_vector(const CharacterSpec& spec, std::size_t order) {
    spec.validate();
    CharacterVector v{spec, central_charge(spec.h1, spec.h2), {}};
    if (order == 0) fail(Errc::invalid_argument, "order must be positive");
    QExpansion K = qseries::hauptmodul_K(order);
    std::vector<Rational> Kc(order);
    for (std::size_t i = 1; i < order; ++i) Kc[i] = K.coeffs()[i - 1];
    const std::array<Rational, 3> scale{Rational(1), spec.A1, spec.A2};
    for (int i = 0; i < 3; ++i) {
        auto B = hypergeom::hg_coefficients(component_params(spec.h1, spec.h2, i), order);
        QExpansion F(Rational(0), compose_in_K(B, Kc, order));
        v.f[i] = scale[i] * (qseries::j_power(component_j_exponent(spec.h1, spec.h2, i), order) * F);
    }
    return v;
}

CharacterVector character_vector_frobenius(const CharacterSpec& spec, std::size_t order) {
    spec.validate();
    CharacterVector v{spec, central_charge(spec.h1, spec.h2), {}};
    MldeCoefficients m = mlde_coefficients(spec.h1, spec.h2);
    const std::array<Rational, 3> scale{Rational(1), spec.A1, spec.A2};
    for (int i = 0; i < 3; ++i) v.f[i] = scale[i] * frobenius_solve(m.a, m.b, m.exponents[i], order);
    return v;
}

QExpansion frobenius_solve(const Rational& a, const Rational& b, const Rational& exponent, std::size_t order) {
    FrobeniusStream s(a, b, exponent, order);
    while (s.advance()) {
    }
    std::vector<Rational> c(s.size());
    for (std::size_t n = 0; n < s.size(); ++n) c[n] = s.coefficient(n);
    return QExpansion(exponent, std::move(c));
}

std::shared_ptr<const EisensteinTable> eisenstein_table(std::size_t order) {
    static std::mutex mu;
    static std::shared_ptr<const EisensteinTable> cached;
    std::lock_guard<std::mutex> lock(mu);
    if (cached && cached->e2.size() >= order) return cached;
    std::size_t n = std::max<std::size_t>(order, cached ? 2 * cached->e2.size() : 64);
    auto t = std::make_shared<EisensteinTable>();
    t->e2 = qseries::eisenstein_integers(2, n);
    t->e4 = qseries::eisenstein_integers(4, n);
    t->e6 = qseries::eisenstein_integers(6, n);
    t->e2sq.assign(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; i + k < n; ++k) mpz_addmul(t->e2sq[i + k].get_mpz_t(), t->e2[i].get_mpz_t(), t->e2[k].get_mpz_t());
    cached = t;
    return cached;
}

// With s = sigma/D, the recursion is
//   c_n I(s_n) = -sum_{k>=1} (-e2_k/2 s^2 + G_k s + b e6_k) c_{n-k},  s = s_{n-k},
// where G = E2^2/24 + E4/72 + a E4. Everything is scaled by T = 72 ad bd D^3.
FrobeniusStream::FrobeniusStream(const Rational& a, const Rational& b, const Rational& exponent, std::size_t max_order)
    : max_order_(max_order), eis_(eisenstein_table(max_order)), R_(exponent.get_num()), D_(exponent.get_den()) {
    const Integer an = a.get_num(), ad = a.get_den(), bn = b.get_num(), bd = b.get_den();
    if (exponent * exponent * exponent - exponent * exponent / 2 + (a + Rational(1, 18)) * exponent + b != 0)
        fail(Errc::precondition, "exponent is not an indicial root");
    const Integer D2 = D_ * D_, D3 = D2 * D_;
    i3_ = 72 * ad * bd;
    i2_ = -36 * ad * bd * D_;
    i1_ = bd * D2 * (72 * an + 4 * ad);
    i0_ = 72 * ad * D3 * bn;
    P_.resize(max_order);
    Q_.resize(max_order);
    S_.resize(max_order);
    for (std::size_t k = 1; k < max_order; ++k) {
        P_[k] = -36 * ad * bd * D_ * eis_->e2[k];
        Q_[k] = bd * D2 * (ad * (3 * eis_->e2sq[k] + eis_->e4[k]) + 72 * an * eis_->e4[k]);
        S_[k] = 72 * ad * D3 * bn * eis_->e6[k];
    }
}

bool FrobeniusStream::advance() {
    enlarged_ = false;
    std::size_t n = C_.size();
    if (n >= max_order_) return false;
    Integer sigma = R_ + D_ * static_cast<unsigned long>(n);
    if (n == 0) {
        C_.push_back(den_);
    } else {
        Integer acc = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            const std::size_t j = n - k;
            mpz_addmul(acc.get_mpz_t(), P_[k].get_mpz_t(), U_[j].get_mpz_t());
            mpz_addmul(acc.get_mpz_t(), Q_[k].get_mpz_t(), V_[j].get_mpz_t());
            mpz_addmul(acc.get_mpz_t(), S_[k].get_mpz_t(), C_[j].get_mpz_t());
        }
        Integer ind = ((i3_ * sigma + i2_) * sigma + i1_) * sigma + i0_;
        if (ind == 0) fail(Errc::resonant, "indicial polynomial vanishes at a shifted exponent");
        Integer g;
        mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), ind.get_mpz_t());
        Integer s = -acc / g, t = ind / g;
        if (t < 0) {
            t = -t;
            s = -s;
        }
        if (t != 1) {
            enlarged_ = true;
            den_ *= t;
            for (std::size_t j = 0; j < n; ++j) {
                C_[j] *= t;
                U_[j] *= t;
                V_[j] *= t;
            }
        }
        C_.push_back(s);
    }
    V_.push_back(sigma * C_.back());
    U_.push_back(sigma * V_.back());
    return true;
}

Rational FrobeniusStream::coefficient(std::size_t n) const {
    Rational r(C_.at(n), den_);
    r.canonicalize();
    return r;
}

}  // namespace mlde3::characters
