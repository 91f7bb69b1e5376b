#include "hypergeom.hpp"

#include <map>

namespace mlde3::hypergeom {

namespace {

bool nonpositive_integer(const Rational& r) { return is_integer(r) && r <= 0; }

bool p_integral(const Rational& r, std::uint64_t p) {
    return !mpz_divisible_ui_p(r.get_den_mpz_t(), p);
}

Rational r_of(long n) { return Rational(n); }

// Numerator/denominator walk of the p-adic digits of a/b, b > 0, p not dividing b.
struct DigitWalk {
    Integer a, b;
    std::uint64_t p;
    std::uint64_t binv;

    DigitWalk(const Rational& alpha, std::uint64_t prime) : a(alpha.get_num()), b(alpha.get_den()), p(prime) {
        Integer inv, pp(std::to_string(p), 10);
        if (!mpz_invert(inv.get_mpz_t(), b.get_mpz_t(), pp.get_mpz_t()))
            fail(Errc::prime_unusable, "argument is not p-integral");
        binv = mpz_get_ui(inv.get_mpz_t());
    }

    std::uint64_t next() {
        std::uint64_t am = mpz_fdiv_ui(a.get_mpz_t(), p);
        std::uint64_t d = static_cast<std::uint64_t>((static_cast<unsigned __int128>(am) * binv) % p);
        a -= b * Integer(std::to_string(d), 10);
        mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), p);
        return d;
    }

    bool tail_is_minus_one() const { return a == -b; }
};

// Same walk in machine words; numerators stay within [-b, |a0|].
struct SmallWalk {
    __int128 a;
    std::int64_t b;
    std::uint64_t p;
    std::uint64_t binv;

    std::uint64_t next() {
        __int128 am = a % static_cast<__int128>(p);
        if (am < 0) am += p;
        std::uint64_t d = static_cast<std::uint64_t>((static_cast<unsigned __int128>(am) * binv) % p);
        a = (a - static_cast<__int128>(d) * b) / static_cast<__int128>(p);
        return d;
    }

    bool tail_is_minus_one() const { return a == -static_cast<__int128>(b); }
};

template <class Walk>
unsigned carries(Walk w, std::uint64_t k) {
    unsigned count = 0, carry = 0;
    const std::uint64_t p = w.p;
    while (k > 0 || carry) {
        if (k == 0 && w.tail_is_minus_one()) fail(Errc::precondition, "carry chain does not terminate");
        std::uint64_t s = w.next() + k % p + carry;
        k /= p;
        carry = s >= p ? 1 : 0;
        count += carry;
    }
    return count;
}

std::uint64_t inverse_mod(std::uint64_t b, std::uint64_t p) {
    Integer inv, bb(std::to_string(b), 10), pp(std::to_string(p), 10);
    if (!mpz_invert(inv.get_mpz_t(), bb.get_mpz_t(), pp.get_mpz_t()))
        fail(Errc::prime_unusable, "argument is not p-integral");
    return mpz_get_ui(inv.get_mpz_t());
}

}  // namespace

void HGParams::validate() const {
    for (const auto& b : lower)
        if (nonpositive_integer(b)) fail(Errc::invalid_argument, "lower parameter is a nonpositive integer");
}

std::vector<Rational> hg_coefficients(const HGParams& params, std::size_t count) {
    params.validate();
    std::vector<Rational> out;
    out.reserve(count);
    Rational b = 1;
    for (std::size_t n = 0; n < count; ++n) {
        out.push_back(b);
        Rational num = 1, den = static_cast<unsigned long>(n + 1);
        for (const auto& a : params.upper) num *= a + static_cast<unsigned long>(n);
        for (const auto& l : params.lower) den *= l + static_cast<unsigned long>(n);
        b = b * num / den;
    }
    return out;
}

Rational hg_coefficient(const HGParams& params, std::size_t n) { return hg_coefficients(params, n + 1).back(); }

std::uint64_t PadicDigits::digit(std::size_t i) const {
    if (i < preperiod.size()) return preperiod[i];
    if (period.empty()) return 0;
    return period[(i - preperiod.size()) % period.size()];
}

PadicDigits padic_digits(const Rational& alpha, std::uint64_t p) {
    if (!is_prime(p)) fail(Errc::invalid_argument, "p must be prime");
    DigitWalk w(alpha, p);
    std::map<Integer, std::size_t> seen;
    std::vector<std::uint64_t> digits;
    while (true) {
        auto [it, fresh] = seen.emplace(w.a, digits.size());
        if (!fresh) {
            PadicDigits d;
            d.prime = p;
            d.preperiod.assign(digits.begin(), digits.begin() + it->second);
            d.period.assign(digits.begin() + it->second, digits.end());
            return d;
        }
        digits.push_back(w.next());
    }
}

Rational to_rational(const PadicDigits& d) {
    Integer p(std::to_string(d.prime), 10);
    Integer pre = 0, per = 0, pk = 1;
    for (auto x : d.preperiod) {
        pre += pk * Integer(std::to_string(x), 10);
        pk *= p;
    }
    Integer q = 1;
    for (auto x : d.period) {
        per += q * Integer(std::to_string(x), 10);
        q *= p;
    }
    // pre + p^len(pre) * per / (1 - p^len(per))
    Rational r(pre);
    if (!d.period.empty()) {
        Rational tail(pk * per, Integer(1 - q));
        tail.canonicalize();  // the denominator is negative until canonicalized
        r += tail;
    }
    return r;
}

unsigned carry_count(const Rational& alpha, std::uint64_t k, std::uint64_t p) {
    if (!p_integral(alpha, p)) fail(Errc::prime_unusable, "argument is not p-integral");
    if (mpz_fits_slong_p(alpha.get_num_mpz_t()) && mpz_fits_slong_p(alpha.get_den_mpz_t()) && p < (1ull << 62)) {
        SmallWalk w{mpz_get_si(alpha.get_num_mpz_t()), mpz_get_si(alpha.get_den_mpz_t()), p, 0};
        w.binv = inverse_mod(static_cast<std::uint64_t>(w.b) % p, p);
        return carries(w, k);
    }
    return carries(DigitWalk(alpha, p), k);
}

HGParams f0_params(const Rational& h1, const Rational& h2) {
    Rational c = 8 * (h1 + h2 - Rational(1, 2));
    return HGParams{{-c / 24, (8 - c) / 24, (16 - c) / 24}, {1 - h1, 1 - h2}};
}

std::optional<long> vp_coefficient(const Rational& h1, const Rational& h2, std::uint64_t k, std::uint64_t p) {
    Rational x = h1 - 1, y = h2 - 1;
    Rational u = -(x + y) / 3;
    std::array<Rational, 3> up{u - Rational(3, 2), u - Rational(7, 6), u - Rational(5, 6)};
    std::array<Rational, 2> lo{-x - 1, -y - 1};
    for (const auto& a : up)
        if (!p_integral(a, p)) fail(Errc::prime_unusable, "prime unusable: upper argument not p-integral");
    for (const auto& b : lo)
        if (!p_integral(b, p)) fail(Errc::prime_unusable, "prime unusable: lower argument not p-integral");
    for (const auto& b : lo)
        if (nonpositive_integer(b + 1) && -(b + 1) < Rational(static_cast<unsigned long>(k)))
            fail(Errc::precondition, "lower Pochhammer symbol vanishes");
    for (const auto& a : up)
        if (nonpositive_integer(a + 1) && -(a + 1) < Rational(static_cast<unsigned long>(k))) return std::nullopt;
    long v = 0;
    for (const auto& a : up) v += carry_count(a, k, p);
    for (const auto& b : lo) v -= carry_count(b, k, p);
    return v;
}

std::optional<long> pochhammer_valuation_oracle(const HGParams& params, std::uint64_t k, std::uint64_t p) {
    params.validate();
    long v = 0;
    for (std::uint64_t n = 0; n < k; ++n) {
        for (const auto& a : params.upper) {
            Rational t = a + r_of(static_cast<long>(n));
            if (t == 0) return std::nullopt;
            v += valuation(t, p);
        }
        for (const auto& b : params.lower) v -= valuation(b + r_of(static_cast<long>(n)), p);
        v -= valuation(Integer(static_cast<unsigned long>(n + 1)), p);
    }
    return v;
}

std::optional<std::size_t> first_negative_index(const HGParams& params, std::uint64_t p, std::size_t limit) {
    params.validate();
    struct Term {
        std::int64_t num, den;
    };
    std::vector<Term> up, lo;
    auto load = [&](const Rational& r, std::vector<Term>& into) {
        if (!p_integral(r, p)) fail(Errc::prime_unusable, "parameter is not p-integral");
        if (!mpz_fits_slong_p(r.get_num_mpz_t()) || !mpz_fits_slong_p(r.get_den_mpz_t()))
            fail(Errc::invalid_argument, "parameter too large");
        into.push_back({mpz_get_si(r.get_num_mpz_t()), mpz_get_si(r.get_den_mpz_t())});
    };
    for (const auto& a : params.upper) load(a, up);
    for (const auto& b : params.lower) load(b, lo);
    const std::int64_t pp = static_cast<std::int64_t>(p);
    auto vp = [pp](std::int64_t z) {
        long v = 0;
        while (z % pp == 0) {
            z /= pp;
            ++v;
        }
        return v;
    };
    long v = 0;
    for (std::size_t n = 0; n + 1 < limit; ++n) {
        // v(B_{n+1}) = v(B_n) + sum v(a + n) - sum v(b + n) - v(n + 1)
        for (const auto& t : up) {
            std::int64_t z = t.num + static_cast<std::int64_t>(n) * t.den;
            if (z == 0) return std::nullopt;
            v += vp(z);
        }
        for (const auto& t : lo) v -= vp(t.num + static_cast<std::int64_t>(n) * t.den);
        v -= vp(static_cast<std::int64_t>(n + 1));
        if (v < 0) return n + 1;
    }
    return std::nullopt;
}

}  // namespace mlde3::hypergeom
