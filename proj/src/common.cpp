#include "common.hpp"

#include <cctype>

namespace mlde3 {

Rational parse_rational(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string s(text.substr(b, e - b));
    if (s.empty()) fail(Errc::invalid_argument, "empty rational");
    if (s[0] == '+') s.erase(0, 1);
    std::size_t slash = s.find('/');
    auto digits_ok = [](const std::string& t, bool sign_ok) {
        std::size_t i = (sign_ok && !t.empty() && t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        fail(Errc::invalid_argument, "malformed rational '" + s + "'");
    Integer n(num, 10), d(den, 10);
    if (d == 0) fail(Errc::invalid_argument, "zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) { return r - Rational(floor(r)); }

long valuation(const Integer& z, unsigned long p) {
    if (z == 0) fail(Errc::invalid_argument, "valuation of zero");
    Integer t = z;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

long valuation(const Rational& r, unsigned long p) {
    return valuation(Integer(r.get_num()), p) - valuation(Integer(r.get_den()), p);
}

bool exact_sqrt(const Integer& n, Integer& root) {
    if (n < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return true;
}

bool exact_sqrt(const Rational& r, Rational& root) {
    Integer a, b;
    if (!exact_sqrt(Integer(r.get_num()), a) || !exact_sqrt(Integer(r.get_den()), b)) return false;
    root = Rational(a, b);
    return true;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull})
        if (n % p == 0) return n == p;
    Integer z(std::to_string(n), 10);
    return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

}  // namespace mlde3
