#include <doctest.h>

#include <set>

#include "characters.hpp"
#include "monodromy.hpp"
#include "test_util.hpp"

using namespace mlde3;
using namespace mlde3::monodromy;

namespace {

bool half_mod_one(const Triple& t) { return frac(t[0] + t[1] + t[2]) == Rational(1, 2); }

}  // namespace

TEST_CASE("imprimitive triples") {
    const auto ts = imprimitive_triples();
    CHECK(!ts.empty());
    bool n2 = false;
    for (const auto& t : ts) {
        CHECK(half_mod_one(t.exponents));
        CHECK(t.exponents[0] != t.exponents[1]);
        CHECK(t.exponents[1] != t.exponents[2]);
        CHECK(t.exponents[0] != t.exponents[2]);
        for (const auto& r : t.exponents) CHECK((r >= 0 && r < 1));
        n2 = n2 || t.label == "n=2,k=1";
    }
    CHECK(n2);
}

TEST_CASE("primitive triples: the twelve listed ones") {
    const auto ts = primitive_triples();
    CHECK(ts.size() == 12);
    std::set<Triple> s;
    for (const auto& t : ts) {
        CHECK(half_mod_one(t.exponents));
        s.insert(t.exponents);
    }
    CHECK(s.size() == 12);
    CHECK(s.count(Triple{Rational(3, 10), Rational(1, 2), Rational(7, 10)}));
    CHECK(s.count(Triple{Rational(13, 42), Rational(19, 42), Rational(31, 42)}));
}

TEST_CASE("candidate pairs") {
    const auto d5 = candidate_pairs(PairClass::den5);
    CHECK(d5.size() == 6);
    for (const auto& p : d5) {
        CHECK(p.h1.get_den() == 5);
        CHECK(p.h2.get_den() == 5);
        CHECK(p.h1 > p.h2);
    }

    const auto d7 = candidate_pairs(PairClass::den7);
    std::set<std::pair<Rational, Rational>> got;
    for (const auto& p : d7) {
        CHECK(p.multiplicity == 3);
        got.insert({p.h2, p.h1});
    }
    const std::set<std::pair<Rational, Rational>> want{
        {Rational(1, 7), Rational(3, 7)}, {Rational(1, 7), Rational(5, 7)}, {Rational(2, 7), Rational(3, 7)},
        {Rational(2, 7), Rational(6, 7)}, {Rational(4, 7), Rational(5, 7)}, {Rational(4, 7), Rational(6, 7)}};
    CHECK(got == want);

    for (const auto& p : candidate_pairs(PairClass::imprimitive)) {
        const bool half = p.h1 == Rational(1, 2) || p.h2 == Rational(1, 2);
        const auto d1 = p.h1.get_den(), d2 = p.h2.get_den();
        const bool same = d1 == d2 && (d1 == 4 || d1 == 8 || d1 == 16);
        CHECK((half || same));
        CHECK((d1 == 1 || d1 == 2 || d1 == 4 || d1 == 8 || d1 == 16));
    }
}

TEST_CASE("imprimitive pairs agree with the three residue families") {
    // {-3k/2n, (n-3k)/2n}, {3k/2n, 1/2}, {(3k+n)/2n, 1/2} for even n | 24, gcd(k, n) = 1
    std::set<std::pair<Rational, Rational>> fam;
    auto add = [&](Rational a, Rational b) {
        a = frac(a);
        b = frac(b);
        if (a < b) std::swap(a, b);
        if (a != b && a != 0 && b != 0) fam.insert({a, b});
    };
    for (long n : {2l, 4l, 6l, 8l, 12l, 24l})
        for (long k = 1; k < n; ++k) {
            if (std::gcd(k, n) != 1) continue;
            add(Q(-3 * k, 2 * n), Q(n - 3 * k, 2 * n));
            add(Q(3 * k, 2 * n), Rational(1, 2));
            add(Q(3 * k + n, 2 * n), Rational(1, 2));
        }
    // (h1, h2) = (r1 - r0, r2 - r0) mod 1 for each choice of r0 in an imprimitive triple
    std::set<std::pair<Rational, Rational>> derived;
    for (const auto& t : imprimitive_triples())
        for (int i = 0; i < 3; ++i) {
            Rational a = frac(t.exponents[(i + 1) % 3] - t.exponents[i]);
            Rational b = frac(t.exponents[(i + 2) % 3] - t.exponents[i]);
            if (a < b) std::swap(a, b);
            derived.insert({a, b});
        }
    CHECK(derived == fam);

    std::set<std::pair<Rational, Rational>> cands;
    for (const auto& p : candidate_pairs(PairClass::imprimitive)) cands.insert({p.h1, p.h2});
    for (const auto& p : fam) {
        INFO(to_string(p.first) << ", " << to_string(p.second));
        CHECK(cands.count(p) == 1);
    }
}

TEST_CASE("exponent triples of golden rows") {
    for (const auto& r : golden("full57").rows) {
        const Rational h1 = parse_rational(r[1]), h2 = parse_rational(r[2]);
        const auto t = exponent_triple(h1, h2);
        CHECK(half_mod_one(t));
        CHECK(!triple_label(h1, h2).empty());
        const auto cls = pair_class(h1, h2);
        REQUIRE(cls);
        CHECK(*cls == (r[5] == "5" ? PairClass::den5 : PairClass::den7));
        // r0 = -c/24 mod 1
        CHECK(std::count(t.begin(), t.end(), frac(-characters::central_charge(h1, h2) / 24)) == 1);
    }
    for (const auto& r : golden("full2").rows) {
        const auto cls = pair_class(parse_rational(r[1]), parse_rational(r[2]));
        REQUIRE(cls);
        CHECK(*cls == PairClass::imprimitive);
    }
}

TEST_CASE("admissibility by denominators") {
    CHECK(is_admissible(Rational(2, 5), Rational(3, 5)));
    CHECK(is_admissible(Rational(3, 2), Rational(31, 16)));
    CHECK(is_admissible(Rational(-2, 7), Rational(-3, 7)));
    CHECK_FALSE(is_admissible(Rational(1, 7), Rational(2, 7)));  // an omitted den-7 pair
    CHECK_FALSE(is_admissible(Rational(1, 3), Rational(2, 3)));
    CHECK_FALSE(is_admissible(Rational(1, 4), Rational(1, 8)));  // unequal denominators, no half
    CHECK(is_admissible(Rational(1, 4), Rational(3, 4)));
}
