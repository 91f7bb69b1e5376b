#include "monodromy.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "characters.hpp"

namespace mlde3::monodromy {

namespace {

Triple sorted_mod1(Rational a, Rational b, Rational c) {
    Triple t{frac(a), frac(b), frac(c)};
    std::sort(t.begin(), t.end());
    return t;
}

Rational q(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

}  // namespace

std::vector<LabeledTriple> imprimitive_triples() {
    std::vector<LabeledTriple> out;
    for (long n : {2, 4, 6, 8, 12, 24})
        for (long k = 1; k < n; ++k) {
            if (std::gcd(k, n) != 1) continue;
            Triple t = sorted_mod1(q(k, n), q(-k, 2 * n), q(n - k, 2 * n));
            bool dup = std::any_of(out.begin(), out.end(), [&](const LabeledTriple& o) { return o.exponents == t; });
            if (!dup) out.push_back({t, "n=" + std::to_string(n) + ",k=" + std::to_string(k)});
        }
    return out;
}

std::vector<LabeledTriple> primitive_triples() {
    struct Row {
        const char* label;
        long d, a, b, c;
    };
    static const Row rows[] = {
        {"(5,2)", 10, 5, 3, 7},    {"(5,2)", 10, 5, 1, 9},    {"(5,6)", 30, 5, 11, 29},
        {"(5,6)", 30, 5, 17, 23},  {"(5,6)", 30, 25, 1, 19},  {"(5,6)", 30, 25, 7, 13},
        {"(7,2)", 14, 1, 9, 11},   {"(7,2)", 14, 3, 5, 13},   {"(7,6)", 42, 13, 19, 31},
        {"(7,6)", 42, 25, 37, 1},  {"(7,6)", 42, 41, 5, 17},  {"(7,6)", 42, 11, 23, 29},
    };
    std::vector<LabeledTriple> out;
    for (const auto& r : rows) out.push_back({sorted_mod1(q(r.a, r.d), q(r.b, r.d), q(r.c, r.d)), r.label});
    return out;
}

Triple exponent_triple(const Rational& h1, const Rational& h2) {
    Rational c = characters::central_charge(h1, h2);
    return sorted_mod1(-c / 24, h1 - c / 24, h2 - c / 24);
}

std::string triple_label(const Rational& h1, const Rational& h2) {
    static const std::vector<LabeledTriple> all = [] {
        auto a = imprimitive_triples();
        auto b = primitive_triples();
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }();
    Triple t = exponent_triple(h1, h2);
    for (const auto& l : all)
        if (l.exponents == t) return l.label;
    return {};
}

std::optional<PairClass> pair_class(const Rational& h1, const Rational& h2) {
    Rational a = frac(h1), b = frac(h2);
    if (a == b) return std::nullopt;
    if (a < b) std::swap(a, b);
    Integer da = a.get_den(), db = b.get_den();
    if (da == 5 && db == 5) return PairClass::den5;
    if (da == 7 && db == 7) {
        static const std::vector<CandidatePair> seven = candidate_pairs(PairClass::den7);
        for (const auto& c : seven)
            if (c.h1 == a && c.h2 == b) return PairClass::den7;
        return std::nullopt;
    }
    auto quarter = [](const Integer& d) { return d == 4 || d == 8 || d == 16; };
    if ((da == 2 && quarter(db)) || (db == 2 && quarter(da)) || (da == db && quarter(da)))
        return PairClass::imprimitive;
    return std::nullopt;
}

bool is_admissible(const Rational& h1, const Rational& h2) { return pair_class(h1, h2).has_value(); }

PairClass classify_pair(const Rational& h1, const Rational& h2) {
    auto c = pair_class(h1, h2);
    if (!c) fail(Errc::precondition, "pair is not admissible");
    return *c;
}

std::vector<CandidatePair> candidate_pairs(PairClass cls) {
    std::map<std::pair<Rational, Rational>, unsigned> counts;
    auto add = [&](Rational a, Rational b) {
        a = frac(a);
        b = frac(b);
        if (a < b) std::swap(a, b);
        ++counts[{a, b}];
    };
    if (cls == PairClass::den5) {
        for (long u = 1; u <= 4; ++u)
            for (long v = 1; v < u; ++v) add(q(u, 5), q(v, 5));
    } else if (cls == PairClass::den7) {
        // h_i = r_i - r_0 for each choice of r_0 in each (7, r) triple.
        for (const auto& t : primitive_triples()) {
            if (t.label.rfind("(7", 0) != 0) continue;
            const auto& e = t.exponents;
            for (int i = 0; i < 3; ++i) add(e[(i + 1) % 3] - e[i], e[(i + 2) % 3] - e[i]);
        }
    } else {
        for (long u = 1; u < 16; ++u)
            for (long v = 1; v < 16; ++v) {
                Rational a = q(u, 16), b = q(v, 16);
                if (a > b && pair_class(a, b) == PairClass::imprimitive) add(a, b);
            }
    }
    std::vector<CandidatePair> out;
    for (const auto& [k, n] : counts) out.push_back({k.first, k.second, cls == PairClass::imprimitive ? 1u : n});
    return out;
}

std::string class_name(PairClass c) {
    switch (c) {
        case PairClass::den5: return "den5";
        case PairClass::den7: return "den7";
        case PairClass::imprimitive: return "imprimitive";
    }
    return "unknown";
}

}  // namespace mlde3::monodromy
