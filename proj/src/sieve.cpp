#include "sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include "hypergeom.hpp"
#include "monodromy.hpp"

namespace mlde3::sieve {

using characters::CharacterSpec;

Rational F1(const Rational& x, const Rational& y) {
    Rational den = (x + 2) * (y - x - 1);
    if (den == 0) fail(Errc::precondition, "F1 pole: (x+2)(y-x-1) = 0");
    return 4 * (2 * y - 4 * x - 3) * (x * x - x * y + 8 * y * y + 3 * x + 14 * y + 8) / den;
}

Rational F2(const Rational& x, const Rational& y) { return F1(y, x); }

Region positivity_region(const Rational& x, const Rational& y) {
    const Rational half5(5, 2);
    if (abs(x + 1) <= half5 && abs(y + 1) <= half5) return Region::boxed;
    if (abs(x - y) <= 1) return Region::diagonal;
    if (y >= -2 && y <= 0) return Region::horizontal_y;
    if (x >= -2 && x <= 0) return Region::horizontal_x;
    return Region::excluded;
}

std::string region_name(Region r) {
    switch (r) {
        case Region::boxed: return "boxed";
        case Region::horizontal_y: return "horizontal_y";
        case Region::horizontal_x: return "horizontal_x";
        case Region::diagonal: return "diagonal";
        case Region::excluded: return "excluded";
    }
    return "unknown";
}

std::string status_name(Status s) {
    switch (s) {
        case Status::survives: return "survives";
        case Status::fails_positivity: return "fails_positivity";
        case Status::fails_integrality: return "fails_integrality";
        case Status::fails_region: return "fails_region";
        case Status::excluded_reducible: return "excluded_reducible";
    }
    return "unknown";
}

std::string method_name(Method m) {
    switch (m) {
        case Method::none: return "none";
        case Method::prefilter: return "prefilter";
        case Method::witness: return "witness";
        case Method::scan: return "scan";
        case Method::family_proof: return "family_proof";
    }
    return "unknown";
}

namespace {

std::uint64_t smallest_prime_factor(const Integer& n) {
    Integer t = abs(n);
    if (t <= 1) return 0;
    for (std::uint64_t p = 2; p < 1000000; p += (p == 2 ? 1 : 2))
        if (mpz_divisible_ui_p(t.get_mpz_t(), p)) return p;
    if (mpz_fits_ulong_p(t.get_mpz_t()) && mpz_probab_prime_p(t.get_mpz_t(), 30)) return mpz_get_ui(t.get_mpz_t());
    return 0;
}

bool all_p_integral(const hypergeom::HGParams& hp, std::uint64_t p) {
    for (const auto& a : hp.upper)
        if (mpz_divisible_ui_p(a.get_den_mpz_t(), p)) return false;
    for (const auto& b : hp.lower)
        if (mpz_divisible_ui_p(b.get_den_mpz_t(), p)) return false;
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

}  // namespace

SieveVerdict scan_candidate(const CharacterSpec& spec, std::size_t order) {
    spec.validate();
    SieveVerdict v;
    v.candidate = spec;
    v.m = 0;
    v.method = Method::scan;
    auto mc = characters::mlde_coefficients(spec.h1, spec.h2);
    characters::FrobeniusStream s0(mc.a, mc.b, mc.exponents[0], order);
    characters::FrobeniusStream s1(mc.a, mc.b, mc.exponents[1], order);
    characters::FrobeniusStream s2(mc.a, mc.b, mc.exponents[2], order);
    for (std::size_t n = 0; n < order; ++n) {
        s0.advance();
        if (n == 1) v.m = s0.coefficient(1);
        if (s0.enlarged()) {
            v.status = Status::fails_integrality;
            v.failed_index = n;
            v.witness = Witness{smallest_prime_factor(s0.denominator()), n};
            return v;
        }
        characters::FrobeniusStream* streams[3] = {&s0, &s1, &s2};
        for (int i = 0; i < 3; ++i) {
            if (i > 0) streams[i]->advance();
            if (streams[i]->numerator(n) < 0) {
                v.status = Status::fails_positivity;
                v.coordinate = i;
                v.failed_index = n;
                return v;
            }
        }
    }
    v.status = Status::survives;
    return v;
}

std::optional<Witness> find_witness(const Rational& h1, const Rational& h2, std::size_t order, std::uint64_t prime_cap) {
    auto hp = hypergeom::f0_params(h1, h2);
    Rational c = characters::central_charge(h1, h2);
    for (std::uint64_t p : primes_up_to(prime_cap)) {
        if (p < 5) continue;
        // The j-power and 1728^k factors must be p-integral units as well.
        if (!all_p_integral(hp, p) || mpz_divisible_ui_p(Rational(c / 24).get_den_mpz_t(), p)) continue;
        if (auto k = hypergeom::first_negative_index(hp, p, order)) return Witness{p, *k};
    }
    return std::nullopt;
}

std::uint64_t zeroth_digit(const Rational& a, std::uint64_t p) {
    Integer inv, pp(std::to_string(p), 10);
    if (!mpz_invert(inv.get_mpz_t(), a.get_den_mpz_t(), pp.get_mpz_t()))
        fail(Errc::prime_unusable, "argument is not p-integral");
    Integer r = Integer(a.get_num()) * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
    return mpz_get_ui(r.get_mpz_t());
}

unsigned den5_class(const Rational& y) {
    Rational t = -y - 1;
    unsigned best = 0;
    Rational best_gap;
    for (unsigned c : {1u, 7u, 13u, 19u}) {
        // A large prime in the class decides the asymptotic digit ratio.
        Integer p(std::to_string(1000003ull * 30 + c), 10);
        while (!mpz_probab_prime_p(p.get_mpz_t(), 30)) p += 30;
        std::uint64_t pu = mpz_get_ui(p.get_mpz_t());
        Rational gap = abs(Rational(5 * Integer(std::to_string(zeroth_digit(t, pu)), 10) - 4 * p));
        if (best == 0 || gap < best_gap) {
            best = c;
            best_gap = gap;
        }
    }
    return best;
}

namespace {

bool confirm(const Rational& x, const Rational& y, std::uint64_t p, std::uint64_t k) {
    Rational h1 = x + 1, h2 = y + 1;
    auto v = hypergeom::vp_coefficient(h1, h2, k, p);
    if (!v || *v >= 0) return false;
    auto first = hypergeom::first_negative_index(hypergeom::f0_params(h1, h2), p, k + 1);
    return first && *first == k;
}

}  // namespace

std::optional<Witness> witness_search_den5(const Rational& x, const Rational& y, std::uint64_t prime_cap) {
    Rational x5 = 5 * x, y5 = 5 * y;
    if (!is_integer(x5) || !is_integer(y5) || mpz_divisible_ui_p(x5.get_num_mpz_t(), 5) ||
        mpz_divisible_ui_p(y5.get_num_mpz_t(), 5) || abs(y + 1) >= 1)
        fail(Errc::precondition, "witness_search_den5 needs 5x, 5y integers prime to 5 and |y+1| < 1");
    Integer d = x5.get_num() - y5.get_num();
    if (mpz_divisible_ui_p(d.get_mpz_t(), 5)) fail(Errc::precondition, "5x and 5y must differ mod 5");
    unsigned p0 = den5_class(y);
    if (prime_cap == 0) {
        Rational guess = abs(x) * 20 + 1000;
        prime_cap = mpz_get_ui(floor(guess).get_mpz_t());
    }
    const Rational t = -y - 1;
    for (std::uint64_t p = 97; p <= prime_cap; ++p) {
        if (p % 30 != p0 || !is_prime(p)) continue;
        // [(p-1)x/3]_p is the zeroth digit of -x/3.
        std::uint64_t shift = zeroth_digit(Rational(Integer(std::to_string(p - 1), 10)) * x / 3, p);
        if (!(shift > 0 && 30 * shift < p)) continue;
        std::uint64_t k = p - zeroth_digit(t, p);
        if (confirm(x, y, p, k)) return Witness{p, k};
    }
    return std::nullopt;
}

std::optional<Witness> witness_search(const Rational& x, const Rational& y, unsigned N, std::uint64_t prime_cap) {
    const Rational t = -y - 1;
    const std::uint64_t mod = 6ull * N;
    for (std::uint64_t p = 97; p <= prime_cap; ++p) {
        if (std::gcd(p, mod) != 1 || !is_prime(p)) continue;
        if (mpz_divisible_ui_p(t.get_den_mpz_t(), p) || mpz_divisible_ui_p(x.get_den_mpz_t(), p)) continue;
        std::uint64_t k = p - zeroth_digit(t, p);
        if (confirm(x, y, p, k)) return Witness{p, k};
    }
    return std::nullopt;
}

Witness witness_beta(long beta) {
    if (beta <= 24 || beta % 3 == 0 || beta % 8 == 0)
        fail(Errc::precondition, "witness_beta needs beta > 24 prime to 3 and 8");
    Rational x(beta, 16), y(-3, 2);
    x.canonicalize();
    unsigned long n = static_cast<unsigned long>(beta + 24);
    for (unsigned long p = 5; p <= n; ++p) {
        if (n % p != 0 || !is_prime(p)) continue;
        std::uint64_t k = (p - 1) / 2;
        auto v = hypergeom::vp_coefficient(x + 1, y + 1, k, p);
        if (v && *v == -1 && confirm(x, y, p, k)) return Witness{p, k};
    }
    fail(Errc::internal, "no prime p > 3 of beta + 24 gives a witness");
}

unsigned thread_count(unsigned requested) {
    if (requested) return requested;
    if (const char* env = std::getenv("MLDE3_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

namespace {

struct Point {
    Rational x, y;  // x >= y
    unsigned denominator;
    surface::Provenance provenance;
    long parameter;
};

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

struct PointKey {
    Rational x, y;
    bool operator<(const PointKey& o) const { return x != o.x ? x < o.x : y < o.y; }
};

class PointSet {
public:
    void add(Rational x, Rational y, unsigned den, surface::Provenance prov = surface::Provenance::generic_enumeration,
             long param = 0) {
        x.canonicalize();
        y.canonicalize();
        if (x < y) std::swap(x, y);
        auto [it, fresh] = pts_.emplace(PointKey{x, y}, Point{x, y, den, prov, param});
        if (!fresh && prov != surface::Provenance::generic_enumeration) {
            it->second.provenance = prov;
            it->second.parameter = param;
        }
    }
    std::vector<Point> list() const {
        std::vector<Point> out;
        for (const auto& [k, p] : pts_) out.push_back(p);
        return out;
    }

private:
    std::map<PointKey, Point> pts_;
};

Rational rq(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

void enumerate_lines(PointSet& set, unsigned N) {
    const long n = N;
    // Box: |x+1|, |y+1| <= 5/2.
    for (long X = -(7 * n) / 2; X <= (3 * n) / 2; ++X)
        for (long Y = -(7 * n) / 2; Y <= X; ++Y) set.add(rq(X, n), rq(Y, n), N, surface::Provenance::boxed_region);
    // Horizontal lines y = Y/N in [-2, 0]: x = X/N with X | P(0).
    for (long Y = -2 * n; Y <= 0; ++Y) {
        Rational y = rq(Y, n);
        if (is_integer(y) || y == Rational(-1, 2) || y == Rational(-3, 2)) continue;
        Integer p0 = -(4 * Integer(Y) + 6 * n) * (16 * Integer(Y) * Y - 4 * Integer(n) * n);
        for (std::uint64_t d : divisors(mpz_get_ui(Integer(abs(p0)).get_mpz_t())))
            for (long s : {1L, -1L}) set.add(rq(s * static_cast<long>(d), n), y, N);
    }
    // Diagonal lines x - y = A/N, 0 < A < N: X | P(0) with P(0) = -(6N - 4A)(16A^2 - 4N^2).
    for (long A = 1; A < n; ++A) {
        if (2 * A == n) continue;
        Integer p0 = -(6 * Integer(n) - 4 * A) * (16 * Integer(A) * A - 4 * Integer(n) * n);
        for (std::uint64_t d : divisors(mpz_get_ui(Integer(abs(p0)).get_mpz_t())))
            for (long s : {1L, -1L}) {
                Rational x = rq(s * static_cast<long>(d), n);
                set.add(x, x - rq(A, n), N);
            }
    }
}

SieveVerdict evaluate(const Point& pt, const ClassifyOptions& opts, bool& counted) {
    counted = false;
    SieveVerdict v;
    v.provenance = pt.provenance;
    v.family_parameter = pt.parameter;
    v.denominator = pt.denominator;
    const Rational h1 = pt.x + 1, h2 = pt.y + 1;
    v.candidate = CharacterSpec{h1, h2};
    if (pt.x == 0 || pt.y == 0 || is_integer(h1) || is_integer(h2) || is_integer(h1 - h2)) {
        v.status = Status::excluded_reducible;
        return v;
    }
    if (!monodromy::is_admissible(h1, h2)) {
        v.status = Status::excluded_reducible;
        return v;
    }
    v.m = surface::m_of(pt.x, pt.y);
    if (!is_integer(v.m) || v.m < 0) {
        v.status = Status::excluded_reducible;
        return v;
    }
    counted = true;
    // Fiber enumeration never sees these two sets, so they are reported apart from it.
    const bool boxed = abs(h1) <= Rational(5, 2) && abs(h2) <= Rational(5, 2);
    if (pt.x - pt.y == Rational(1, 2) && !boxed) {
        v.provenance = surface::Provenance::q4_diagonal_family;
        v.family_parameter = mpz_get_si(v.m.get_num_mpz_t());
    } else if (boxed && 248 * (pt.x + pt.y) == v.m - 372) {
        v.provenance = surface::Provenance::degenerate_line;
    }
    if (positivity_region(pt.x, pt.y) == Region::excluded) {
        v.status = Status::fails_region;
        v.method = Method::prefilter;
        return v;
    }
    for (int i = 1; i <= 2; ++i) {
        Rational f = i == 1 ? F1(pt.x, pt.y) : F2(pt.x, pt.y);
        if (f < 0) {
            v.status = Status::fails_positivity;
            v.coordinate = i;
            v.failed_index = 1;
            v.method = Method::prefilter;
            return v;
        }
    }
    if (pt.provenance == surface::Provenance::y_threehalf_family && pt.parameter > 24) {
        v.status = Status::fails_integrality;
        v.witness = witness_beta(pt.parameter);
        v.failed_index = v.witness->index;
        v.method = Method::family_proof;
        return v;
    }
    if (auto w = find_witness(h1, h2, opts.order, opts.witness_prime_cap)) {
        v.status = Status::fails_integrality;
        v.witness = w;
        v.failed_index = w->index;
        v.method = Method::witness;
        return v;
    }
    SieveVerdict s = scan_candidate(v.candidate, opts.order);
    v.status = s.status;
    v.coordinate = s.coordinate;
    v.failed_index = s.failed_index;
    v.witness = s.witness;
    v.method = Method::scan;
    return v;
}

unsigned den_rank(unsigned d) { return d == 5 ? 0 : d == 7 ? 1 : 2; }

}  // namespace

ClassifyResult classify_all(const ClassifyOptions& opts) {
    PointSet set;
    for (unsigned N : opts.denominators) {
        if (N == 0) fail(Errc::invalid_argument, "denominator must be positive");
        enumerate_lines(set, N);
    }
    ClassifyResult res;
    if (opts.denominators.count(16)) {
        for (long s = 1; s <= opts.y_half_max_s; ++s) {
            if (s % 8 == 0) continue;
            auto p = surface::y_half_point(s);
            set.add(p.x, p.y, 16, surface::Provenance::y_half_family, s);
        }
        for (long beta = -24; beta <= opts.beta_max; ++beta) {
            if (beta % 3 == 0 || beta % 8 == 0) continue;
            set.add(rq(beta, 16), Rational(-3, 2), 16, surface::Provenance::y_threehalf_family, beta);
        }
        for (long m = 0; m <= opts.q4_max_m; ++m) {
            Rational x = -rq(m, 16) - Rational(1, 2);
            set.add(x, x - Rational(1, 2), 16);
        }
    }
    std::vector<Point> pts = set.list();
    std::vector<SieveVerdict> out(pts.size());
    std::vector<char> keep(pts.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < pts.size(); i = next++) {
            bool counted = false;
            out[i] = evaluate(pts[i], opts, counted);
            keep[i] = counted;
        }
    };
    unsigned nt = std::min<std::size_t>(thread_count(opts.threads), std::max<std::size_t>(pts.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!keep[i]) {
            ++res.reducible_skipped;
            continue;
        }
        if (out[i].status == Status::survives) {
            if (out[i].provenance == surface::Provenance::q4_diagonal_family) ++res.q4_outside_box_survivors;
            if (out[i].provenance == surface::Provenance::degenerate_line) ++res.degenerate_line_survivors;
        }
        if (pts[i].provenance == surface::Provenance::y_threehalf_family && pts[i].parameter > 24) ++res.beta_checked;
        res.verdicts.push_back(std::move(out[i]));
    }
    res.candidates = res.verdicts.size();
    std::sort(res.verdicts.begin(), res.verdicts.end(), [](const SieveVerdict& a, const SieveVerdict& b) {
        if (a.denominator != b.denominator) return den_rank(a.denominator) < den_rank(b.denominator);
        if (a.m != b.m) return a.m < b.m;
        if (a.candidate.h1 != b.candidate.h1) return a.candidate.h1 < b.candidate.h1;
        return a.candidate.h2 < b.candidate.h2;
    });
    res.log.push_back("points enumerated: " + std::to_string(pts.size()));
    res.log.push_back("candidates with admissible monodromy and integral m >= 0: " + std::to_string(res.candidates));
    res.log.push_back("x - y = 1/2 family outside the box: " + std::to_string(res.q4_outside_box_survivors) +
                      " survivors with m <= " + std::to_string(opts.q4_max_m));
    res.log.push_back("boxed points on the degenerate lines m = 0, 248, 496: " +
                      std::to_string(res.degenerate_line_survivors) + " survivors");
    res.log.push_back("y = -3/2 family: witness_beta applied for 24 < beta <= " + std::to_string(opts.beta_max) +
                      " (" + std::to_string(res.beta_checked) + " members)");
    return res;
}

bool is_tagged(surface::Provenance p) {
    using surface::Provenance;
    return p == Provenance::y_half_family || p == Provenance::q4_diagonal_family || p == Provenance::degenerate_line;
}

std::vector<SieveVerdict> ClassifyResult::survivors(unsigned denominator, bool include_family) const {
    std::vector<SieveVerdict> out;
    for (const auto& v : verdicts) {
        if (v.status != Status::survives || v.denominator != denominator) continue;
        if (!include_family && is_tagged(v.provenance)) continue;
        out.push_back(v);
    }
    return out;
}

nlohmann::json to_json(const SieveVerdict& v) {
    const Rational& h1 = v.candidate.h1;
    const Rational& h2 = v.candidate.h2;
    nlohmann::json j{{"m", to_string(v.m)},
                     {"h1", to_string(h1)},
                     {"h2", to_string(h2)},
                     {"c", to_string(characters::central_charge(h1, h2))},
                     {"c_eff", to_string(characters::effective_central_charge(h1, h2))},
                     {"denominator", v.denominator},
                     {"status", status_name(v.status)},
                     {"method", method_name(v.method)},
                     {"provenance", surface::provenance_name(v.provenance)}};
    if (v.status == Status::fails_positivity) {
        j["coordinate"] = v.coordinate;
        j["index"] = v.failed_index;
    }
    if (v.witness) j["witness"] = {{"prime", v.witness->prime}, {"index", v.witness->index}};
    if (v.family_parameter) j["family_parameter"] = v.family_parameter;
    return j;
}

std::string verdict_csv_header() { return "m,h1,h2,c,c_eff,denominator,status,method,detail,provenance"; }

std::string to_csv_row(const SieveVerdict& v) {
    std::ostringstream os;
    const Rational& h1 = v.candidate.h1;
    const Rational& h2 = v.candidate.h2;
    os << to_string(v.m) << ',' << to_string(h1) << ',' << to_string(h2) << ','
       << to_string(characters::central_charge(h1, h2)) << ',' << to_string(characters::effective_central_charge(h1, h2))
       << ',' << v.denominator << ',' << status_name(v.status) << ',' << method_name(v.method) << ',';
    if (v.status == Status::fails_positivity) os << "f" << v.coordinate << "@" << v.failed_index;
    if (v.witness) os << "p=" << v.witness->prime << "@" << v.witness->index;
    os << ',' << surface::provenance_name(v.provenance);
    if (v.family_parameter) os << '(' << v.family_parameter << ')';
    return os.str();
}

}  // namespace mlde3::sieve
