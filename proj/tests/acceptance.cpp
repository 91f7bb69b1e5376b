// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--only 1,5] [--expect-fail 9] [--full] [--threads N]
//
// Exit status 0 when every criterion that ran passed, except those listed in
// --expect-fail, which must fail (a listed criterion that passes is an error).

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "characters.hpp"
#include "hypergeom.hpp"
#include "lie.hpp"
#include "pipeline.hpp"
#include "primes.hpp"
#include "report.hpp"
#include "sieve.hpp"
#include "smatrix.hpp"
#include "surface.hpp"

using namespace mlde3;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Settings {
    bool full = false;
    unsigned threads = 0;
};

constexpr mpfr_prec_t kPrec = 256;
constexpr double kSTol = 1e-20;
constexpr double kATol = 0.25;

Rational R(const std::string& s) { return parse_rational(s); }

report::Table table(const std::string& name) {
    return report::read_csv(std::string(MLDE3_TEST_DATA_DIR) + "/" + name + ".csv", name);
}

struct URow {
    Rational h1, h2;
    Integer A1, A2;
};

std::vector<URow> useries() {
    std::vector<URow> out;
    for (const auto& r : table("useries").rows) out.push_back({R(r[1]), R(r[2]), Integer(r[5]), Integer(r[6])});
    return out;
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

// 1. Golden Fourier coefficients, exact.
Outcome fourier(const Settings&) {
    const auto f = table("fourier");
    std::size_t compared = 0, bad = 0;
    std::string first_bad;
    for (const auto& u : useries()) {
        auto cv = characters::character_vector({u.h1, u.h2, u.A1, u.A2}, 7);
        for (const auto& row : f.rows) {
            if (R(row[0]) != u.h1 || R(row[1]) != u.h2) continue;
            const int comp = std::stoi(row[2]);
            for (std::size_t n = 0; n < 7; ++n) {
                if (row[3 + n].empty()) continue;
                ++compared;
                if (cv.f[comp].coeff(n) != R(row[3 + n])) {
                    if (!bad++) first_bad = row[1] + " f" + row[2] + " a" + std::to_string(n);
                }
            }
        }
    }
    return {bad == 0 && compared > 0,
            std::to_string(compared) + " coefficients, " + std::to_string(bad) + " mismatches" +
                (bad ? " (first " + first_bad + ")" : "")};
}

// 2 and 3 share the extraction.
struct Extracted {
    URow row;
    smatrix::SMatrix unit;
    smatrix::Symmetrization sym;
};

const std::vector<Extracted>& extracted() {
    static const std::vector<Extracted> all = [] {
        std::vector<Extracted> v;
        for (const auto& u : useries()) {
            auto s = smatrix::extract_S({u.h1, u.h2}, kPrec, 120);
            auto sym = smatrix::symmetrize(s);
            v.push_back({u, std::move(s), std::move(sym)});
        }
        return v;
    }();
    return all;
}

Outcome normalizations(const Settings&) {
    std::size_t ok = 0;
    double worst = 0;
    std::string bad;
    for (const auto& e : extracted()) {
        worst = std::max(worst, e.sym.error.to_double());
        const bool good = e.sym.status == smatrix::SymmetrizeStatus::accepted && e.sym.A1 == e.row.A1 &&
                          e.sym.A2 == e.row.A2 && e.sym.error.to_double() < kATol;
        if (good)
            ++ok;
        else if (bad.empty())
            bad = " (first failure h2 = " + to_string(e.row.h2) + ": " + smatrix::status_name(e.sym.status) + ")";
    }
    return {ok == 11, std::to_string(ok) + "/11 rows, largest certified error " + fmt(worst) + " < " +
                          fmt(kATol) + bad};
}

Outcome smatrices(const Settings&) {
    const BigFloat half(Rational(1, 2), kPrec), r2 = sqrt(BigFloat(2, kPrec)) * half, zero(kPrec);
    const BigFloat want[3][3] = {{half, half, r2}, {half, half, -r2}, {r2, -r2, zero}};
    double dev = 0, sq = 0, det = 0;
    for (const auto& e : extracted()) {
        const auto s = smatrix::fold_normalization(e.unit, e.row.A1, e.row.A2).S;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                dev = std::max(dev, abs(s[i][j] - Complex(want[i][j], zero)).to_double());
                Complex acc(kPrec);
                for (int k = 0; k < 3; ++k) acc += s[i][k] * s[k][j];
                sq = std::max(sq, abs(acc - Complex(BigFloat(i == j ? 1L : 0L, kPrec), zero)).to_double());
            }
        Complex d = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
                    s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
        det = std::max(det, abs(d + Complex(BigFloat(1L, kPrec), zero)).to_double());
    }
    const bool pass = dev < kSTol && sq < kSTol && det < kSTol && extracted().size() == 11;
    return {pass, "max |S - S_closed| " + fmt(dev) + ", |S^2 - I| " + fmt(sq) + ", |det S + 1| " + fmt(det) +
                      " (tolerance " + fmt(kSTol) + ")"};
}

// 4. Glueing identity through q^10.
Outcome glueing(const Settings&) {
    std::size_t ok = 0;
    std::string bad;
    for (int k : {0, 1, 2, 3, 4, 5, 6, 8}) {
        auto g = smatrix::glueing_character(15 - k, 12, kPrec);
        const bool good = g.matches_j && g.constant == 48 * k && g.dim_X1 == 48 * k;
        if (good)
            ++ok;
        else if (bad.empty())
            bad = " (k = " + std::to_string(k) + " fails)";
    }
    return {ok == 8, std::to_string(ok) + "/8 values of k exact through q^10" + bad};
}

// 5. Fiber counts for 0 <= m <= 2000.
Outcome fibers(const Settings&) {
    std::set<Rational> figure_m;
    for (const auto& r : table("full57").rows) figure_m.insert(R(r[0]));
    std::size_t below8 = 0, over = 0;
    std::map<unsigned, std::map<std::size_t, std::size_t>> histogram;  // N -> count -> #m
    std::set<long> stray;  // m off the figure with a_m(5) or a_m(7) nonzero
    for (long m = 0; m <= 2000; ++m) {
        for (unsigned N : {16u, 5u, 7u}) {
            auto c = surface::am_count(m, N);
            histogram[N][c.count]++;
            if (!c.within_bound) ++over;
            if (N == 16 && c.count < 8) ++below8;
            if (N != 16 && c.count > 0 && !figure_m.count(m)) stray.insert(m);
        }
    }
    auto mode = [&](unsigned N) {
        return std::max_element(histogram[N].begin(), histogram[N].end(),
                                [](const auto& a, const auto& b) { return a.second < b.second; })
            ->first;
    };
    const bool pass = below8 == 0 && mode(16) == 8 && over == 0 && stray.empty();
    std::string detail = "a_m(16) < 8 for " + std::to_string(below8) + " m, common value " +
                         std::to_string(mode(16)) + " (" + std::to_string(histogram[16][8]) +
                         " of 2001), bound violations " + std::to_string(over) + "; common a_m(5), a_m(7): " +
                         std::to_string(mode(5)) + ", " + std::to_string(mode(7)) + " (zero for " +
                         std::to_string(histogram[5][0]) + ", " + std::to_string(histogram[7][0]) +
                         " m); m off the figure with a_m(5) or a_m(7) nonzero: " + std::to_string(stray.size());
    if (!stray.empty()) detail += " (first m = " + std::to_string(*stray.begin()) + ")";
    return {pass, detail};
}

// 6. Figure row sets at depth 1000.
Outcome sieve_tables(const Settings& s) {
    sieve::ClassifyOptions o;
    o.order = 1000;
    o.threads = s.threads;
    auto r = sieve::classify_all(o);
    auto m57 = report::compare(table("full57"), pipeline::figure57_table(r), {"m", "h1", "h2"}, {"denominator"});
    auto m2 = report::compare(table("full2"), pipeline::figure2_table(r), {"m", "h1", "h2"}, {});
    std::size_t d5 = r.survivors(5, false).size(), d7 = r.survivors(7, false).size(),
                d16 = r.survivors(16, false).size();
    std::string detail = "denominator 5: " + std::to_string(d5) + ", 7: " + std::to_string(d7) +
                         ", imprimitive: " + std::to_string(d16) + " rows; " + std::to_string(m57.size() + m2.size()) +
                         " differences from the figures";
    if (!m57.empty()) detail += " (first " + report::to_string(m57.front()) + ")";
    else if (!m2.empty()) detail += " (first " + report::to_string(m2.front()) + ")";
    return {m57.empty() && m2.empty() && d5 == 34 && d7 == 18, detail};
}

// 7. y = -3/2 witnesses, confirmed on the exact coefficient.
Outcome witnesses(const Settings&) {
    std::mt19937 rng(20240607);
    std::uniform_int_distribution<long> dist(25, 600);
    std::size_t ok = 0, tried = 0;
    std::string bad;
    while (tried < 50) {
        const long beta = dist(rng);
        if (beta % 3 == 0 || beta % 8 == 0) continue;
        ++tried;
        auto w = sieve::witness_beta(beta);
        Rational h1 = Rational(beta) / 16 + 1, h2(-1, 2);
        auto mc = characters::mlde_coefficients(h1, h2);
        auto f0 = characters::frobenius_solve(mc.a, mc.b, mc.exponents[0], w.index + 1);
        const bool good = w.prime > 3 && (beta + 24) % static_cast<long>(w.prime) == 0 &&
                          w.index == (w.prime - 1) / 2 && valuation(f0.coeff(w.index), w.prime) <= -1;
        if (good)
            ++ok;
        else if (bad.empty())
            bad = " (first failure beta = " + std::to_string(beta) + ")";
    }
    return {ok == 50, std::to_string(ok) + "/50 sampled beta in [25, 600]" + bad};
}

// 8. The three oracle equivalences.
Outcome oracles(const Settings&) {
    // carry counts against Pochhammer valuations
    std::mt19937 rng(8);
    std::uniform_int_distribution<long> xn(-80, 80);
    std::uniform_int_distribution<std::uint64_t> kd(0, 500);
    const long D[] = {5, 7, 16};
    const unsigned long P[] = {11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
    std::size_t carry_ok = 0, carry_n = 0;
    while (carry_n < 500) {
        Rational h1 = Rational(xn(rng)) / D[rng() % 3], h2 = Rational(xn(rng)) / D[rng() % 3];
        if (is_integer(h1) || is_integer(h2) || is_integer(h1 - h2)) continue;
        const unsigned long p = P[rng() % 10];
        const std::uint64_t k = kd(rng);
        std::optional<long> a;
        try {
            a = hypergeom::vp_coefficient(h1, h2, k, p);
        } catch (const Error&) {
            continue;
        }
        ++carry_n;
        carry_ok += a == hypergeom::pochhammer_valuation_oracle(hypergeom::f0_params(h1, h2), k, p);
    }

    // Frobenius against the hypergeometric formula
    std::size_t specs = 0, frob_ok = 0;
    for (const char* t : {"full57", "full2", "useries"})
        for (const auto& r : table(t).rows) {
            characters::CharacterSpec spec{R(r[1]), R(r[2])};
            auto a = characters::character_vector(spec, 50), b = characters::character_vector_frobenius(spec, 50);
            bool same = true;
            for (int i = 0; i < 3; ++i) same = same && a.f[i] == b.f[i];
            ++specs;
            frob_ok += same;
        }

    // theta counts
    std::size_t theta_ok = 0;
    for (unsigned l = 2; l <= 10; ++l) {
        auto b = lie::theta_count_detail({lie::Family::B, l});
        auto c = lie::theta_count_detail({lie::Family::C, l});
        theta_ok += b.brute_force == b.halfform && c.brute_force == c.halfform &&
                    long(b.brute_force) - long(c.brute_force) == 2 * long(l) - 4;
    }
    const bool pass = carry_ok == 500 && frob_ok == specs && specs == 152 && theta_ok == 9;
    return {pass, "carry " + std::to_string(carry_ok) + "/500, Frobenius " + std::to_string(frob_ok) + "/" +
                      std::to_string(specs) + " specs, theta B/C " + std::to_string(theta_ok) + "/9 ranks"};
}

// 9. Prime windows.
Outcome prime_windows(const Settings& s) {
    primes::WindowConfig cfg;
    cfg.x_max = 1000000;
    cfg.threads = std::max(1u, sieve::thread_count(s.threads));
    auto t0 = std::chrono::steady_clock::now();
    auto v = primes::verify_windows(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string detail = "x_max 10^6: " + std::string(v.pass ? "pass" : "fail") + " in " + fmt(secs) + " s";
    if (v.failure)
        detail += " (class " + std::to_string(v.failure->residue) + ": q = " + std::to_string(v.failure->q) +
                  ", next class prime " + std::to_string(v.failure->q_next) +
                  (v.failure->boundary ? " already past 28 x_min/27" : "") + "; windows hold from X = " +
                  to_string(v.holds_from) + ")";
    bool pass = v.pass && secs < 10;
    if (s.full) {
        cfg.x_max = primes::kFullRange;
        auto t1 = std::chrono::steady_clock::now();
        auto f = primes::verify_windows(cfg);
        const double fs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
        detail += "; full range: " + std::string(f.pass ? "pass" : "fail") + " in " + fmt(fs) + " s";
        pass = pass && f.pass && fs < 600;
    } else {
        detail += "; full range not run (--full)";
    }
    const long double b = primes::analytic_lower_bound(static_cast<long double>(*cfg.x_pi), cfg);
    detail += "; bound at x_pi " + fmt(static_cast<double>(b));
    return {pass && b > 1000, detail};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;  // wall-clock limit from the criterion, 0 = none
    std::function<Outcome(const Settings&)> run;
};

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.insert(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app("Acceptance criteria");
    std::string only, expect_fail;
    Settings settings;
    app.add_option("--only", only, "Comma list of criteria to run");
    app.add_option("--expect-fail", expect_fail, "Comma list of criteria documented as unattainable");
    app.add_flag("--full", settings.full, "Prime windows through 789693271");
    app.add_option("--threads", settings.threads, "Worker threads (0: MLDE3_THREADS or hardware)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all = {
        {1, "golden Fourier coefficients", 10, fourier},
        // extraction is shared with 3, so 2 carries its cost
        {2, "A1/A2 recovery", 60, normalizations},
        {3, "S-matrix closed form, S^2 = I, det S = -1", 0, smatrices},
        {4, "glueing identity", 0, glueing},
        {5, "fiber counts", 120, fibers},
        {6, "sieve reproduces the figure rows", 1800, sieve_tables},
        {7, "y = -3/2 nonintegrality witnesses", 0, witnesses},
        {8, "oracle equivalences", 0, oracles},
        {9, "prime windows", 0, prime_windows},
    };
    const std::set<int> run = parse_list(only), expected = parse_list(expect_fail);

    int unexpected = 0;
    for (const auto& c : all) {
        if (!run.empty() && !run.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(settings);
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs >= c.limit_s) {
            o.pass = false;
            o.detail += "; over the " + fmt(c.limit_s) + " s limit";
        }
        const bool expect_failure = expected.count(c.id) > 0;
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail
                  << " [" << fmt(secs) << " s]" << (expect_failure ? " [expected to fail]" : "") << std::endl;
        if (o.pass == expect_failure) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
