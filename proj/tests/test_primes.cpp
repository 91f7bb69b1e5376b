#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "primes.hpp"

using namespace mlde3;
using namespace mlde3::primes;

namespace {

bool trial_division(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// li(x) = gamma + log log x + sum (log x)^n / (n n!)
long double li_series(long double x) {
    const long double gamma = 0.57721566490153286060651209L, L = std::log(x);
    long double term = 1, sum = 0;
    for (int n = 1; n < 400; ++n) {
        term *= L / n;
        sum += term / n;
    }
    return gamma + std::log(L) + sum;
}

WindowConfig plain(std::uint64_t modulus, Rational ratio, std::uint64_t lo, std::uint64_t hi) {
    WindowConfig c;
    c.modulus = modulus;
    c.ratio = ratio;
    c.x_min = lo;
    c.x_max = hi;
    return c;
}

}  // namespace

TEST_CASE("segmented sieve matches trial division") {
    auto ps = primes_between(0, 100000);
    std::vector<std::uint64_t> want;
    for (std::uint64_t n = 0; n < 100000; ++n)
        if (trial_division(n)) want.push_back(n);
    CHECK(ps == want);
    for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{99990, 100200}, {1, 3}, {2, 3}, {65530, 65560}}) {
        std::vector<std::uint64_t> w;
        for (std::uint64_t n = lo; n < hi; ++n)
            if (trial_division(n)) w.push_back(n);
        CHECK(primes_between(lo, hi) == w);
    }
}

TEST_CASE("Bertrand with modulus 1") {
    auto v = verify_windows(plain(1, 2, 2, 1000000));
    CHECK(v.pass);
    CHECK_FALSE(v.failure);
    REQUIRE(v.classes.size() == 1);
    CHECK(v.classes[0].worst_ratio <= 2);
    CHECK(v.classes[0].worst_ratio == Rational(5, 3));  // 3 -> 5
}

TEST_CASE("consecutive-pair criterion equals the interval criterion") {
    // ratio 3/2 on integers: every empty window contains some X = j/6.
    std::mt19937 rng(99);
    int fails = 0, passes = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> gap(1, trial % 2 == 0 ? 30 : 9);
        std::vector<std::uint64_t> list;
        std::uint64_t e = 20 + gap(rng);
        while (e < 1200) {
            list.push_back(e);
            e += gap(rng);
        }
        const std::uint64_t lo = 40 + trial % 17, hi = 700;
        WindowVerdict v = verify_windows_on(list, plain(1, Rational(3, 2), lo, hi));

        std::vector<std::uint64_t> empty_at;  // 6X of each empty window
        for (std::uint64_t j = 6 * lo; j <= 6 * hi; ++j) {
            // [j/6, j/4] holds an element iff the first e >= j/6 satisfies 4e <= j.
            auto it = std::lower_bound(list.begin(), list.end(), (j + 5) / 6);
            if (it == list.end() || 4 * *it > j) empty_at.push_back(j);
        }
        INFO("trial " << trial);
        CHECK(v.pass == empty_at.empty());
        if (v.pass) {
            ++passes;
            continue;
        }
        ++fails;
        REQUIRE(v.failure);
        const auto& f = *v.failure;
        if (!f.boundary) {
            auto it = std::find(list.begin(), list.end(), f.q);
            REQUIRE(it != list.end());
            REQUIRE(it + 1 != list.end());
            CHECK(*(it + 1) == f.q_next);
            CHECK(2 * f.q_next > 3 * f.q);
            // X just above q sees an empty window.
            CHECK(std::find(empty_at.begin(), empty_at.end(), 6 * f.q + 1) != empty_at.end());
        } else {
            CHECK(empty_at.front() == 6 * lo);
        }
        // Every empty window lies below holds_from, and the last one is within 1/6 of it.
        CHECK(Rational(empty_at.back(), 6) < v.holds_from);
        CHECK(v.holds_from - Rational(empty_at.back(), 6) <= Rational(1, 6));
    }
    CHECK(fails > 20);
    CHECK(passes > 20);
}

TEST_CASE("a tight ratio fails with a genuine pair") {
    auto v = verify_windows(plain(30, Rational(10001, 10000), 6496, 100000));
    CHECK_FALSE(v.pass);
    REQUIRE(v.failure);
    const auto& f = *v.failure;
    CHECK(f.q_next % 30 == f.residue);
    CHECK(trial_division(f.q_next));
    CHECK(Rational(f.q_next) > Rational(10001, 10000) * f.q);
    if (f.boundary) {
        CHECK(f.q == 6496);
    } else {
        CHECK(f.q % 30 == f.residue);
        CHECK(trial_division(f.q));
        for (std::uint64_t n = f.q + 30; n < f.q_next; n += 30) CHECK_FALSE(trial_division(n));
    }
}

TEST_CASE("default window check") {
    WindowConfig cfg;
    cfg.x_max = 1000000;
    auto v = verify_windows(cfg);
    CHECK(v.classes.size() == 8);
    // The stated threshold is too low: class 17 has no prime in [6496, 6737).
    CHECK_FALSE(v.pass);
    REQUIRE(v.failure);
    CHECK(v.failure->residue == 17);
    CHECK(v.failure->boundary);
    CHECK(v.failure->q_next == 6737);
    CHECK(v.holds_from == Rational(197667, 28));  // 7321 * 27 / 28
    for (std::uint64_t n = 6496; n < 6737; ++n)
        if (n % 30 == 17) CHECK_FALSE(trial_division(n));
    CHECK(trial_division(6991));
    CHECK(trial_division(7321));
    for (std::uint64_t n = 6991 + 30; n < 7321; n += 30) CHECK_FALSE(trial_division(n));

    cfg.x_min = 7060;
    auto ok = verify_windows(cfg);
    CHECK(ok.pass);
    CHECK(ok.holds_from == 7060);
    for (const auto& g : ok.classes) CHECK(g.worst_ratio <= Rational(28, 27));

    cfg.threads = 3;
    auto par = verify_windows(cfg);
    CHECK(par.pass);
    CHECK(par.primes_scanned == ok.primes_scanned);
    for (std::size_t i = 0; i < 8; ++i) CHECK(par.classes[i].worst_ratio == ok.classes[i].worst_ratio);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(verify_windows(plain(30, 1, 10, 100)), Error);
    CHECK_THROWS_AS(verify_windows(plain(0, 2, 10, 100)), Error);
    CHECK_THROWS_AS(verify_windows(plain(30, 2, 100, 10)), Error);
}

TEST_CASE("logarithmic integral") {
    const long double li2 = li_series(2);
    CHECK(std::fabs(static_cast<double>(li2) - 1.045163780117492784) < 1e-15);
    for (long double x : {10.0L, 1000.0L, 1e6L, 1e9L}) {
        const long double want = li_series(x) - li2;
        CHECK(std::fabs(static_cast<double>((Li(x) - want) / want)) < 1e-10);
    }
    CHECK(std::fabs(static_cast<double>(log_integral(100, 10) + log_integral(10, 100))) < 1e-12);
    CHECK_THROWS(log_integral(1, 10));
}

TEST_CASE("Euler phi") {
    CHECK(euler_phi(30) == 8);
    for (std::uint64_t n = 1; n <= 300; ++n) {
        std::uint64_t k = 0;
        for (std::uint64_t a = 1; a <= n; ++a) k += std::gcd(a, n) == 1;
        CHECK(euler_phi(n) == k);
    }
}

TEST_CASE("analytic lower bound") {
    WindowConfig cfg;
    const long double at = analytic_lower_bound(789693271.0L, cfg);
    CHECK(at > 1000);
    long double prev = at;
    for (long double X = 8e8L; X < 1e13L; X *= 1.7L) {
        const long double b = analytic_lower_bound(X, cfg);
        CHECK(b > prev);
        prev = b;
    }
    CHECK_THROWS_AS(analytic_lower_bound(1e6L, cfg), Error);
    WindowConfig m42 = cfg;
    m42.modulus = 42;
    m42.c_pi.reset();
    m42.x_pi.reset();
    CHECK_THROWS_AS(analytic_lower_bound(1e10L, m42), Error);
}
