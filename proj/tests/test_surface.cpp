#include <doctest.h>

#include <algorithm>
#include <set>

#include "surface.hpp"
#include "test_util.hpp"

using namespace mlde3;
using namespace mlde3::surface;

namespace {

// Independent brute force: all (x, y) in (1/N)Z with |x|, |y| <= B on fiber m.
std::set<std::pair<Rational, Rational>> brute_fiber(const Rational& m, long N, long B) {
    std::set<std::pair<Rational, Rational>> out;
    for (long i = -B * N; i <= B * N; ++i)
        for (long j = -B * N; j <= B * N; ++j) {
            const Rational x = Q(i, N), y = Q(j, N);
            if (eq1(m, x, y) == 0) out.insert({x, y});
        }
    return out;
}

}  // namespace

TEST_CASE("sections lie on every fiber") {
    for (long m : {-7l, 0l, 1l, 24l, 100l, 248l, 1000l}) {
        CHECK(eq1(m, Rational(1, 2), 0) == 0);
        CHECK(eq1(m, Q(-m, 16) - 1, Q(-m, 16) - Rational(1, 2)) == 0);
        for (const auto& p : known_points(m)) CHECK(eq1(p.m, p.x, p.y) == 0);
    }
    CHECK(eq1(24, Rational(-3, 5), Rational(-2, 5)) == 0);
}

TEST_CASE("m as a function of x and y") {
    CHECK(m_of(Rational(5, 16) - 1, Rational(-1, 2)) == 10);
    // the m = 2 row has (h1, h2) = (-1/4, -1/2), i.e. (x, y) = (-5/4, -3/2)
    CHECK(m_of(Rational(-5, 4), Rational(-3, 2)) == 2);
    CHECK(m_of(Rational(-1, 4), Rational(-1, 4)) == 248);
    for (long d : {3l, 5l, 7l, 9l})
        for (long n = -20; n <= 20; n += 3) {
            const Rational y(n, d);
            if (y == 0) continue;
            CHECK(eq1(m_of(Rational(1, 2), y), Rational(1, 2), y) == 0);
        }
    CHECK_THROWS_AS(m_of(0, Rational(1, 3)), Error);
}

TEST_CASE("quotient parameterization") {
    for (long m : {0l, 10l, 500l}) CHECK(quotient_v(Rational(1, 2), m) == 0);
    for (long m : {0l, 24l, 371l, 373l}) CHECK(quotient_v(0, m) == Rational(24) / (m - 372));
    for (long m : {1l, 17l, 300l}) {
        const Rational u = Rational(-m, 8) - Rational(3, 2);
        CHECK(quotient_v(u, m) == (Q(-m, 16) - 1) * (Q(-m, 16) - Rational(1, 2)));
    }
    CHECK_THROWS_AS(quotient_v(Q(-272, 248), 100), Error);
}

TEST_CASE("fiber enumeration matches brute force in a small box") {
    for (long m : {2l, 10l, 24l, 45l, 110l}) {
        for (long N : {5l, 7l, 16l}) {
            const auto r = fiber_enumerate(m, static_cast<unsigned>(N));
            const auto ref = brute_fiber(m, N, 3);
            std::set<std::pair<Rational, Rational>> got;
            for (const auto& p : r.points) {
                CHECK(eq1(p.m, p.x, p.y) == 0);
                if (abs(p.x) <= 3 && abs(p.y) <= 3) got.insert({p.x, p.y});
            }
            CHECK(got == ref);
        }
    }
}

TEST_CASE("fibers are closed under swapping x and y") {
    for (long m = 0; m <= 60; m += 7) {
        const auto r = fiber_enumerate(m, 16);
        std::set<std::pair<Rational, Rational>> s;
        for (const auto& p : r.points) s.insert({p.x, p.y});
        for (const auto& [x, y] : s) CHECK(s.count({y, x}) == 1);
    }
}

TEST_CASE("a_m(16) >= 8 and the linear bound") {
    for (long m = 0; m <= 50; ++m) {
        const auto r = fiber_enumerate(m, 16);
        for (const auto& q : known_points(m)) {
            // the enumeration skips the degenerate line of m = 0
            if (r.degenerate_line && q.x + q.y == Q(m - 372, 248)) continue;
            const bool found = std::any_of(r.points.begin(), r.points.end(),
                                           [&](const SurfacePoint& p) { return p.x == q.x && p.y == q.y; });
            CHECK(found);
        }
        const auto c = am_count(m, 16);
        CHECK(c.count >= 8);
        CHECK(c.within_bound);
        CHECK(Rational(static_cast<long>(c.count)) <= linear_bound(m, 16));
    }
    CHECK(linear_bound(372, 16) == 2 + 16 * 6148);
}

TEST_CASE("denominator 5 fiber at m = 24") {
    const auto r = fiber_enumerate(24, 5);
    auto has = [&](Rational x, Rational y) {
        return std::any_of(r.points.begin(), r.points.end(), [&](const SurfacePoint& p) { return p.x == x && p.y == y; });
    };
    CHECK(has(Rational(-3, 5), Rational(-2, 5)));
    CHECK(has(Rational(-2, 5), Rational(-3, 5)));
}

TEST_CASE("degenerate fibers are flagged") {
    for (long m : {0l, 248l, 496l}) CHECK(fiber_enumerate(m, 16).degenerate_line);
    CHECK_FALSE(fiber_enumerate(247, 16).degenerate_line);
    // the whole line x + y = (m - 372)/248 lies on the fiber
    for (long m : {0l, 248l, 496l}) {
        const Rational u(m - 372, 248);
        for (long t = -5; t <= 5; ++t) CHECK(eq1(m, Q(t, 7), u - Q(t, 7)) == 0);
    }
}

TEST_CASE("special fibers") {
    const auto p = y_half_point(41);  // alpha = 25
    CHECK(p.m == 820);
    CHECK(p.x == Rational(25, 16));
    CHECK(p.y == Rational(-1, 2));
    CHECK(eq1(p.m, p.x, p.y) == 0);
    CHECK(y_half_point(5).m == 10);
    CHECK_THROWS_AS(y_half_point(24), Error);  // alpha = 8

    const auto b = y_threehalf_point(25);
    CHECK(b.m == 377);
    CHECK(b.y == Rational(-3, 2));
    CHECK(eq1(b.m, b.x, b.y) == 0);
    CHECK_THROWS_AS(y_threehalf_point(27), Error);
    CHECK_THROWS_AS(y_threehalf_point(32), Error);

    for (const auto& q : special_fibers("y_half", 1, 60)) CHECK(eq1(q.m, q.x, q.y) == 0);
    for (const auto& q : special_fibers("y_threehalf", 25, 200)) CHECK(eq1(q.m, q.x, q.y) == 0);
}

TEST_CASE("Weierstrass model") {
    for (long m : {7l, 19l, 100l, 1000l}) {
        const auto w = weierstrass_verify(m);
        CHECK(w.transform_ok);
        CHECK(w.discriminant == -16 * (4 * w.A * w.A * w.A + 27 * w.B * w.B));
        CHECK(w.matching_variant == "128/3");
    }
    CHECK(weierstrass_verify(-4).discriminant == 0);
}

TEST_CASE("csv emission") {
    const auto csv = to_csv(known_points(10));
    CHECK(csv.rfind("m,x,y,provenance", 0) == 0);
    CHECK(csv.find("10,1/2,0,") != std::string::npos);
}
