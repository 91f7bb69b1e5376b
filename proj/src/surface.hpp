#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "common.hpp"

namespace mlde3::surface {

enum class Provenance {
    generic_enumeration,
    y_half_family,
    y_threehalf_family,
    boxed_region,
    manual,
    q4_diagonal_family,  // x - y = 1/2 outside the box
    degenerate_line,     // boxed point on u = (m - 372)/248, m in {0, 248, 496}
};

struct SurfacePoint {
    Rational m, x, y;
    Provenance provenance = Provenance::generic_enumeration;
    long family_parameter = 0;  // s or beta for the two families
    bool reducible = false;     // x = 0 or y = 0
};

// (4(x+y)+6)((4(x+y)+2)(4(x+y)-2) - 62xy) + mxy
Rational eq1(const Rational& m, const Rational& x, const Rational& y);

// The unique m with eq1 = 0; needs xy != 0.
Rational m_of(const Rational& x, const Rational& y);

// v on the fiber over u in the (u, v) = (x+y, xy) model.
Rational quotient_v(const Rational& u, const Rational& m);

struct FiberResult {
    std::vector<SurfacePoint> points;  // closed under swapping x and y, sorted
    // m in {0, 248, 496}: the fiber also contains the whole line x + y = (m-372)/248,
    // which the enumeration skips.
    bool degenerate_line = false;
    Rational window;  // |u| bound used
};

// All rational points with denominators dividing N, u = x + y on the grid (1/N)Z.
FiberResult fiber_enumerate(const Rational& m, unsigned N);

struct CountCertificate {
    std::size_t count = 0;
    Rational bound;
    bool within_bound = false;
    bool degenerate_line = false;
};

// a_m(N) together with the linear bound 2 + N max(16|m-372|/31, 6148).
CountCertificate am_count(const Rational& m, unsigned N);
Rational linear_bound(const Rational& m, unsigned N);

// Q1..Q4 and their swaps.
std::vector<SurfacePoint> known_points(const Rational& m);

// y = -1/2: (alpha+15)(alpha+16)/2, alpha/16, -1/2 for alpha = s - 16, 8 not dividing alpha.
// y = -3/2: ((beta^2+45beta+512)/6, beta/16, -3/2), beta not divisible by 3 or 8.
std::vector<SurfacePoint> special_fibers(const std::string& which, long lo, long hi);
SurfacePoint y_half_point(long s);
SurfacePoint y_threehalf_point(long beta);

struct WeierstrassReport {
    bool transform_ok = false;      // H(U,V,W) vanishes on sampled points of the fiber
    Rational A, B;                  // y^2 = x^3 + A x + B
    Rational discriminant;          // -16 (4A^3 + 27B^2)
    Rational printed_delta_123;     // variant with (m^2 + (123/3)m + 8464/3)
    Rational printed_delta_128;     // variant with (m^2 + (128/3)m + 8464/3)
    std::string matching_variant;   // "128/3", "123/3", "both" or "none"
    Rational j_invariant;
};

WeierstrassReport weierstrass_verify(const Rational& m);

nlohmann::json to_json(const SurfacePoint& p);
std::string provenance_name(Provenance p);
std::string to_csv(const std::vector<SurfacePoint>& pts);

}  // namespace mlde3::surface
