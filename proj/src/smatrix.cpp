#include "smatrix.hpp"

#include <cmath>
#include <random>

namespace mlde3::smatrix {

using characters::CharacterSpec;

namespace {

Complex cnum(double re, double im, mpfr_prec_t p) {
    return Complex(BigFloat(std::to_string(re), p), BigFloat(std::to_string(im), p));
}

Complex cint(long v, mpfr_prec_t p) { return Complex(BigFloat(v, p), BigFloat(p)); }

BigFloat inf_norm(const Mat3& m) {
    BigFloat best(m[0][0].precision());
    for (const auto& row : m) {
        BigFloat s(best.precision());
        for (const auto& z : row) s += abs(z);
        best = max(best, s);
    }
    return best;
}

Mat3 identity(mpfr_prec_t p) {
    Mat3 m{{{cint(1, p), cint(0, p), cint(0, p)}, {cint(0, p), cint(1, p), cint(0, p)}, {cint(0, p), cint(0, p), cint(1, p)}}};
    return m;
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
    const mpfr_prec_t p = a[0][0].precision();
    Mat3 r = identity(p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex s(p);
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            r[i][j] = std::move(s);
        }
    return r;
}

// Gauss-Jordan with partial pivoting.
Mat3 inverse(Mat3 a) {
    const mpfr_prec_t p = a[0][0].precision();
    Mat3 inv = identity(p);
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
        if (abs(a[piv][col]).is_zero()) fail(Errc::numerical, "singular sample matrix");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        Complex d = a[col][col];
        for (int j = 0; j < 3; ++j) {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            Complex f = a[r][col];
            for (int j = 0; j < 3; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

std::array<Complex, 3> sample_points(unsigned seed, unsigned attempt, mpfr_prec_t p) {
    std::array<Complex, 3> t{Complex(p), Complex(p), Complex(p)};
    if (seed == 0 && attempt == 0) {
        for (int j = 1; j <= 3; ++j) t[j - 1] = cnum(0.05 * j, 1.0 + 0.03 * j, p);
        return t;
    }
    std::mt19937_64 rng(1000003ull * seed + attempt);
    std::uniform_real_distribution<double> re(-0.2, 0.2), im(0.0, 0.3);
    for (auto& z : t) {
        double x = re(rng), y = im(rng);
        z = cnum(x, 1.0 + y, p);
    }
    return t;
}

}  // namespace

CharacterEvaluator::CharacterEvaluator(const CharacterSpec& spec, mpfr_prec_t precision, std::size_t terms)
    : prec_(precision), terms_(terms) {
    if (terms < 2) fail(Errc::invalid_argument, "need at least two terms");
    cv_ = characters::character_vector_frobenius(spec, terms);
    for (int i = 0; i < 3; ++i) {
        const auto& c = cv_.f[i].coeffs();
        coeffs_[i].reserve(c.size());
        for (const auto& a : c) coeffs_[i].emplace_back(a, prec_);
        double r = 0;
        for (std::size_t n = c.size() > 10 ? c.size() - 10 : 1; n < c.size(); ++n)
            if (c[n - 1] != 0) r = std::max(r, std::abs(Rational(c[n] / c[n - 1]).get_d()));
        ratio_[i] = r > 0 ? 1.01 * r : 1.0;
    }
}

Evaluation CharacterEvaluator::operator()(const Complex& tau) const {
    if (!(tau.im > BigFloat(Rational(1, 2), prec_))) fail(Errc::precondition, "Im(tau) must exceed 1/2");
    const Complex q = exp_2pi_i(Rational(1), tau);
    const BigFloat aq = abs(q);
    Evaluation ev{{Complex(prec_), Complex(prec_), Complex(prec_)}, BigFloat(prec_)};
    BigFloat largest(prec_);
    std::array<BigFloat, 3> tails{BigFloat(prec_), BigFloat(prec_), BigFloat(prec_)};
    const std::size_t N = terms_;
    for (int i = 0; i < 3; ++i) {
        Complex s(prec_);
        BigFloat mag(prec_);
        for (std::size_t n = N; n-- > 0;) {
            s = s * q;
            s.re += coeffs_[i][n];
            mag = mag * aq + abs(coeffs_[i][n]);
        }
        const Rational& r = cv_.f[i].leading_exponent();
        const Complex lead = exp_2pi_i(r, tau);
        const BigFloat alead = abs(lead);
        ev.value[i] = s * lead;
        // Geometric tail past the last term, assuming the coefficient ratio
        // keeps decreasing as it does for q-expansions of modular functions.
        BigFloat t = BigFloat(std::to_string(ratio_[i]), prec_) * aq;
        if (!(t < BigFloat(1, prec_))) fail(Errc::numerical, "q-series tail does not converge at this tau");
        BigFloat last = abs(coeffs_[i][N - 1]);
        BigFloat qn(1, prec_);
        mpfr_pow_ui(qn.get(), aq.get(), N - 1, MPFR_RNDU);
        tails[i] = last * qn * t / (BigFloat(1, prec_) - t) * alead;
        BigFloat rounding = ldexp_one(-static_cast<long>(prec_) + 2, prec_) * BigFloat(static_cast<long>(4 * N), prec_) *
                            mag * alead;
        ev.error = max(ev.error, tails[i] + rounding);
        largest = max(largest, abs(ev.value[i]));
    }
    const BigFloat tol = ldexp_one(-static_cast<long>(prec_) / 2, prec_) * largest;
    for (const auto& t : tails)
        if (t > tol) fail(Errc::numerical, "truncation tail exceeds tolerance; raise the number of terms");
    return ev;
}

Evaluation eval_character(const CharacterSpec& spec, const Complex& tau, mpfr_prec_t precision, std::size_t terms) {
    return CharacterEvaluator(spec, precision, terms)(tau);
}

Complex s_transform(const Complex& tau) { return cint(-1, tau.precision()) / tau; }

SMatrix extract_S(const CharacterSpec& spec, mpfr_prec_t precision, std::size_t terms, unsigned seed) {
    CharacterEvaluator eval(spec, precision, terms);
    const unsigned max_attempts = 8;
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        const auto taus = sample_points(seed, attempt, precision);
        Mat3 H = identity(precision), G = identity(precision);
        BigFloat eH(precision), eG(precision);
        try {
            for (int j = 0; j < 3; ++j) {
                Evaluation a = eval(taus[j]);
                Evaluation b = eval(s_transform(taus[j]));
                for (int i = 0; i < 3; ++i) {
                    H[i][j] = a.value[i];
                    G[i][j] = b.value[i];
                }
                eH = max(eH, a.error);
                eG = max(eG, b.error);
            }
        } catch (const Error& e) {
            if (e.code() == Errc::numerical || e.code() == Errc::precondition) continue;
            throw;
        }
        Mat3 Hi;
        try {
            Hi = inverse(H);
        } catch (const Error&) {
            continue;
        }
        const BigFloat nHi = inf_norm(Hi);
        const BigFloat cond = inf_norm(H) * nHi;
        if (cond > ldexp_one(static_cast<long>(precision) / 2, precision)) continue;
        SMatrix out{multiply(G, Hi), BigFloat(precision), cond.to_double(), attempt};
        // Perturbation bound for M = G H^-1 with |dH|, |dG| <= 3 e (infinity norm).
        const BigFloat three(3, precision);
        const BigFloat dH = three * eH * nHi;
        if (!(dH < BigFloat(Rational(1, 2), precision))) continue;
        const BigFloat nM = inf_norm(out.S);
        BigFloat err = (three * eG * nHi + nM * dH) / (BigFloat(1, precision) - dH);
        err += ldexp_one(-static_cast<long>(precision) + 8, precision) * cond * (nM + BigFloat(1, precision));
        out.error = err;
        return out;
    }
    fail(Errc::numerical, "no well-conditioned sample found");
}

SMatrix fold_normalization(const SMatrix& s, const Rational& A1, const Rational& A2) {
    const mpfr_prec_t p = s.error.precision();
    const std::array<BigFloat, 3> d{BigFloat(1, p), BigFloat(A1, p), BigFloat(A2, p)};
    SMatrix out = s;
    BigFloat worst(1, p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            BigFloat f = d[i] / d[j];
            out.S[i][j] = f * s.S[i][j];
            worst = max(worst, abs(f));
        }
    out.error = s.error * worst;
    return out;
}

Symmetrization symmetrize(const SMatrix& s) {
    const mpfr_prec_t p = s.error.precision();
    Symmetrization out{SymmetrizeStatus::accepted, 0, 0, BigFloat(p), BigFloat(p), BigFloat(p)};
    const BigFloat& d = s.error;
    const BigFloat quarter(Rational(1, 4), p);
    std::array<BigFloat, 2> values{BigFloat(p), BigFloat(p)};
    std::array<Integer, 2> rounded;
    BigFloat worst(p);
    for (int i = 1; i <= 2; ++i) {
        const BigFloat a0 = abs(s.S[0][i]), a1 = abs(s.S[i][0]);
        if (!(a0 > d) || !(a1 > d)) {
            // A vanishing off-diagonal vacuum entry at working precision means f0
            // spans an invariant line.
            out.status = d < ldexp_one(-static_cast<long>(p) / 4, p) ? SymmetrizeStatus::reducible
                                                                     : SymmetrizeStatus::imprecise;
            return out;
        }
        const Complex ratio = s.S[0][i] / s.S[i][0];
        const BigFloat dr = (a0 * d + a1 * d) / (a1 * (a1 - d));
        const BigFloat slack = dr + ldexp_one(-static_cast<long>(p) / 2, p) * abs(ratio);
        if (abs(ratio.im) > slack) {
            out.status = SymmetrizeStatus::nonreal_ratio;
            return out;
        }
        if (!(ratio.re > slack)) {
            out.status = ratio.re < -slack ? SymmetrizeStatus::nonpositive_ratio : SymmetrizeStatus::imprecise;
            return out;
        }
        BigFloat A = sqrt(ratio.re);
        // |sqrt(r) - sqrt(r')| <= |r - r'| / sqrt(r - |r - r'|)
        BigFloat dA = dr / sqrt(ratio.re - dr);
        values[i - 1] = A;
        rounded[i - 1] = A.round();
        worst = max(worst, dA);
    }
    out.A1_value = values[0];
    out.A2_value = values[1];
    out.error = worst;
    if (!(worst < quarter)) {
        out.status = SymmetrizeStatus::imprecise;
        return out;
    }
    for (int i = 0; i < 2; ++i) {
        const BigFloat gap = abs(values[i] - BigFloat(Rational(rounded[i]), p));
        const BigFloat allowed = worst + ldexp_one(-static_cast<long>(p) / 2, p) * values[i];
        if (gap > allowed || rounded[i] < 1) {
            out.status = SymmetrizeStatus::non_integer;
            return out;
        }
    }
    out.A1 = rounded[0];
    out.A2 = rounded[1];
    return out;
}

Symmetrization recover_normalization(const CharacterSpec& spec, mpfr_prec_t precision, std::size_t terms,
                                     mpfr_prec_t max_precision) {
    CharacterSpec unit{spec.h1, spec.h2};
    for (;;) {
        Symmetrization s = symmetrize(extract_S(unit, precision, terms));
        if (s.status != SymmetrizeStatus::imprecise || precision * 2 > max_precision) return s;
        precision *= 2;
        terms *= 2;
    }
}

std::string status_name(SymmetrizeStatus s) {
    switch (s) {
        case SymmetrizeStatus::accepted: return "accepted";
        case SymmetrizeStatus::non_integer: return "non_integer";
        case SymmetrizeStatus::nonreal_ratio: return "nonreal_ratio";
        case SymmetrizeStatus::nonpositive_ratio: return "nonpositive_ratio";
        case SymmetrizeStatus::imprecise: return "imprecise";
        case SymmetrizeStatus::reducible: return "reducible";
    }
    return "unknown";
}

Fusion verlinde_check(const SMatrix& s, double tolerance) {
    for (int a = 0; a < 3; ++a)
        if (!(abs(s.S[0][a]) > s.error)) fail(Errc::precondition, "S has a zero first-row entry");
    Fusion f;
    f.integral = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                Complex sum(s.error.precision());
                for (int a = 0; a < 3; ++a) sum += s.S[i][a] * s.S[j][a] * conj(s.S[k][a]) / s.S[0][a];
                const double re = sum.re.to_double(), im = sum.im.to_double();
                f.N[i][j][k] = re;
                f.max_imag = std::max(f.max_imag, std::abs(im));
                const double nearest = std::round(re);
                const double dev = std::abs(re - nearest);
                f.max_deviation = std::max(f.max_deviation, dev);
                const bool close = dev < tolerance && std::abs(im) < tolerance;
                if (!close) f.integral = false;
                if (close && nearest < 0) {
                    f.negative_flagged = true;
                    f.integral = false;
                }
            }
    for (int a = 0; a < 3; ++a) f.quantum_dimensions[a] = (s.S[0][a] / s.S[0][0]).re.to_double();
    return f;
}

Glueing glueing_character(int p, std::size_t order, mpfr_prec_t precision) {
    if (p < 5 || p > 15) fail(Errc::invalid_argument, "p must lie in 5..15");
    if (order < 2) fail(Errc::invalid_argument, "order must be at least 2");
    Glueing g;
    g.p = p;
    g.k = 15 - p;
    CharacterSpec W{Rational(3, 2), Rational(2 * p + 1, 16)};
    CharacterSpec V{Rational(1, 2), Rational(2 * g.k + 1, 16)};
    W.h2.canonicalize();
    V.h2.canonicalize();
    Symmetrization sw = recover_normalization(W, precision);
    Symmetrization sv = recover_normalization(V, precision);
    if (sw.status != SymmetrizeStatus::accepted || sv.status != SymmetrizeStatus::accepted)
        fail(Errc::numerical, "could not recover integral normalizations for p = " + std::to_string(p));
    g.A1 = sw.A1;
    g.A2 = sw.A2;
    g.B1 = sv.A1;
    g.B2 = sv.A2;
    W.A1 = g.A1;
    W.A2 = g.A2;
    V.A1 = g.B1;
    V.A2 = g.B2;
    auto fw = characters::character_vector_frobenius(W, order);
    auto fv = characters::character_vector_frobenius(V, order);
    qseries::QExpansion chi = fw.f[0] * fv.f[0];
    for (int i = 1; i < 3; ++i) chi = chi + fw.f[i] * fv.f[i];
    g.chi = chi.truncated(order);
    auto jq = qseries::j_times_q(order);
    std::vector<Rational> t = jq.coeffs();
    t[1] += Rational(48 * g.k - 744);
    qseries::QExpansion target(Rational(-1), std::move(t));
    g.matches_j = g.chi == target;
    g.constant = g.chi.leading_exponent() == -1 ? g.chi.coeff(1) : Rational(0);
    g.dim_X1 = Integer((15 - p) * (2 * p + 17) + 2 * g.k * g.k + g.k);
    g.weights_sum_to_two = W.h1 + V.h1 == 2 && W.h2 + V.h2 == 2;
    return g;
}

nlohmann::json to_json(const SMatrix& s, int digits) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : s.S) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& z : row) r.push_back({{"re", z.re.str(digits)}, {"im", z.im.str(digits)}});
        rows.push_back(r);
    }
    return {{"S", rows}, {"error", s.error.str(6)}, {"condition", s.condition}, {"attempt", s.attempt}};
}

nlohmann::json to_json(const Symmetrization& s) {
    nlohmann::json j{{"status", status_name(s.status)},
                     {"A1_value", s.A1_value.str(30)},
                     {"A2_value", s.A2_value.str(30)},
                     {"error", s.error.str(6)}};
    if (s.status == SymmetrizeStatus::accepted) {
        j["A1"] = to_string(s.A1);
        j["A2"] = to_string(s.A2);
    }
    return j;
}

nlohmann::json to_json(const Fusion& f) {
    nlohmann::json n = nlohmann::json::array();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (std::abs(f.N[i][j][k]) > 0.5) n.push_back({{"i", i}, {"j", j}, {"k", k}, {"N", std::lround(f.N[i][j][k])}});
    return {{"nonzero", n},
            {"integral", f.integral},
            {"negative_flagged", f.negative_flagged},
            {"max_deviation", f.max_deviation},
            {"quantum_dimensions", f.quantum_dimensions}};
}

nlohmann::json to_json(const Glueing& g) {
    return {{"p", g.p},
            {"k", g.k},
            {"A", {to_string(g.A1), to_string(g.A2)}},
            {"B", {to_string(g.B1), to_string(g.B2)}},
            {"chi", qseries::to_json(g.chi)},
            {"constant", to_string(g.constant)},
            {"matches_j", g.matches_j},
            {"dim_X1", to_string(g.dim_X1)},
            {"weights_sum_to_two", g.weights_sum_to_two}};
}

}  // namespace mlde3::smatrix
