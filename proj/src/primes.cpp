#include "primes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

namespace mlde3::primes {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::vector<u64> small_primes(u64 n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Calls on_prime for every prime in [lo, hi) in ascending order.
void sieve_range(u64 lo, u64 hi, const std::function<void(u64)>& on_prime) {
    if (hi <= lo) return;
    if (lo <= 2 && hi > 2) on_prime(2);
    lo = std::max<u64>(lo, 3);
    if (lo % 2 == 0) ++lo;
    if (hi <= lo) return;
    const std::vector<u64> base = small_primes(isqrt(hi) + 1);
    constexpr u64 kSegment = u64{1} << 18;  // odd numbers per segment
    std::vector<unsigned char> seg;
    for (u64 start = lo; start < hi; start += 2 * kSegment) {
        const u64 end = std::min(hi, start + 2 * kSegment);
        const u64 count = (end - start + 1) / 2;
        seg.assign(count, 0);
        for (u64 p : base) {
            if (p == 2) continue;
            if (p * p >= end) break;
            u64 m = std::max(p * p, (start + p - 1) / p * p);
            if (m % 2 == 0) m += p;
            for (; m < end; m += 2 * p) seg[(m - start) / 2] = 1;
        }
        for (u64 i = 0; i < count; ++i)
            if (!seg[i]) {
                const u64 v = start + 2 * i;
                if (v > 1) on_prime(v);
            }
    }
}

struct Pair {
    u64 q = 0, q_next = 0;
};

// a/b > c/d for positive integers below 2^64.
bool ratio_greater(u64 a, u64 b, u64 c, u64 d) { return static_cast<u128>(a) * d > static_cast<u128>(c) * b; }

class Scanner {
public:
    Scanner(const WindowConfig& cfg, const std::vector<long>& index, std::size_t classes)
        : cfg_(cfg), index_(index), first_(classes, 0), last_(classes, 0), worst_(classes), fail_(classes),
          fail_next_(classes, 0) {
        num_ = cfg.ratio.get_num().get_ui();
        den_ = cfg.ratio.get_den().get_ui();
    }

    void feed(u64 p) {
        if (p < cfg_.x_min) return;
        const long c = index_[p % cfg_.modulus];
        if (c < 0) return;
        ++count_;
        if (last_[c] != 0) pair(static_cast<std::size_t>(c), last_[c], p);
        else first_[c] = p;
        last_[c] = p;
    }

    // `this` covers the range just below `right`.
    void merge(const Scanner& right) {
        for (std::size_t c = 0; c < first_.size(); ++c) {
            const Pair left_fail = fail_[c];
            if (last_[c] != 0 && right.first_[c] != 0) pair(c, last_[c], right.first_[c]);
            if (left_fail.q == 0 && fail_[c].q == 0) fail_[c] = right.fail_[c];
            fail_next_[c] = std::max(fail_next_[c], right.fail_next_[c]);
            if (right.worst_[c].q != 0 &&
                (worst_[c].q == 0 || ratio_greater(right.worst_[c].q_next, right.worst_[c].q, worst_[c].q_next, worst_[c].q)))
                worst_[c] = right.worst_[c];
            if (first_[c] == 0) first_[c] = right.first_[c];
            if (right.last_[c] != 0) last_[c] = right.last_[c];
        }
        count_ += right.count_;
    }

    WindowVerdict finish(const std::vector<u64>& residues) const {
        WindowVerdict v;
        v.primes_scanned = count_;
        v.holds_from = Rational(Integer(std::to_string(cfg_.x_min)));
        auto push_threshold = [&](u64 q_next) {
            const Rational t = Rational(Integer(std::to_string(q_next))) / cfg_.ratio;
            if (t > v.holds_from) v.holds_from = t;
        };
        for (std::size_t c = 0; c < first_.size(); ++c) {
            ClassGap g;
            g.residue = residues[c];
            g.q = worst_[c].q;
            g.q_next = worst_[c].q_next;
            if (g.q != 0) g.worst_ratio = Rational(Integer(std::to_string(g.q_next)), Integer(std::to_string(g.q)));
            v.classes.push_back(g);

            std::optional<Counterexample> f;
            if (first_[c] == 0 || static_cast<u128>(first_[c]) * den_ > static_cast<u128>(cfg_.x_min) * num_) {
                f = Counterexample{residues[c], cfg_.x_min, first_[c], true};
                push_threshold(first_[c]);
            }
            if (fail_next_[c] != 0) push_threshold(fail_next_[c]);
            if (!f && fail_[c].q != 0) f = Counterexample{residues[c], fail_[c].q, fail_[c].q_next, false};
            if (!f && last_[c] <= cfg_.x_max)  // no successor inside the sieved range
                f = Counterexample{residues[c], last_[c], 0, false};
            if (last_[c] != 0 && last_[c] <= cfg_.x_max) v.holds_from = Rational(Integer(std::to_string(cfg_.x_max + 1)));
            if (f && (!v.failure || f->q < v.failure->q)) v.failure = f;
        }
        v.pass = !v.failure.has_value();
        return v;
    }

private:
    void pair(std::size_t c, u64 q, u64 q_next) {
        if (q > cfg_.x_max) return;
        if (worst_[c].q == 0 || ratio_greater(q_next, q, worst_[c].q_next, worst_[c].q)) worst_[c] = {q, q_next};
        if (static_cast<u128>(q_next) * den_ > static_cast<u128>(q) * num_) {
            if (fail_[c].q == 0) fail_[c] = {q, q_next};
            fail_next_[c] = std::max(fail_next_[c], q_next);
        }
    }

    const WindowConfig& cfg_;
    const std::vector<long>& index_;
    u64 num_ = 1, den_ = 1;
    std::vector<u64> first_, last_;
    std::vector<Pair> worst_, fail_;
    std::vector<u64> fail_next_;  // largest q_next over failing pairs
    u64 count_ = 0;
};

void check_config(const WindowConfig& cfg) {
    if (cfg.modulus == 0) fail(Errc::invalid_argument, "modulus must be positive");
    if (cfg.ratio <= 1) fail(Errc::invalid_argument, "ratio must exceed 1");
    if (!cfg.ratio.get_num().fits_ulong_p() || !cfg.ratio.get_den().fits_ulong_p())
        fail(Errc::invalid_argument, "ratio numerator and denominator must fit 64 bits");
    if (cfg.x_max < cfg.x_min) fail(Errc::precondition, "x_max below x_min");
}

std::vector<u64> coprime_residues(u64 modulus) {
    std::vector<u64> r;
    for (u64 a = 0; a < modulus; ++a)
        if (std::gcd(a, modulus) == 1) r.push_back(a);
    return r;
}

std::vector<long> residue_index(u64 modulus, const std::vector<u64>& residues) {
    std::vector<long> idx(modulus, -1);
    for (std::size_t i = 0; i < residues.size(); ++i) idx[residues[i]] = static_cast<long>(i);
    return idx;
}

// Sieve bound: every class successor needed for q <= x_max lies below ratio x_max.
u64 sieve_limit(const WindowConfig& cfg) {
    const Integer lim = floor(cfg.ratio * Rational(Integer(std::to_string(cfg.x_max)))) + 1;
    if (!lim.fits_ulong_p()) fail(Errc::invalid_argument, "x_max too large");
    return lim.get_ui();
}

}  // namespace

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<u64> out;
    sieve_range(lo, hi, [&](u64 p) { out.push_back(p); });
    return out;
}

WindowVerdict verify_windows_on(const std::vector<std::uint64_t>& primes, const WindowConfig& cfg) {
    check_config(cfg);
    const auto residues = coprime_residues(cfg.modulus);
    const auto index = residue_index(cfg.modulus, residues);
    Scanner s(cfg, index, residues.size());
    for (u64 p : primes) s.feed(p);
    WindowVerdict v = s.finish(residues);
    v.sieve_limit = primes.empty() ? 0 : primes.back() + 1;
    return v;
}

WindowVerdict verify_windows(const WindowConfig& cfg) {
    check_config(cfg);
    const auto residues = coprime_residues(cfg.modulus);
    const auto index = residue_index(cfg.modulus, residues);
    const u64 limit = sieve_limit(cfg) + 1;  // exclusive
    const u64 lo = cfg.x_min;
    const unsigned threads = std::max(1u, std::min(cfg.threads, 64u));

    std::vector<Scanner> parts(threads, Scanner(cfg, index, residues.size()));
    std::vector<u64> bounds(threads + 1);
    for (unsigned t = 0; t <= threads; ++t) bounds[t] = lo + (limit - lo) / threads * t;
    bounds[threads] = limit;
    auto work = [&](unsigned t) { sieve_range(bounds[t], bounds[t + 1], [&](u64 p) { parts[t].feed(p); }); };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (unsigned t = 1; t < threads; ++t) parts[0].merge(parts[t]);
    WindowVerdict v = parts[0].finish(residues);
    v.sieve_limit = limit;
    return v;
}

long double log_integral(long double a, long double b) {
    if (a <= 1 || b <= 1) fail(Errc::invalid_argument, "log_integral needs both bounds above 1");
    if (b < a) return -log_integral(b, a);
    // t = e^u turns the integrand into e^u / u, which Simpson handles well.
    auto f = [](long double u) { return std::exp(u) / u; };
    std::function<long double(long double, long double, long double, long double, long double, long double, int)> simpson;
    simpson = [&](long double l, long double r, long double fl, long double fm, long double fr, long double whole,
                  int depth) -> long double {
        const long double m = (l + r) / 2, lm = (l + m) / 2, rm = (m + r) / 2;
        const long double flm = f(lm), frm = f(rm);
        const long double left = (m - l) / 6 * (fl + 4 * flm + fm), right = (r - m) / 6 * (fm + 4 * frm + fr);
        const long double delta = left + right - whole;
        if (depth <= 0 || std::fabs(delta) <= 1e-13L * std::fabs(left + right)) return left + right + delta / 15;
        return simpson(l, m, fl, flm, fm, left, depth - 1) + simpson(m, r, fm, frm, fr, right, depth - 1);
    };
    const long double l = std::log(a), r = std::log(b), m = (l + r) / 2;
    const long double fl = f(l), fm = f(m), fr = f(r);
    return simpson(l, r, fl, fm, fr, (r - l) / 6 * (fl + 4 * fm + fr), 40);
}

long double Li(long double x) { return log_integral(2, x); }

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) return 0;
    u64 result = n;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

long double analytic_lower_bound(long double X, const WindowConfig& cfg) {
    if (!cfg.c_pi || !cfg.x_pi)
        fail(Errc::invalid_argument, "no effective constants for modulus " + std::to_string(cfg.modulus));
    if (X < static_cast<long double>(*cfg.x_pi)) fail(Errc::precondition, "X below x_pi");
    const long double r = cfg.ratio.get_d();
    const long double lx = std::log(X), lr = std::log(r);
    const long double main = log_integral(X, r * X) / static_cast<long double>(euler_phi(cfg.modulus));
    const long double err = static_cast<long double>(*cfg.c_pi) * X * (r / ((lx + lr) * (lx + lr)) + 1 / (lx * lx));
    return main - err;
}

}  // namespace mlde3::primes
