#include "lie.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

namespace mlde3::lie {

namespace {

unsigned exceptional_rank(Family f) {
    switch (f) {
    case Family::E6: return 6;
    case Family::E7: return 7;
    case Family::E8: return 8;
    case Family::F4: return 4;
    case Family::G2: return 2;
    default: return 0;
    }
}

// No admissibility check; the centralizer dimensions below need B0, B1, C1, D2, D3.
unsigned long dim_formula(Family f, unsigned long l) {
    switch (f) {
    case Family::A: return l * l + 2 * l;
    case Family::B:
    case Family::C: return 2 * l * l + l;
    case Family::D: return 2 * l * l - l;
    case Family::E6: return 78;
    case Family::E7: return 133;
    case Family::E8: return 248;
    case Family::F4: return 52;
    case Family::G2: return 14;
    }
    return 0;
}

Root unit(std::size_t n, std::size_t i, int s) {
    Root r(n, 0);
    r[i] = s;
    return r;
}

// e_i + s e_j for all i < j and both signs of s, doubled.
void add_pm_pairs(std::size_t n, std::vector<Root>& out) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (int s : {1, -1}) {
                Root r(n, 0);
                r[i] = 2;
                r[j] = 2 * s;
                out.push_back(r);
            }
}

// (+-1, ..., +-1)/2 doubled; `parity` 0 keeps even numbers of minus signs, 1 odd, -1 all.
void add_half_vectors(std::size_t n, int parity, std::vector<Root>& out) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int minus = __builtin_popcount(mask);
        if (parity >= 0 && minus % 2 != parity) continue;
        Root r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = (mask >> i) & 1 ? -1 : 1;
        out.push_back(r);
    }
}

bool positive(const Root& r) {
    for (int v : r)
        if (v != 0) return v > 0;
    return false;
}

long dot(const Root& a, const Root& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * b[i];
    return s;
}

Root add(const Root& a, const Root& b, int sb = 1) {
    Root r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += sb * b[i];
    return r;
}

std::vector<Root> e8_roots() {
    std::vector<Root> all;
    add_pm_pairs(8, all);
    const std::size_t n = all.size();
    for (std::size_t i = 0; i < n; ++i) {
        Root neg(all[i]);
        for (int& v : neg) v = -v;
        all.push_back(neg);
    }
    add_half_vectors(8, 0, all);
    return all;
}

// Every root with its negative; positivity is applied afterwards.
std::vector<Root> all_roots(SimpleType t) {
    const std::size_t l = t.rank;
    std::vector<Root> roots;
    switch (t.family) {
    case Family::A:
        for (std::size_t i = 0; i <= l; ++i)
            for (std::size_t j = 0; j <= l; ++j)
                if (i != j) roots.push_back(add(unit(l + 1, i, 2), unit(l + 1, j, 2), -1));
        return roots;
    case Family::B:
    case Family::C:
    case Family::D: {
        add_pm_pairs(l, roots);
        if (t.family != Family::D)
            for (std::size_t i = 0; i < l; ++i) roots.push_back(unit(l, i, t.family == Family::B ? 2 : 4));
        break;
    }
    case Family::G2: {
        // Plane x1 + x2 + x3 = 0: short e_i - e_j, long 2e_i - e_j - e_k.
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                if (i != j) roots.push_back(add(unit(3, i, 2), unit(3, j, 2), -1));
        for (std::size_t i = 0; i < 3; ++i) {
            Root r(3, -2);
            r[i] = 4;
            roots.push_back(r);
            for (int& v : r) v = -v;
            roots.push_back(r);
        }
        return roots;
    }
    case Family::F4:
        add_pm_pairs(4, roots);
        for (std::size_t i = 0; i < 4; ++i) roots.push_back(unit(4, i, 2));
        for (std::size_t i = 0, n = roots.size(); i < n; ++i) {
            Root neg(roots[i]);
            for (int& v : neg) v = -v;
            roots.push_back(neg);
        }
        add_half_vectors(4, -1, roots);  // already closed under negation
        return roots;
    case Family::E8:
        return e8_roots();
    case Family::E7:
    case Family::E6: {
        // E7 is orthogonal to rho1 inside E8; E6 also to rho2, with rho1, rho2 spanning an A2.
        const Root rho1(8, 1);
        Root rho2(8, 0);
        rho2[6] = rho2[7] = 2;
        for (const Root& r : e8_roots())
            if (dot(r, rho1) == 0 && (t.family == Family::E7 || dot(r, rho2) == 0)) roots.push_back(r);
        return roots;
    }
    }
    const std::size_t n = roots.size();
    for (std::size_t i = 0; i < n; ++i) {
        Root neg(roots[i]);
        for (int& v : neg) v = -v;
        roots.push_back(neg);
    }
    return roots;
}

struct Centralizer {
    unsigned long dim;
    std::string name;
};

// C_G(S) for the sl2 of the highest root.
Centralizer centralizer(SimpleType t) {
    const unsigned long l = t.rank;
    const std::string lm1 = std::to_string(l - 1), lm2 = std::to_string(l >= 2 ? l - 2 : 0);
    switch (t.family) {
    case Family::A:
        if (l == 1) return {0, "0"};
        return {(l - 1) * (l - 1), (l == 2 ? std::string("") : "A" + lm2 + "+") + "gl1"};
    case Family::B: return {3 + dim_formula(Family::B, l - 2), "A1+B" + lm2};
    case Family::C: return {dim_formula(Family::C, l - 1), "C" + lm1};
    case Family::D: return {3 + dim_formula(Family::D, l - 2), "A1+D" + lm2};
    case Family::E6: return {35, "A5"};
    case Family::E7: return {66, "D6"};
    case Family::E8: return {133, "E7"};
    case Family::F4: return {21, "C3"};
    case Family::G2: return {3, "A1"};
    }
    return {0, ""};
}

}  // namespace

std::string type_name(SimpleType t) {
    switch (t.family) {
    case Family::A: return "A" + std::to_string(t.rank);
    case Family::B: return "B" + std::to_string(t.rank);
    case Family::C: return "C" + std::to_string(t.rank);
    case Family::D: return "D" + std::to_string(t.rank);
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::G2: return "G2";
    }
    return "?";
}

SimpleType parse_type(const std::string& s) {
    if (s.size() < 2 || !std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        s.size() > 6)
        fail(Errc::invalid_argument, "not a simple type: " + s);
    const unsigned r = static_cast<unsigned>(std::stoul(s.substr(1)));
    SimpleType t{Family::A, r};
    switch (s[0]) {
    case 'A': t.family = Family::A; break;
    case 'B': t.family = Family::B; break;
    case 'C': t.family = Family::C; break;
    case 'D': t.family = Family::D; break;
    case 'E':
        if (r < 6 || r > 8) fail(Errc::invalid_argument, "not a simple type: " + s);
        t.family = r == 6 ? Family::E6 : r == 7 ? Family::E7 : Family::E8;
        break;
    case 'F': t.family = Family::F4; break;
    case 'G': t.family = Family::G2; break;
    default: fail(Errc::invalid_argument, "not a simple type: " + s);
    }
    if (!is_admissible(t) && !(t.family == Family::C && r == 2))
        fail(Errc::invalid_argument, "inadmissible rank: " + s);
    return t;
}

bool is_admissible(SimpleType t) {
    switch (t.family) {
    case Family::A: return t.rank >= 1;
    case Family::B: return t.rank >= 2;
    case Family::C: return t.rank >= 3;
    case Family::D: return t.rank >= 4;
    default: return t.rank == exceptional_rank(t.family);
    }
}

DimRank dim_rank(SimpleType t) {
    if (!is_admissible(t)) fail(Errc::invalid_argument, "inadmissible rank for " + type_name(t));
    return {dim_formula(t.family, t.rank), t.rank};
}

RootSystem root_system(SimpleType t) {
    if (!is_admissible(t) && !(t.family == Family::C && t.rank == 2))
        fail(Errc::invalid_argument, "inadmissible rank for " + type_name(t));
    if (t.rank > 64) fail(Errc::invalid_argument, "root system rank too large");
    RootSystem rs{t, {}, {}};
    for (Root& r : all_roots(t))
        if (positive(r)) rs.positive_roots.push_back(std::move(r));
    std::sort(rs.positive_roots.begin(), rs.positive_roots.end());
    rs.positive_roots.erase(std::unique(rs.positive_roots.begin(), rs.positive_roots.end()), rs.positive_roots.end());

    const std::set<Root> pos(rs.positive_roots.begin(), rs.positive_roots.end());
    std::vector<Root> maximal;
    for (const Root& g : rs.positive_roots) {
        bool top = true;
        for (const Root& a : rs.positive_roots)
            if (pos.count(add(g, a))) {
                top = false;
                break;
            }
        if (top) maximal.push_back(g);
    }
    if (maximal.size() != 1) fail(Errc::internal, "highest root not unique for " + type_name(t));
    rs.theta = maximal.front();
    return rs;
}

ThetaCount theta_count_detail(SimpleType t) {
    const RootSystem rs = root_system(t);
    const std::set<Root> pos(rs.positive_roots.begin(), rs.positive_roots.end());
    ThetaCount tc;
    for (const Root& g : rs.positive_roots)
        if (pos.count(add(rs.theta, g, -1))) ++tc.brute_force;

    const Centralizer c = centralizer(t);
    const unsigned long dim = dim_formula(t.family, t.rank);
    tc.centralizer_dim = c.dim;
    tc.centralizer = c.name;
    tc.halfform = (dim - c.dim - 3) / 2;
    return tc;
}

unsigned long theta_count(SimpleType t) {
    const ThetaCount tc = theta_count_detail(t);
    if (tc.brute_force != tc.halfform)
        fail(Errc::internal, "theta count disagreement for " + type_name(t) + ": " + std::to_string(tc.brute_force) +
                                 " vs " + std::to_string(tc.halfform));
    return tc.brute_force;
}

unsigned long dim_weight2(SimpleType t, unsigned level) {
    if (level == 0) fail(Errc::invalid_argument, "level must be positive");
    const unsigned long d = dim_rank(t).dim;
    unsigned long v = d + d * (d + 1) / 2;
    if (level == 1) v -= 1 + theta_count(t);
    return v;
}

unsigned Decomposition::rank() const {
    unsigned r = static_cast<unsigned>(abelian_dim);
    for (const SimpleType& t : components) r += t.rank;
    return r;
}

bool Decomposition::contains(const std::vector<SimpleType>& types) const {
    std::multiset<SimpleType> have(components.begin(), components.end());
    for (const SimpleType& t : types) {
        auto it = have.find(t);
        if (it == have.end()) return false;
        have.erase(it);
    }
    return true;
}

std::string to_string(const Decomposition& d) {
    std::string s;
    for (const SimpleType& t : d.components) s += (s.empty() ? "" : "+") + type_name(t);
    if (d.abelian_dim > 0) s += (s.empty() ? "" : "+") + std::string("u1^") + std::to_string(d.abelian_dim);
    return s.empty() ? "0" : s;
}

namespace {

class LeviSearch {
public:
    LeviSearch(unsigned long target, const LeviConstraints& c) : target_(target), c_(c) {
        hi_ = UINT_MAX;
        if (c.max_rank) hi_ = *c.max_rank;
        if (c.total_rank) hi_ = std::min(hi_, *c.total_rank);
        lo_ = c.total_rank.value_or(0);

        auto push = [&](SimpleType t) {
            if (std::find(c.forbidden.begin(), c.forbidden.end(), t) == c.forbidden.end()) types_.push_back(t);
        };
        for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
            for (unsigned l = 1;; ++l) {
                const SimpleType t{f, l};
                if (!is_admissible(t)) continue;
                if (dim_formula(f, l) > target) break;
                push(t);
            }
        }
        for (Family f : {Family::E6, Family::E7, Family::E8, Family::F4, Family::G2})
            if (dim_formula(f, 0) <= target) push({f, exceptional_rank(f)});
        std::sort(types_.begin(), types_.end(), [](SimpleType a, SimpleType b) {
            const auto da = dim_formula(a.family, a.rank), db = dim_formula(b.family, b.rank);
            if (da != db) return da > db;
            return a < b;
        });

        // fill_[i][d]: least and greatest rank completing dimension d with types i.. and the abelian part.
        const std::size_t n = types_.size();
        min_fill_.assign(n + 1, std::vector<unsigned>(target + 1, kNone));
        max_fill_.assign(n + 1, std::vector<unsigned>(target + 1, 0));
        for (unsigned long d = 0; d <= target; ++d) {
            if (d == 0 || c.allow_abelian) {
                min_fill_[n][d] = static_cast<unsigned>(d);
                max_fill_[n][d] = static_cast<unsigned>(d);
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            const unsigned long dim = dim_formula(types_[i].family, types_[i].rank);
            const unsigned r = types_[i].rank;
            for (unsigned long d = 0; d <= target; ++d) {
                unsigned lo = min_fill_[i + 1][d], hi = max_fill_[i + 1][d];
                if (d >= dim && min_fill_[i][d - dim] != kNone) {
                    lo = std::min(lo, min_fill_[i][d - dim] + r);
                    hi = std::max(hi, max_fill_[i][d - dim] + r);
                }
                min_fill_[i][d] = lo;
                max_fill_[i][d] = hi;
            }
        }
    }

    std::vector<Decomposition> run() {
        if (viable(0, target_, 0)) walk(0, target_, 0);
        return std::move(out_);
    }

private:
    static constexpr unsigned kNone = UINT_MAX;

    bool viable(std::size_t i, unsigned long rem, unsigned rank) const {
        const unsigned lo = min_fill_[i][rem];
        if (lo == kNone) return false;
        return rank + lo <= hi_ && rank + max_fill_[i][rem] >= lo_;
    }

    void walk(std::size_t i, unsigned long rem, unsigned rank) {
        if (rem == 0 || c_.allow_abelian) {
            const unsigned total = rank + static_cast<unsigned>(rem);
            if (total >= lo_ && total <= hi_) {
                if (out_.size() >= c_.max_results)
                    fail(Errc::invalid_argument, "levi_search result count exceeds " + std::to_string(c_.max_results));
                out_.push_back({rem, current_});
            }
        }
        for (std::size_t j = i; j < types_.size(); ++j) {
            const unsigned long dim = dim_formula(types_[j].family, types_[j].rank);
            if (dim > rem) continue;
            if (!viable(j, rem - dim, rank + types_[j].rank)) continue;
            current_.push_back(types_[j]);
            walk(j, rem - dim, rank + types_[j].rank);
            current_.pop_back();
        }
    }

    unsigned long target_;
    const LeviConstraints& c_;
    unsigned lo_ = 0, hi_ = kNone;
    std::vector<SimpleType> types_;
    std::vector<std::vector<unsigned>> min_fill_, max_fill_;
    std::vector<SimpleType> current_;
    std::vector<Decomposition> out_;
};

}  // namespace

std::vector<Decomposition> levi_search(unsigned long target_dim, const LeviConstraints& c) {
    if (target_dim > c.cap)
        fail(Errc::invalid_argument, "target dimension " + std::to_string(target_dim) + " exceeds cap " +
                                         std::to_string(c.cap));
    return LeviSearch(target_dim, c).run();
}

std::string dimension_table_markdown(unsigned max_rank) {
    std::ostringstream os;
    os << "| type |";
    for (unsigned l = 1; l <= max_rank; ++l) os << ' ' << l << " |";
    os << " dim |\n|---|";
    for (unsigned l = 0; l <= max_rank; ++l) os << "---|";
    os << '\n';
    const std::pair<Family, const char*> rows[] = {
        {Family::A, "l^2+2l"}, {Family::B, "2l^2+l"}, {Family::C, "2l^2+l"}, {Family::D, "2l^2-l"}};
    for (const auto& [f, formula] : rows) {
        os << "| " << type_name({f, 1}).substr(0, 1) << "_l |";
        for (unsigned l = 1; l <= max_rank; ++l) {
            const SimpleType t{f, l};
            if (is_admissible(t))
                os << ' ' << dim_rank(t).dim << " |";
            else
                os << "  |";
        }
        os << ' ' << formula << " |\n";
    }
    auto single = [&](const std::string& label, unsigned rank, unsigned long dim) {
        os << "| " << label << " |";
        for (unsigned l = 1; l <= max_rank; ++l) os << (l == rank ? " " + std::to_string(dim) + " |" : "  |");
        os << "  |\n";
    };
    single("abelian", 1, 1);
    for (Family f : {Family::G2, Family::F4, Family::E6, Family::E7, Family::E8}) {
        const unsigned r = exceptional_rank(f);
        if (r <= max_rank) single(type_name({f, r}), r, dim_formula(f, r));
    }
    return os.str();
}

}  // namespace mlde3::lie
