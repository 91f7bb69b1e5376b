#include "mlde3/mlde3.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "characters.hpp"
#include "lie.hpp"
#include "pipeline.hpp"
#include "primes.hpp"
#include "report.hpp"
#include "sieve.hpp"
#include "smatrix.hpp"
#include "surface.hpp"

using namespace mlde3;

struct mlde3_characters {
    characters::CharacterVector cv;
};

struct mlde3_options {
    pipeline::Options opts;
};

struct mlde3_report {
    pipeline::Report rep;
};

namespace {

thread_local std::string g_last_error;

mlde3_status set_error(mlde3_status s, const std::string& what) {
    g_last_error = what;
    return s;
}

// Runs f, mapping exceptions onto status codes.
template <class F>
mlde3_status guard(F&& f) {
    try {
        f();
        g_last_error.clear();
        return MLDE3_OK;
    } catch (const Error& e) {
        return set_error(static_cast<mlde3_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::invalid_argument& e) {
        return set_error(MLDE3_E_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return set_error(MLDE3_E_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(MLDE3_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(MLDE3_E_INTERNAL, e.what());
    } catch (...) {
        return set_error(MLDE3_E_INTERNAL, "unknown exception");
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void need(const void* p, const char* name) {
    if (!p) throw Error(static_cast<Errc>(MLDE3_E_NULL_ARGUMENT), std::string(name) + " is NULL");
}

Rational rational_arg(const char* s, const char* name) {
    need(s, name);
    return parse_rational(s);
}

std::string render(const report::Table& t, mlde3_format f) {
    switch (f) {
    case MLDE3_FORMAT_CSV: return report::to_csv(t);
    case MLDE3_FORMAT_JSON: return report::to_json(t).dump(2);
    case MLDE3_FORMAT_MARKDOWN: return report::to_markdown(t);
    }
    fail(Errc::invalid_argument, "unknown format");
}

const qseries::QExpansion& component(const mlde3_characters* c, int i) {
    need(c, "characters");
    if (i < 0 || i > 2) fail(Errc::invalid_argument, "component must be 0, 1 or 2");
    return c->cv.f[i];
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(' ');
        const auto e = item.find_last_not_of(' ');
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

extern "C" {

const char* mlde3_last_error(void) { return g_last_error.c_str(); }

const char* mlde3_status_name(mlde3_status s) {
    switch (s) {
    case MLDE3_OK: return "ok";
    case MLDE3_E_INVALID_ARGUMENT: return "invalid_argument";
    case MLDE3_E_PRECONDITION: return "precondition";
    case MLDE3_E_BEYOND_ORDER: return "beyond_order";
    case MLDE3_E_RESONANT: return "resonant";
    case MLDE3_E_PRIME_UNUSABLE: return "prime_unusable";
    case MLDE3_E_NUMERICAL: return "numerical";
    case MLDE3_E_IO: return "io";
    case MLDE3_E_INTERNAL: return "internal";
    case MLDE3_E_NULL_ARGUMENT: return "null_argument";
    }
    return "unknown";
}

void mlde3_string_free(char* s) { std::free(s); }

const char* mlde3_version(void) { return "1.0.0"; }

mlde3_status mlde3_set_data_dir(const char* dir) {
    return guard([&] { report::set_data_dir(dir ? dir : ""); });
}

mlde3_status mlde3_characters_new(const char* h1, const char* h2, const char* A1, const char* A2, size_t order,
                                  mlde3_method method, mlde3_characters** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        characters::CharacterSpec spec{rational_arg(h1, "h1"), rational_arg(h2, "h2")};
        if (A1) spec.A1 = parse_rational(A1);
        if (A2) spec.A2 = parse_rational(A2);
        auto h = std::make_unique<mlde3_characters>();
        if (method == MLDE3_METHOD_HYPERGEOMETRIC)
            h->cv = characters::character_vector(spec, order);
        else if (method == MLDE3_METHOD_FROBENIUS)
            h->cv = characters::character_vector_frobenius(spec, order);
        else
            fail(Errc::invalid_argument, "unknown method");
        *out = h.release();
    });
}

void mlde3_characters_free(mlde3_characters* c) { delete c; }

mlde3_status mlde3_characters_coefficient(const mlde3_characters* c, int comp, size_t n, char** out) {
    return guard([&] {
        need(out, "out");
        const auto& f = component(c, comp);
        if (n >= f.order())
            fail(Errc::beyond_order, "coefficient " + std::to_string(n) + " beyond computed order " +
                                         std::to_string(f.order()));
        *out = dup(to_string(f.coeffs()[n]));
    });
}

mlde3_status mlde3_characters_exponent(const mlde3_characters* c, int comp, char** out) {
    return guard([&] {
        need(out, "out");
        *out = dup(to_string(component(c, comp).leading_exponent()));
    });
}

mlde3_status mlde3_characters_central_charge(const mlde3_characters* c, char** out) {
    return guard([&] {
        need(c, "characters");
        need(out, "out");
        *out = dup(to_string(c->cv.c));
    });
}

mlde3_status mlde3_characters_json(const mlde3_characters* c, char** out) {
    return guard([&] {
        need(c, "characters");
        need(out, "out");
        nlohmann::json j;
        const auto& s = c->cv.spec;
        j["h1"] = to_string(s.h1);
        j["h2"] = to_string(s.h2);
        j["A1"] = to_string(s.A1);
        j["A2"] = to_string(s.A2);
        j["c"] = to_string(c->cv.c);
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& f : c->cv.f) {
            std::vector<std::string> co;
            for (const auto& x : f.coeffs()) co.push_back(to_string(x));
            comps.push_back({{"exponent", to_string(f.leading_exponent())}, {"coefficients", co}});
        }
        j["components"] = comps;
        *out = dup(j.dump(2));
    });
}

mlde3_status mlde3_fiber(const char* m, unsigned N, mlde3_format format, char** out) {
    return guard([&] {
        need(out, "out");
        const auto r = surface::fiber_enumerate(rational_arg(m, "m"), N);
        if (format == MLDE3_FORMAT_JSON) {
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& p : r.points) pts.push_back(surface::to_json(p));
            nlohmann::json j{{"m", to_string(parse_rational(m))},
                             {"N", N},
                             {"window", to_string(r.window)},
                             {"degenerate_line", r.degenerate_line},
                             {"points", pts}};
            *out = dup(j.dump(2));
        } else {
            const auto t = report::parse_csv(surface::to_csv(r.points), "fiber");
            *out = dup(render(t, format));
        }
    });
}

mlde3_status mlde3_am_count(const char* m, unsigned N, size_t* count, int* within_bound) {
    return guard([&] {
        need(count, "count");
        const auto c = surface::am_count(rational_arg(m, "m"), N);
        *count = c.count;
        if (within_bound) *within_bound = c.within_bound ? 1 : 0;
    });
}

mlde3_status mlde3_weierstrass_json(const char* m, char** out) {
    return guard([&] {
        need(out, "out");
        const auto w = surface::weierstrass_verify(rational_arg(m, "m"));
        nlohmann::json j{{"transform_ok", w.transform_ok},
                         {"A", to_string(w.A)},
                         {"B", to_string(w.B)},
                         {"discriminant", to_string(w.discriminant)},
                         {"printed_delta_123", to_string(w.printed_delta_123)},
                         {"printed_delta_128", to_string(w.printed_delta_128)},
                         {"matching_variant", w.matching_variant},
                         {"j_invariant", to_string(w.j_invariant)}};
        *out = dup(j.dump(2));
    });
}

mlde3_status mlde3_scan_json(const char* h1, const char* h2, size_t order, char** out) {
    return guard([&] {
        need(out, "out");
        const auto v = sieve::scan_candidate({rational_arg(h1, "h1"), rational_arg(h2, "h2")}, order);
        *out = dup(sieve::to_json(v).dump(2));
    });
}

mlde3_status mlde3_witness_beta(long beta, uint64_t* prime, size_t* index) {
    return guard([&] {
        need(prime, "prime");
        need(index, "index");
        const auto w = sieve::witness_beta(beta);
        *prime = w.prime;
        *index = w.index;
    });
}

mlde3_status mlde3_options_new(mlde3_options** out) {
    return guard([&] {
        need(out, "out");
        *out = new mlde3_options();
    });
}

void mlde3_options_free(mlde3_options* o) { delete o; }

mlde3_status mlde3_options_set(mlde3_options* o, const char* key, long long value) {
    return guard([&] {
        need(o, "options");
        need(key, "key");
        const std::string k = key;
        auto& p = o->opts;
        auto& c = p.classify;
        auto nonneg = [&] {
            if (value < 0) fail(Errc::invalid_argument, k + " must be nonnegative");
            return static_cast<unsigned long long>(value);
        };
        if (k == "order") c.order = nonneg();
        else if (k == "trim_order") p.trim_order = nonneg();
        else if (k == "precision") {
            if (value < 64) fail(Errc::invalid_argument, "precision must be at least 64 bits");
            p.precision = static_cast<mpfr_prec_t>(value);
        } else if (k == "terms") p.terms = nonneg();
        else if (k == "seed") p.seed = static_cast<unsigned>(nonneg());
        else if (k == "q4_max_m") c.q4_max_m = static_cast<long>(value);
        else if (k == "beta_max") c.beta_max = static_cast<long>(value);
        else if (k == "y_half_max_s") c.y_half_max_s = static_cast<long>(value);
        else if (k == "witness_prime_cap") c.witness_prime_cap = nonneg();
        else if (k == "threads") c.threads = static_cast<unsigned>(nonneg());
        else if (k == "trim") p.trim = value != 0;
        else fail(Errc::invalid_argument, "unknown option " + k);
    });
}

mlde3_status mlde3_options_set_denominators(mlde3_options* o, const char* list) {
    return guard([&] {
        need(o, "options");
        need(list, "list");
        std::set<unsigned> dens;
        for (const auto& s : split_commas(list)) {
            const unsigned long d = std::stoul(s);
            if (d != 5 && d != 7 && d != 16) fail(Errc::invalid_argument, "denominator must be 5, 7 or 16");
            dens.insert(static_cast<unsigned>(d));
        }
        if (dens.empty()) fail(Errc::invalid_argument, "empty denominator list");
        o->opts.classify.denominators = dens;
    });
}

mlde3_status mlde3_classify(const mlde3_options* o, mlde3_report** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        auto h = std::make_unique<mlde3_report>();
        h->rep = pipeline::run(o ? o->opts : pipeline::Options{});
        *out = h.release();
    });
}

void mlde3_report_free(mlde3_report* r) { delete r; }

mlde3_status mlde3_report_table(const mlde3_report* r, const char* table, mlde3_format format, char** out) {
    return guard([&] {
        need(r, "report");
        need(table, "table");
        need(out, "out");
        const std::string t = table;
        report::Table tab;
        if (t == "full57") tab = pipeline::figure57_table(r->rep.sieve);
        else if (t == "full2") tab = pipeline::figure2_table(r->rep.sieve);
        else if (t == "useries") tab = pipeline::useries_table(r->rep);
        else if (t == "final") tab = pipeline::final_table(r->rep);
        else if (t == "verdicts") tab = pipeline::verdict_table(r->rep.sieve);
        else fail(Errc::invalid_argument, "unknown table " + t);
        *out = dup(render(tab, format));
    });
}

mlde3_status mlde3_report_json(const mlde3_report* r, char** out) {
    return guard([&] {
        need(r, "report");
        need(out, "out");
        *out = dup(pipeline::to_json(r->rep).dump(2));
    });
}

mlde3_status mlde3_report_golden_check(const mlde3_report* r, size_t* count, char** text) {
    return guard([&] {
        need(r, "report");
        need(count, "count");
        const auto mm = pipeline::golden_check(r->rep);
        *count = mm.size();
        if (text) {
            std::string s;
            for (const auto& m : mm) s += report::to_string(m) + "\n";
            *text = dup(s);
        }
    });
}

mlde3_status mlde3_smatrix_json(const char* h1, const char* h2, long precision, size_t terms, unsigned seed,
                                char** out) {
    return guard([&] {
        need(out, "out");
        const characters::CharacterSpec spec{rational_arg(h1, "h1"), rational_arg(h2, "h2")};
        const auto s = smatrix::extract_S(spec, precision, terms, seed);
        const auto sym = smatrix::symmetrize(s);
        nlohmann::json j;
        j["h1"] = to_string(spec.h1);
        j["h2"] = to_string(spec.h2);
        j["S_unit"] = smatrix::to_json(s);
        j["symmetrize"] = smatrix::to_json(sym);
        if (sym.status == smatrix::SymmetrizeStatus::accepted) {
            const auto folded = smatrix::fold_normalization(s, Rational(sym.A1), Rational(sym.A2));
            j["S"] = smatrix::to_json(folded);
            try {
                j["verlinde"] = smatrix::to_json(smatrix::verlinde_check(folded));
            } catch (const Error& e) {
                j["verlinde_error"] = e.what();
            }
        }
        *out = dup(j.dump(2));
    });
}

mlde3_status mlde3_normalization(const char* h1, const char* h2, long precision, char** A1, char** A2,
                                 char** verdict) {
    return guard([&] {
        need(verdict, "verdict");
        const auto sym = smatrix::recover_normalization({rational_arg(h1, "h1"), rational_arg(h2, "h2")}, precision);
        if (A1) *A1 = nullptr;
        if (A2) *A2 = nullptr;
        *verdict = dup(smatrix::status_name(sym.status));
        if (sym.status == smatrix::SymmetrizeStatus::accepted) {
            if (A1) *A1 = dup(to_string(sym.A1));
            if (A2) *A2 = dup(to_string(sym.A2));
        }
    });
}

mlde3_status mlde3_glue_json(int p, size_t order, char** out) {
    return guard([&] {
        need(out, "out");
        *out = dup(smatrix::to_json(smatrix::glueing_character(p, order)).dump(2));
    });
}

mlde3_status mlde3_lie_dim_rank(const char* type, unsigned long* dim, unsigned* rank) {
    return guard([&] {
        need(type, "type");
        const auto dr = lie::dim_rank(lie::parse_type(type));
        if (dim) *dim = dr.dim;
        if (rank) *rank = dr.rank;
    });
}

mlde3_status mlde3_lie_theta_count(const char* type, unsigned long* n) {
    return guard([&] {
        need(type, "type");
        need(n, "n");
        *n = lie::theta_count(lie::parse_type(type));
    });
}

mlde3_status mlde3_lie_dim_weight2(const char* type, unsigned level, unsigned long* dim) {
    return guard([&] {
        need(type, "type");
        need(dim, "dim");
        *dim = lie::dim_weight2(lie::parse_type(type), level);
    });
}

mlde3_status mlde3_lie_levi_search(unsigned long target_dim, long total_rank, long max_rank, int allow_abelian,
                                   const char* forbidden, char** out_json) {
    return guard([&] {
        need(out_json, "out_json");
        lie::LeviConstraints c;
        if (total_rank >= 0) c.total_rank = static_cast<unsigned>(total_rank);
        if (max_rank >= 0) c.max_rank = static_cast<unsigned>(max_rank);
        c.allow_abelian = allow_abelian != 0;
        if (forbidden)
            for (const auto& s : split_commas(forbidden)) c.forbidden.push_back(lie::parse_type(s));
        const auto ds = lie::levi_search(target_dim, c);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& d : ds) {
            std::vector<std::string> comps;
            for (const auto& t : d.components) comps.push_back(lie::type_name(t));
            arr.push_back({{"decomposition", lie::to_string(d)},
                           {"abelian_dim", d.abelian_dim},
                           {"components", comps},
                           {"rank", d.rank()}});
        }
        nlohmann::json j{{"target_dim", target_dim}, {"count", ds.size()}, {"decompositions", arr}};
        *out_json = dup(j.dump(2));
    });
}

mlde3_status mlde3_lie_table_markdown(unsigned max_rank, char** out) {
    return guard([&] {
        need(out, "out");
        *out = dup(lie::dimension_table_markdown(max_rank));
    });
}

mlde3_status mlde3_primes_verify(uint64_t modulus, const char* ratio, uint64_t x_min, uint64_t x_max,
                                 unsigned threads, int* pass, char** certificate_json) {
    return guard([&] {
        need(pass, "pass");
        primes::WindowConfig cfg;
        cfg.modulus = modulus;
        if (ratio) cfg.ratio = parse_rational(ratio);
        cfg.x_min = x_min;
        cfg.x_max = x_max;
        cfg.threads = threads;
        const auto v = primes::verify_windows(cfg);
        *pass = v.pass ? 1 : 0;
        if (certificate_json) {
            nlohmann::json classes = nlohmann::json::array();
            for (const auto& c : v.classes)
                classes.push_back({{"residue", c.residue},
                                   {"q", c.q},
                                   {"q_next", c.q_next},
                                   {"worst_ratio", to_string(c.worst_ratio)}});
            nlohmann::json j{{"modulus", cfg.modulus},
                             {"ratio", to_string(cfg.ratio)},
                             {"x_min", cfg.x_min},
                             {"x_max", cfg.x_max},
                             {"pass", v.pass},
                             {"holds_from", to_string(v.holds_from)},
                             {"sieve_limit", v.sieve_limit},
                             {"primes_scanned", v.primes_scanned},
                             {"classes", classes}};
            if (v.failure)
                j["failure"] = {{"residue", v.failure->residue},
                                {"q", v.failure->q},
                                {"q_next", v.failure->q_next},
                                {"boundary", v.failure->boundary}};
            *certificate_json = dup(j.dump(2));
        }
    });
}

mlde3_status mlde3_primes_bound(double X, uint64_t modulus, const char* ratio, double c_pi, uint64_t x_pi,
                                double* out) {
    return guard([&] {
        need(out, "out");
        primes::WindowConfig cfg;
        cfg.modulus = modulus;
        if (ratio) cfg.ratio = parse_rational(ratio);
        if (c_pi >= 0) cfg.c_pi = c_pi;
        else if (modulus != 30) cfg.c_pi.reset();
        if (x_pi > 0) cfg.x_pi = x_pi;
        else if (modulus != 30) cfg.x_pi.reset();
        *out = static_cast<double>(primes::analytic_lower_bound(X, cfg));
    });
}

}  // extern "C"
