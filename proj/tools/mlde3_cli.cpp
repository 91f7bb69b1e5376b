// Command-line front end over the C API.
//
// Exit codes: 0 success (golden tables match, windows pass), 1 mismatch or
// failing verdict, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "mlde3/mlde3.h"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct Failed {
    mlde3_status status;
};

void check(mlde3_status s) {
    if (s != MLDE3_OK) throw Failed{s};
}

// Owns a library-allocated string.
struct Str {
    char* p = nullptr;
    ~Str() { mlde3_string_free(p); }
    char** out() { return &p; }
    std::string str() const { return p ? p : ""; }
};

struct Common {
    bool json = false;
    bool md = false;
    std::string data;
    std::string config;

    mlde3_format format() const {
        return json ? MLDE3_FORMAT_JSON : md ? MLDE3_FORMAT_MARKDOWN : MLDE3_FORMAT_CSV;
    }
};

void add_common(CLI::App* app, Common& c) {
    app->add_flag("--json", c.json, "JSON output");
    app->add_flag("--md", c.md, "Markdown output");
    app->add_option("--data", c.data, "Directory of the golden tables");
    app->add_option("--config", c.config, "key=value file; command-line flags take precedence");
}

// Flat key=value lines; '#' starts a comment. Keys name long options without
// the dashes. Values only fill options not given on the command line.
void apply_config(CLI::App* app, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto l = s.find_first_not_of(" \t\r");
            const auto r = s.find_last_not_of(" \t\r");
            return l == std::string::npos ? std::string() : s.substr(l, r - l + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        CLI::Option* opt = app->get_option_no_throw("--" + key);
        // keys of a nested command ("primes verify")
        for (auto* sub : app->get_subcommands()) {
            if (opt) break;
            opt = sub->get_option_no_throw("--" + key);
        }
        if (!opt) throw CLI::ValidationError("--config", path + ": unknown key " + key);
        if (opt->count() > 0) continue;
        if (opt->get_type_size() == 0) {
            // flags: true/false/1/0
            if (value == "true" || value == "1" || value == "yes") opt->add_result(std::string("true"));
        } else {
            opt->add_result(value);
        }
        opt->run_callback();
    }
}

void set_data(const Common& c) {
    if (!c.data.empty()) check(mlde3_set_data_dir(c.data.c_str()));
}

int run_classify(const Common& c, std::map<std::string, long long>& opts, bool no_trim, const std::string& dens,
                 const std::string& table) {
    set_data(c);
    mlde3_options* raw = nullptr;
    check(mlde3_options_new(&raw));
    std::unique_ptr<mlde3_options, decltype(&mlde3_options_free)> o(raw, mlde3_options_free);
    for (const auto& [k, v] : opts)
        if (v >= 0) check(mlde3_options_set(o.get(), k.c_str(), v));
    if (no_trim) check(mlde3_options_set(o.get(), "trim", 0));
    if (!dens.empty()) check(mlde3_options_set_denominators(o.get(), dens.c_str()));

    mlde3_report* rr = nullptr;
    check(mlde3_classify(o.get(), &rr));
    std::unique_ptr<mlde3_report, decltype(&mlde3_report_free)> r(rr, mlde3_report_free);

    if (table == "all" && c.json) {
        Str s;
        check(mlde3_report_json(r.get(), s.out()));
        std::cout << s.str() << '\n';
    } else if (table == "all") {
        for (const char* t : {"full57", "full2", "useries", "final"}) {
            Str s;
            check(mlde3_report_table(r.get(), t, c.format(), s.out()));
            std::cout << "# " << t << "\n" << s.str() << '\n';
        }
    } else {
        Str s;
        check(mlde3_report_table(r.get(), table.c_str(), c.format(), s.out()));
        std::cout << s.str();
    }

    std::size_t count = 0;
    Str text;
    check(mlde3_report_golden_check(r.get(), &count, text.out()));
    if (count > 0) {
        std::cerr << count << " golden mismatches:\n" << text.str();
        return kMismatch;
    }
    std::cerr << "golden tables match\n";
    return kOk;
}

int run_expand(const Common& c, const std::string& h1, const std::string& h2, const std::string& a1,
               const std::string& a2, std::size_t order, const std::string& method) {
    mlde3_characters* raw = nullptr;
    check(mlde3_characters_new(h1.c_str(), h2.c_str(), a1.empty() ? nullptr : a1.c_str(),
                               a2.empty() ? nullptr : a2.c_str(), order,
                               method == "frobenius" ? MLDE3_METHOD_FROBENIUS : MLDE3_METHOD_HYPERGEOMETRIC, &raw));
    std::unique_ptr<mlde3_characters, decltype(&mlde3_characters_free)> ch(raw, mlde3_characters_free);
    if (c.json) {
        Str s;
        check(mlde3_characters_json(ch.get(), s.out()));
        std::cout << s.str() << '\n';
        return kOk;
    }
    const char* sep = c.md ? " | " : ",";
    if (c.md) std::cout << "| component | exponent | n | coefficient |\n|---|---|---|---|\n";
    else std::cout << "component,exponent,n,coefficient\n";
    for (int i = 0; i < 3; ++i) {
        Str e;
        check(mlde3_characters_exponent(ch.get(), i, e.out()));
        for (std::size_t n = 0; n < order; ++n) {
            Str v;
            check(mlde3_characters_coefficient(ch.get(), i, n, v.out()));
            std::cout << (c.md ? "| " : "") << i << sep << e.str() << sep << n << sep << v.str()
                      << (c.md ? " |" : "") << '\n';
        }
    }
    return kOk;
}

void print_json(const Str& s) { std::cout << s.str() << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-3 MLDE classification toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mlde3_version()));

    // classify
    Common cc;
    std::map<std::string, long long> copts{{"order", -1},    {"trim_order", -1}, {"precision", -1},
                                           {"terms", -1},    {"seed", -1},       {"q4_max_m", -1},
                                           {"beta_max", -1}, {"y_half_max_s", -1}, {"witness_prime_cap", -1},
                                           {"threads", -1}};
    bool no_trim = false;
    std::string dens, table = "all";
    auto* classify = app.add_subcommand("classify", "Sieve, trim and compare against the golden tables");
    add_common(classify, cc);
    classify->add_option("--order", copts["order"], "Coefficients scanned per character");
    classify->add_option("--trim-order", copts["trim_order"], "Coefficients checked once A1, A2 are known");
    classify->add_option("--precision", copts["precision"], "MPFR bits for the S-matrix stage");
    classify->add_option("--terms", copts["terms"], "q-series terms per evaluation");
    classify->add_option("--seed", copts["seed"], "Resample seed for the S-matrix sample points");
    classify->add_option("--q4-max-m", copts["q4_max_m"], "Search bound for the x - y = 1/2 family");
    classify->add_option("--beta-max", copts["beta_max"], "Witness bound for the y = -3/2 family");
    classify->add_option("--s-max", copts["y_half_max_s"], "Members of the y = -1/2 family scanned");
    classify->add_option("--prime-cap", copts["witness_prime_cap"], "Largest witness prime");
    classify->add_option("--threads", copts["threads"], "Worker threads (default MLDE3_THREADS or hardware)");
    classify->add_flag("--no-trim", no_trim, "Stop after the sieve");
    classify->add_option("--denominators", dens, "Comma list from 5,7,16");
    classify->add_option("--table", table, "full57, full2, useries, final, verdicts or all")
        ->check(CLI::IsMember({"full57", "full2", "useries", "final", "verdicts", "all"}));

    // expand
    Common ce;
    std::string h1, h2, a1, a2, method = "hypergeometric";
    std::size_t order = 10;
    auto* expand = app.add_subcommand("expand", "q-expansions of the three characters");
    add_common(expand, ce);
    expand->add_option("--h1", h1)->required();
    expand->add_option("--h2", h2)->required();
    expand->add_option("--A1", a1, "Normalization of f1 (default 1)");
    expand->add_option("--A2", a2, "Normalization of f2 (default 1)");
    expand->add_option("--order", order, "Coefficients per component");
    expand->add_option("--method", method)->check(CLI::IsMember({"hypergeometric", "frobenius"}));

    // fiber
    Common cf;
    std::string m;
    unsigned N = 16;
    bool weier = false, count_only = false;
    auto* fiber = app.add_subcommand("fiber", "Rational points of a fiber of the surface");
    add_common(fiber, cf);
    fiber->add_option("--m", m)->required();
    fiber->add_option("--N", N, "Common denominator of x and y");
    fiber->add_flag("--count", count_only, "Print a_m(N) and the linear bound check");
    fiber->add_flag("--weierstrass", weier, "Weierstrass model and discriminant check");

    // sieve
    Common cs;
    std::string sh1, sh2;
    std::size_t sorder = 1000;
    long beta = 0;
    auto* sv = app.add_subcommand("sieve", "Scan one candidate, or a y = -3/2 family member");
    add_common(sv, cs);
    sv->add_option("--h1", sh1);
    sv->add_option("--h2", sh2);
    sv->add_option("--order", sorder);
    sv->add_option("--beta", beta, "Witness for the y = -3/2 member with this beta");

    // smatrix
    Common cm;
    std::string mh1, mh2;
    long prec = 256;
    std::size_t terms = 120;
    unsigned seed = 0;
    auto* sm = app.add_subcommand("smatrix", "Numerical S-matrix, symmetrization and Verlinde check");
    add_common(sm, cm);
    sm->add_option("--h1", mh1)->required();
    sm->add_option("--h2", mh2)->required();
    sm->add_option("--precision", prec);
    sm->add_option("--terms", terms);
    sm->add_option("--seed", seed);

    // glue
    Common cg;
    int p = 5;
    std::size_t gorder = 12;
    auto* glue = app.add_subcommand("glue", "Glue a U-series character with its V(15-p) partner");
    add_common(glue, cg);
    glue->add_option("--p", p)->required()->check(CLI::Range(5, 15));
    glue->add_option("--order", gorder);

    // lie
    Common cl;
    auto* lie = app.add_subcommand("lie", "Simple Lie algebra data");
    add_common(lie, cl);
    lie->require_subcommand(1);
    std::string ltype;
    unsigned level = 1;
    auto* ldim = lie->add_subcommand("dim", "Dimension and rank");
    ldim->add_option("type", ltype)->required();
    auto* ltheta = lie->add_subcommand("theta", "Positive roots gamma with theta - gamma positive");
    ltheta->add_option("type", ltype)->required();
    auto* lw2 = lie->add_subcommand("weight2", "Weight-2 dimension at a level");
    lw2->add_option("type", ltype)->required();
    lw2->add_option("--level", level);
    unsigned long target = 0;
    long total_rank = -1, max_rank = -1;
    bool no_abelian = false;
    std::string forbidden;
    auto* llevi = lie->add_subcommand("levi", "Reductive decompositions of a given dimension");
    llevi->add_option("target", target)->required();
    llevi->add_option("--rank", total_rank, "Exact total rank");
    llevi->add_option("--max-rank", max_rank);
    llevi->add_flag("--no-abelian", no_abelian);
    llevi->add_option("--forbid", forbidden, "Comma list of excluded types");
    unsigned table_rank = 10;
    auto* ltable = lie->add_subcommand("table", "Dimension table");
    ltable->add_option("--max-rank", table_rank);

    // primes
    Common cp;
    auto* pr = app.add_subcommand("primes", "Primes in residue-class windows");
    add_common(pr, cp);
    pr->require_subcommand(1);
    std::uint64_t modulus = 30, xmin = 6496, xmax = 1000000;
    std::string ratio = "28/27";
    bool full = false;
    unsigned pthreads = 0;
    auto* pverify = pr->add_subcommand("verify", "Every window [X, ratio X] holds each class");
    pverify->add_option("--modulus", modulus);
    pverify->add_option("--ratio", ratio);
    pverify->add_option("--xmin", xmin);
    pverify->add_option("--xmax", xmax);
    pverify->add_flag("--full", full, "Run to the analytic threshold 789693271");
    pverify->add_option("--threads", pthreads);
    double X = 789693271.0;
    auto* pbound = pr->add_subcommand("bound", "Analytic lower bound for the class count");
    pbound->add_option("--X", X);
    pbound->add_option("--modulus", modulus);
    pbound->add_option("--ratio", ratio);

    // Common flags may follow the nested command: "primes verify --json".
    for (auto* group : {lie, pr})
        for (auto* sub : group->get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
        for (const auto& [sub, common] : std::initializer_list<std::pair<CLI::App*, Common*>>{
                 {classify, &cc}, {expand, &ce}, {fiber, &cf}, {sv, &cs}, {sm, &cm}, {glue, &cg}, {lie, &cl}, {pr, &cp}})
            if (sub->parsed()) apply_config(sub, common->config);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (pthreads == 0)
        if (const char* env = std::getenv("MLDE3_THREADS")) pthreads = static_cast<unsigned>(std::atoi(env));

    try {
        if (classify->parsed()) return run_classify(cc, copts, no_trim, dens, table);
        if (expand->parsed()) return run_expand(ce, h1, h2, a1, a2, order, method);

        if (fiber->parsed()) {
            Str s;
            if (weier) {
                check(mlde3_weierstrass_json(m.c_str(), s.out()));
                print_json(s);
            } else if (count_only) {
                std::size_t n = 0;
                int ok = 0;
                check(mlde3_am_count(m.c_str(), N, &n, &ok));
                std::cout << "a_m(N) = " << n << (ok ? " (within bound)" : " (EXCEEDS bound)") << '\n';
                return ok ? kOk : kMismatch;
            } else {
                check(mlde3_fiber(m.c_str(), N, cf.format(), s.out()));
                std::cout << s.str();
            }
            return kOk;
        }

        if (sv->parsed()) {
            if (beta != 0) {
                std::uint64_t prime = 0;
                std::size_t index = 0;
                check(mlde3_witness_beta(beta, &prime, &index));
                std::cout << "beta " << beta << ": prime " << prime << ", coefficient " << index << '\n';
                return kOk;
            }
            if (sh1.empty() || sh2.empty()) {
                std::cerr << "sieve: give --h1 and --h2, or --beta\n";
                return kUsage;
            }
            Str s;
            check(mlde3_scan_json(sh1.c_str(), sh2.c_str(), sorder, s.out()));
            print_json(s);
            return kOk;
        }

        if (sm->parsed()) {
            Str s;
            check(mlde3_smatrix_json(mh1.c_str(), mh2.c_str(), prec, terms, seed, s.out()));
            print_json(s);
            return kOk;
        }

        if (glue->parsed()) {
            Str s;
            check(mlde3_glue_json(p, gorder, s.out()));
            print_json(s);
            return kOk;
        }

        if (lie->parsed()) {
            if (ldim->parsed()) {
                unsigned long d = 0;
                unsigned r = 0;
                check(mlde3_lie_dim_rank(ltype.c_str(), &d, &r));
                if (cl.json)
                    std::cout << nlohmann::json{{"type", ltype}, {"dim", d}, {"rank", r}}.dump() << '\n';
                else
                    std::cout << ltype << ": dim " << d << ", rank " << r << '\n';
            } else if (ltheta->parsed()) {
                unsigned long n = 0;
                check(mlde3_lie_theta_count(ltype.c_str(), &n));
                if (cl.json)
                    std::cout << nlohmann::json{{"type", ltype}, {"theta_count", n}}.dump() << '\n';
                else
                    std::cout << ltype << ": " << n << '\n';
            } else if (lw2->parsed()) {
                unsigned long d = 0;
                check(mlde3_lie_dim_weight2(ltype.c_str(), level, &d));
                if (cl.json)
                    std::cout << nlohmann::json{{"type", ltype}, {"level", level}, {"dim_weight2", d}}.dump() << '\n';
                else
                    std::cout << ltype << " level " << level << ": " << d << '\n';
            } else if (llevi->parsed()) {
                Str s;
                check(mlde3_lie_levi_search(target, total_rank, max_rank, no_abelian ? 0 : 1,
                                            forbidden.empty() ? nullptr : forbidden.c_str(), s.out()));
                print_json(s);
            } else if (ltable->parsed()) {
                Str s;
                check(mlde3_lie_table_markdown(table_rank, s.out()));
                std::cout << s.str();
            }
            return kOk;
        }

        if (pr->parsed()) {
            if (pverify->parsed()) {
                if (full) xmax = 789693271;
                int pass = 0;
                Str s;
                check(mlde3_primes_verify(modulus, ratio.c_str(), xmin, xmax, pthreads, &pass, s.out()));
                print_json(s);
                std::cerr << (pass ? "PASS" : "FAIL") << '\n';
                return pass ? kOk : kMismatch;
            }
            double b = 0;
            check(mlde3_primes_bound(X, modulus, ratio.c_str(), -1, 0, &b));
            std::cout << b << '\n';
            return kOk;
        }
    } catch (const Failed& f) {
        std::cerr << "error (" << mlde3_status_name(f.status) << "): " << mlde3_last_error() << '\n';
        return f.status == MLDE3_E_INVALID_ARGUMENT || f.status == MLDE3_E_NULL_ARGUMENT ||
                       f.status == MLDE3_E_PRECONDITION || f.status == MLDE3_E_IO
                   ? kUsage
                   : kMismatch;
    }
    return kUsage;
}
