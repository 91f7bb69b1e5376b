#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "characters.hpp"

namespace mlde3::pipeline {

namespace {

using characters::CharacterSpec;

bool same_pair(const Rational& a1, const Rational& a2, const Rational& b1, const Rational& b2) {
    return (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1);
}

Category paper_category(const Rational& h1, const Rational& h2) {
    if (same_pair(h1, h2, Rational(-2, 7), Rational(-3, 7))) return Category::vir_c27;
    if (same_pair(h1, h2, Rational(2, 5), Rational(3, 5))) return Category::a41;
    if (is_useries(h1, h2)) return Category::useries;
    return Category::extra;
}

std::string approx(const BigFloat& v) { return v.str(12); }

void trim_one(TrimRow& row, const Options& opts) {
    const Rational& h1 = row.verdict.candidate.h1;
    const Rational& h2 = row.verdict.candidate.h2;
    const Category listed = paper_category(h1, h2);
    row.paper_listed = listed != Category::extra;

    try {
        row.sym = smatrix::recover_normalization(CharacterSpec{h1, h2}, opts.precision, opts.terms);
    } catch (const Error& e) {
        row.reason = std::string("symmetrize: ") + e.what();
        return;
    }
    if (row.sym.status != smatrix::SymmetrizeStatus::accepted) {
        row.reason = "symmetrize: " + smatrix::status_name(row.sym.status);
        if (row.sym.status == smatrix::SymmetrizeStatus::non_integer)
            row.reason += " (A1 ~ " + approx(row.sym.A1_value) + ", A2 ~ " + approx(row.sym.A2_value) + ")";
        return;
    }

    const CharacterSpec full{h1, h2, Rational(row.sym.A1), Rational(row.sym.A2)};
    const auto cv = characters::character_vector_frobenius(full, opts.trim_order);
    row.integral = true;
    for (int i = 0; i < 3 && row.integral; ++i) {
        const auto& c = cv.f[i].coeffs();
        for (std::size_t n = 0; n < c.size(); ++n)
            if (!is_integer(c[n]) || c[n] < 0) {
                row.integral = false;
                row.failing_component = i;
                row.failing_index = n;
                row.reason = "f" + std::to_string(i) + " coefficient " + std::to_string(n) + " = " +
                             to_string(c[n]).substr(0, 40) + " is not a nonnegative integer";
                break;
            }
    }
    if (!row.integral) return;

    try {
        const auto s = smatrix::extract_S(CharacterSpec{h1, h2}, opts.precision, opts.terms, opts.seed);
        row.fusion = smatrix::verlinde_check(smatrix::fold_normalization(s, full.A1, full.A2));
    } catch (const Error& e) {
        row.reason = std::string("verlinde: ") + e.what();
        return;
    }
    if (!row.fusion->integral) {
        row.reason = row.fusion->negative_flagged ? "verlinde: negative fusion coefficient"
                                                  : "verlinde: non-integral fusion coefficient";
        return;
    }
    row.category = listed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> base_cells(const sieve::SieveVerdict& v) {
    const Rational& h1 = v.candidate.h1;
    const Rational& h2 = v.candidate.h2;
    return {to_string(v.m), to_string(h1), to_string(h2), to_string(characters::central_charge(h1, h2)),
            to_string(characters::effective_central_charge(h1, h2))};
}

}  // namespace

std::string category_name(Category c) {
    switch (c) {
    case Category::vir_c27: return "vir_c27";
    case Category::a41: return "a41";
    case Category::useries: return "useries";
    case Category::extra: return "extra";
    case Category::eliminated: return "eliminated";
    }
    return "unknown";
}

bool is_useries(const Rational& h1, const Rational& h2) {
    for (const auto& [a, b] : {std::pair{h1, h2}, std::pair{h2, h1}}) {
        if (a != Rational(3, 2)) continue;
        const Rational p = (16 * b - 1) / 2;
        if (is_integer(p) && p >= 5 && p <= 15) return true;
    }
    return false;
}

Report run(const Options& opts) {
    Report rep;
    rep.options = opts;
    auto t0 = std::chrono::steady_clock::now();
    rep.sieve = sieve::classify_all(opts.classify);
    rep.timings.push_back({"sieve", seconds_since(t0)});

    for (const auto& v : rep.sieve.verdicts)
        if (v.status == sieve::Status::survives && v.provenance == surface::Provenance::y_half_family)
            rep.y_half_parameters.push_back(v.family_parameter);
    std::sort(rep.y_half_parameters.begin(), rep.y_half_parameters.end());

    if (!opts.trim) return rep;
    t0 = std::chrono::steady_clock::now();
    for (unsigned d : {5u, 7u, 16u})
        for (const auto& v : rep.sieve.survivors(d, false)) {
            TrimRow row;
            row.verdict = v;
            rep.trimmed.push_back(std::move(row));
        }

    const unsigned threads = std::min<unsigned>(sieve::thread_count(opts.classify.threads),
                                                static_cast<unsigned>(std::max<std::size_t>(rep.trimmed.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < rep.trimmed.size();) trim_one(rep.trimmed[i], opts);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    rep.timings.push_back({"smatrix", seconds_since(t0)});
    return rep;
}

report::Table figure57_table(const sieve::ClassifyResult& r) {
    report::Table t{"full57", {"m", "h1", "h2", "c", "ctilde", "denominator"}, {}};
    for (unsigned d : {5u, 7u})
        for (const auto& v : r.survivors(d, false)) {
            auto row = base_cells(v);
            row.push_back(std::to_string(d));
            t.rows.push_back(row);
        }
    return t;
}

report::Table figure2_table(const sieve::ClassifyResult& r) {
    report::Table t{"full2", {"m", "h1", "h2", "c", "ctilde"}, {}};
    for (const auto& v : r.survivors(16, false)) t.rows.push_back(base_cells(v));
    return t;
}

report::Table useries_table(const Report& r) {
    report::Table t{"useries", {"m", "h1", "h2", "c", "ctilde", "A1", "A2"}, {}};
    for (const auto& row : r.trimmed) {
        if (row.category != Category::useries) continue;
        // h1 = 3/2 orientation; swapping h1 and h2 swaps A1 and A2.
        const bool swap = row.verdict.candidate.h1 != Rational(3, 2);
        sieve::SieveVerdict v = row.verdict;
        Integer a1 = row.sym.A1, a2 = row.sym.A2;
        if (swap) {
            std::swap(v.candidate.h1, v.candidate.h2);
            std::swap(a1, a2);
        }
        auto cells = base_cells(v);
        cells.push_back(to_string(a1));
        cells.push_back(to_string(a2));
        t.rows.push_back(cells);
    }
    std::sort(t.rows.begin(), t.rows.end(),
              [](const auto& a, const auto& b) { return parse_rational(a[0]) < parse_rational(b[0]); });
    return t;
}

report::Table final_table(const Report& r) {
    report::Table t{"final", {"category", "m", "h1", "h2", "c", "ctilde", "A1", "A2", "paper_listed", "reason"}, {}};
    for (const auto& row : r.trimmed) {
        auto cells = base_cells(row.verdict);
        cells.insert(cells.begin(), category_name(row.category));
        const bool accepted = row.sym.status == smatrix::SymmetrizeStatus::accepted;
        cells.push_back(accepted ? to_string(row.sym.A1) : "");
        cells.push_back(accepted ? to_string(row.sym.A2) : "");
        cells.push_back(row.paper_listed ? "yes" : "no");
        cells.push_back(row.reason);
        t.rows.push_back(cells);
    }
    return t;
}

report::Table verdict_table(const sieve::ClassifyResult& r) {
    std::string text = sieve::verdict_csv_header() + "\n";
    for (const auto& v : r.verdicts) text += sieve::to_csv_row(v) + "\n";
    return report::parse_csv(text, "verdicts");
}

std::vector<report::Mismatch> golden_check(const Report& r) {
    std::vector<report::Mismatch> out;
    auto add = [&](std::vector<report::Mismatch> m) { out.insert(out.end(), m.begin(), m.end()); };
    add(report::compare(report::load_golden("full57"), figure57_table(r.sieve), {"m", "h1", "h2"},
                        {"c", "ctilde", "denominator"}));
    add(report::compare(report::load_golden("full2"), figure2_table(r.sieve), {"m", "h1", "h2"}, {"c", "ctilde"}));
    if (!r.trimmed.empty())
        add(report::compare(report::load_golden("useries"), useries_table(r), {"m", "h1", "h2"},
                            {"c", "ctilde", "A1", "A2"}));
    return out;
}

nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["metadata"] = {{"order", r.options.classify.order},
                     {"trim_order", r.options.trim_order},
                     {"precision_bits", r.options.precision},
                     {"terms", r.options.terms},
                     {"seed", r.options.seed},
                     {"q4_max_m", r.options.classify.q4_max_m},
                     {"beta_max", r.options.classify.beta_max},
                     {"y_half_max_s", r.options.classify.y_half_max_s}};
    nlohmann::json timings = nlohmann::json::array();
    for (const auto& t : r.timings) timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
    j["timings"] = timings;
    j["log"] = r.sieve.log;
    j["figure57"] = report::to_json(figure57_table(r.sieve));
    j["figure2"] = report::to_json(figure2_table(r.sieve));
    j["y_half_family_s"] = r.y_half_parameters;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.trimmed) {
        nlohmann::json o = sieve::to_json(row.verdict);
        o["category"] = category_name(row.category);
        o["paper_listed"] = row.paper_listed;
        o["symmetrize"] = smatrix::to_json(row.sym);
        if (row.fusion) o["verlinde"] = smatrix::to_json(*row.fusion);
        o["reason"] = row.reason;
        rows.push_back(o);
    }
    j["trimmed"] = rows;
    return j;
}

}  // namespace mlde3::pipeline
