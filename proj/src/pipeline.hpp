#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "sieve.hpp"
#include "smatrix.hpp"

namespace mlde3::pipeline {

struct Options {
    sieve::ClassifyOptions classify;
    mpfr_prec_t precision = 256;
    std::size_t terms = 120;
    unsigned seed = 0;
    std::size_t trim_order = 1000;  // coefficients of f0, f1, f2 checked once A1, A2 are known
    bool trim = true;               // run the S-matrix stage
};

enum class Category { vir_c27, a41, useries, extra, eliminated };
std::string category_name(Category c);

struct TrimRow {
    sieve::SieveVerdict verdict;
    smatrix::Symmetrization sym;
    bool integral = false;               // f0, f1, f2 with A1, A2: nonnegative integers through trim_order
    int failing_component = -1;
    std::size_t failing_index = 0;
    std::optional<smatrix::Fusion> fusion;
    std::string reason;                  // empty for survivors
    Category category = Category::eliminated;
    bool paper_listed = false;           // Vir(c_{2,7}), A_{4,1} or a U-series row
};

struct StageTiming {
    std::string stage;
    double seconds = 0;
};

struct Report {
    Options options;
    sieve::ClassifyResult sieve;
    std::vector<TrimRow> trimmed;       // untagged sieve survivors, in sieve order
    std::vector<long> y_half_parameters;  // s of the y = -1/2 family members that survived
    std::vector<StageTiming> timings;
};

Report run(const Options& opts);

// Figure-style tables built from the report.
report::Table figure57_table(const sieve::ClassifyResult& r);
report::Table figure2_table(const sieve::ClassifyResult& r);
report::Table useries_table(const Report& r);
report::Table final_table(const Report& r);
report::Table verdict_table(const sieve::ClassifyResult& r);

// Golden comparisons of the figure tables against data/; empty when all match.
std::vector<report::Mismatch> golden_check(const Report& r);

nlohmann::json to_json(const Report& r);

// U-series definition: {h1, h2} = {3/2, (2p+1)/16} with 5 <= p <= 15.
bool is_useries(const Rational& h1, const Rational& h2);

}  // namespace mlde3::pipeline
