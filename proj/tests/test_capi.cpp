#include <doctest.h>

#include <mlde3/mlde3.h>

#include <json.hpp>

#include <string>

namespace {

// Takes ownership of a library string.
std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    mlde3_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("status names and errors") {
    CHECK(std::string(mlde3_status_name(MLDE3_OK)) == "ok");
    CHECK(std::string(mlde3_status_name(MLDE3_E_NULL_ARGUMENT)) == "null_argument");
    CHECK(std::string(mlde3_version()).size() > 0);
    mlde3_characters* c = nullptr;
    CHECK(mlde3_characters_new("3/2", "2", nullptr, nullptr, 10, MLDE3_METHOD_HYPERGEOMETRIC, &c) ==
          MLDE3_E_RESONANT);
    CHECK(c == nullptr);
    CHECK(std::string(mlde3_last_error()).size() > 0);
    CHECK(mlde3_characters_new("abc", "1/2", nullptr, nullptr, 10, MLDE3_METHOD_HYPERGEOMETRIC, &c) ==
          MLDE3_E_INVALID_ARGUMENT);
    CHECK(mlde3_characters_new(nullptr, "1/2", nullptr, nullptr, 10, MLDE3_METHOD_HYPERGEOMETRIC, &c) ==
          MLDE3_E_NULL_ARGUMENT);
    mlde3_characters_free(nullptr);
    mlde3_string_free(nullptr);
}

TEST_CASE("character handle") {
    mlde3_characters* c = nullptr;
    REQUIRE(mlde3_characters_new("3/2", "31/16", "4371", "96256", 8, MLDE3_METHOD_FROBENIUS, &c) == MLDE3_OK);
    char* s = nullptr;
    REQUIRE(mlde3_characters_coefficient(c, 0, 2, &s) == MLDE3_OK);
    CHECK(take(s) == "96256");
    REQUIRE(mlde3_characters_coefficient(c, 1, 1, &s) == MLDE3_OK);
    CHECK(take(s) == "1143745");
    REQUIRE(mlde3_characters_central_charge(c, &s) == MLDE3_OK);
    CHECK(take(s) == "47/2");
    REQUIRE(mlde3_characters_exponent(c, 0, &s) == MLDE3_OK);
    CHECK(take(s) == "-47/48");
    CHECK(mlde3_characters_coefficient(c, 0, 8, &s) == MLDE3_E_BEYOND_ORDER);
    CHECK(mlde3_characters_coefficient(c, 3, 0, &s) == MLDE3_E_INVALID_ARGUMENT);
    REQUIRE(mlde3_characters_json(c, &s) == MLDE3_OK);
    auto j = nlohmann::json::parse(take(s));
    CHECK(j.is_object());
    mlde3_characters_free(c);
}

TEST_CASE("surface, sieve and Lie entry points") {
    size_t n = 0;
    int within = 0;
    REQUIRE(mlde3_am_count("24", 5, &n, &within) == MLDE3_OK);
    CHECK(n > 0);
    CHECK(within == 1);
    char* s = nullptr;
    REQUIRE(mlde3_fiber("24", 5, MLDE3_FORMAT_CSV, &s) == MLDE3_OK);
    CHECK(take(s).find("2/5") != std::string::npos);
    REQUIRE(mlde3_weierstrass_json("10", &s) == MLDE3_OK);
    CHECK(nlohmann::json::parse(take(s)).is_object());

    uint64_t p = 0;
    size_t k = 0;
    REQUIRE(mlde3_witness_beta(25, &p, &k) == MLDE3_OK);
    CHECK(p == 7);
    CHECK(k == 3);
    CHECK(mlde3_witness_beta(48, &p, &k) == MLDE3_E_PRECONDITION);
    REQUIRE(mlde3_scan_json("2/5", "3/5", 50, &s) == MLDE3_OK);
    CHECK(nlohmann::json::parse(take(s))["status"] == "survives");

    unsigned long dim = 0;
    unsigned rank = 0;
    REQUIRE(mlde3_lie_dim_rank("E8", &dim, &rank) == MLDE3_OK);
    CHECK(dim == 248);
    CHECK(rank == 8);
    unsigned long theta = 0;
    REQUIRE(mlde3_lie_theta_count("G2", &theta) == MLDE3_OK);
    CHECK(theta == 4);
    REQUIRE(mlde3_lie_levi_search(300, 12, -1, 1, nullptr, &s) == MLDE3_OK);
    CHECK(take(s).find("E8+F4") != std::string::npos);
    CHECK(mlde3_lie_dim_rank("B1", &dim, &rank) == MLDE3_E_INVALID_ARGUMENT);
}

TEST_CASE("S matrix and normalization") {
    char *a1 = nullptr, *a2 = nullptr, *verdict = nullptr;
    REQUIRE(mlde3_normalization("3/2", "15/16", 256, &a1, &a2, &verdict) == MLDE3_OK);
    CHECK(take(verdict) == "accepted");
    CHECK(take(a1) == "3875");
    CHECK(take(a2) == "248");
    char* s = nullptr;
    REQUIRE(mlde3_glue_json(7, 12, &s) == MLDE3_OK);
    auto j = nlohmann::json::parse(take(s));
    CHECK(j["matches_j"] == true);
    CHECK(mlde3_glue_json(3, 12, &s) == MLDE3_E_INVALID_ARGUMENT);
}

TEST_CASE("primes") {
    int pass = 1;
    char* cert = nullptr;
    REQUIRE(mlde3_primes_verify(30, "28/27", 6496, 20000, 1, &pass, &cert) == MLDE3_OK);
    CHECK(pass == 0);
    auto j = nlohmann::json::parse(take(cert));
    CHECK(j["holds_from"] == "197667/28");
    REQUIRE(mlde3_primes_verify(30, "28/27", 7060, 20000, 1, &pass, &cert) == MLDE3_OK);
    CHECK(pass == 1);
    mlde3_string_free(cert);
    double b = 0;
    REQUIRE(mlde3_primes_bound(789693271.0, 30, "28/27", -1, 0, &b) == MLDE3_OK);
    CHECK(b > 1000);
    CHECK(mlde3_primes_bound(1e6, 30, "28/27", -1, 0, &b) == MLDE3_E_PRECONDITION);
}

TEST_CASE("classification through the handle API") {
    REQUIRE(mlde3_set_data_dir(MLDE3_TEST_DATA_DIR) == MLDE3_OK);
    mlde3_options* o = nullptr;
    REQUIRE(mlde3_options_new(&o) == MLDE3_OK);
    CHECK(mlde3_options_set(o, "order", 150) == MLDE3_OK);
    CHECK(mlde3_options_set(o, "trim_order", 150) == MLDE3_OK);
    CHECK(mlde3_options_set(o, "no_such_key", 1) == MLDE3_E_INVALID_ARGUMENT);
    CHECK(mlde3_options_set(o, "precision", 8) == MLDE3_E_INVALID_ARGUMENT);
    CHECK(mlde3_options_set_denominators(o, "5,9") == MLDE3_E_INVALID_ARGUMENT);
    mlde3_report* r = nullptr;
    REQUIRE(mlde3_classify(o, &r) == MLDE3_OK);
    size_t count = 99;
    char* text = nullptr;
    REQUIRE(mlde3_report_golden_check(r, &count, &text) == MLDE3_OK);
    CHECK(count == 0);
    mlde3_string_free(text);
    char* s = nullptr;
    REQUIRE(mlde3_report_table(r, "useries", MLDE3_FORMAT_CSV, &s) == MLDE3_OK);
    CHECK(take(s).find("3/2,31/16,47/2,47/2,4371,96256") != std::string::npos);
    REQUIRE(mlde3_report_table(r, "final", MLDE3_FORMAT_MARKDOWN, &s) == MLDE3_OK);
    CHECK(take(s).find("vir_c27") != std::string::npos);
    CHECK(mlde3_report_table(r, "nope", MLDE3_FORMAT_CSV, &s) == MLDE3_E_INVALID_ARGUMENT);
    mlde3_report_free(r);

    // Only denominator 7: the 5 rows go missing and the check says so.
    REQUIRE(mlde3_options_set_denominators(o, "7") == MLDE3_OK);
    CHECK(mlde3_options_set(o, "trim", 0) == MLDE3_OK);
    REQUIRE(mlde3_classify(o, &r) == MLDE3_OK);
    REQUIRE(mlde3_report_golden_check(r, &count, &text) == MLDE3_OK);
    CHECK(count > 0);
    CHECK(take(text).find("full57") != std::string::npos);
    mlde3_report_free(r);
    mlde3_options_free(o);
    CHECK(mlde3_set_data_dir(nullptr) == MLDE3_OK);
}
