#include <string>

#include "doctest.h"
#include "twistaff/twistaff.h"

namespace {

const char* kVacuum = R"cfg(
algebra = "sl(2)"
automorphism = "identity"

[module]
generators = "trivial"
level = "1"
cutoff = "4"

[quotient]
null_field = "e"
power = "auto"
)cfg";

std::string take(char* s) {
    std::string out = s ? s : "";
    twistaff_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("config errors carry codes and messages") {
    twistaff_config* c = nullptr;
    CHECK(twistaff_config_parse("algebra = 3.5", &c) == TWISTAFF_E_CONFIG);
    CHECK(c == nullptr);
    CHECK(std::string(twistaff_last_error()).size() > 0);
    CHECK(twistaff_config_load("/nonexistent/x.cfg", &c) == TWISTAFF_E_USAGE);
    CHECK(twistaff_config_parse(nullptr, &c) == TWISTAFF_E_USAGE);

    REQUIRE(twistaff_config_parse(kVacuum, &c) == TWISTAFF_OK);
    CHECK(std::string(twistaff_last_error()).empty());
    CHECK(twistaff_config_set(c, "window", "-1") == TWISTAFF_E_USAGE);
    CHECK(twistaff_config_set(c, "colour", "1") == TWISTAFF_E_USAGE);
    CHECK(twistaff_config_set(c, "seed", "11") == TWISTAFF_OK);
    twistaff_config_free(c);
}

TEST_CASE("character and quotient through handles") {
    twistaff_config* c = nullptr;
    REQUIRE(twistaff_config_parse(kVacuum, &c) == TWISTAFF_OK);
    REQUIRE(twistaff_config_set(c, "cutoff", "6") == TWISTAFF_OK);
    twistaff_context* x = nullptr;
    REQUIRE(twistaff_context_new(c, &x) == TWISTAFF_OK);
    CHECK(twistaff_context_dim(x) == 3);
    twistaff_module* m = nullptr;
    REQUIRE(twistaff_module_new(x, c, &m) == TWISTAFF_OK);

    char* s = nullptr;
    REQUIRE(twistaff_character(m, "3", TWISTAFF_TSV, &s) == TWISTAFF_OK);
    CHECK(take(s) == "weight\tdimension\n0\t1\n1\t3\n2\t9\n3\t22\n");
    CHECK(twistaff_character(m, "7", TWISTAFF_TSV, &s) == TWISTAFF_E_CUTOFF);
    size_t d = 0;
    REQUIRE(twistaff_dimension(m, "5", &d) == TWISTAFF_OK);
    CHECK(d == 108);

    REQUIRE(twistaff_normal_form(m, "e@-1 f@-1", 0, &s) == TWISTAFF_OK);
    CHECK(take(s) == "e@-1 f@-1 |vac>");
    REQUIRE(twistaff_normal_form(m, "f@-1 e@-1", 0, &s) == TWISTAFF_OK);
    CHECK(take(s) == "-h@-2 |vac> + e@-1 f@-1 |vac>");
    CHECK(twistaff_normal_form(m, "(e+f)@-1", 0, &s) == TWISTAFF_E_USAGE);
    REQUIRE(twistaff_sugawara(m, -1, "e@-1", 0, &s) == TWISTAFF_OK);
    CHECK(take(s) == "e@-2 |vac>");

    REQUIRE(twistaff_bracket(x, "e@1", "f@-1", &s) == TWISTAFF_OK);
    CHECK(take(s) == "h@0 + K");
    REQUIRE(twistaff_bracket(x, "(e+f)@1", "f@-1", &s) == TWISTAFF_OK);
    CHECK(take(s) == "h@0 + K");

    twistaff_quotient* q = nullptr;
    REQUIRE(twistaff_quotient_new(m, c, &q) == TWISTAFF_OK);
    REQUIRE(twistaff_quotient_dims(q, nullptr, TWISTAFF_TSV, &s) == TWISTAFF_OK);
    CHECK(take(s) == "weight\tdimension\n0\t1\n1\t3\n2\t4\n3\t7\n4\t13\n");
    int ann = 0;
    REQUIRE(twistaff_quotient_annihilated(q, &ann) == TWISTAFF_OK);
    CHECK(ann == 1);

    // handles keep their own references
    twistaff_module_free(m);
    twistaff_context_free(x);
    twistaff_config_free(c);
    REQUIRE(twistaff_quotient_dims(q, "2", TWISTAFF_TSV, &s) == TWISTAFF_OK);
    CHECK(take(s) == "weight\tdimension\n0\t1\n1\t3\n2\t4\n");
    twistaff_quotient_free(q);
}

TEST_CASE("reports") {
    twistaff_config* c = nullptr;
    REQUIRE(twistaff_config_parse(kVacuum, &c) == TWISTAFF_OK);
    twistaff_report* r = nullptr;
    CHECK(twistaff_run_suites(c, "lie,bogus", &r) == TWISTAFF_E_USAGE);
    REQUIRE(twistaff_run_suites(c, "", &r) == TWISTAFF_OK);
    CHECK(twistaff_report_size(r) == 0);
    char* s = nullptr;
    REQUIRE(twistaff_report_render(r, TWISTAFF_JSON, &s) == TWISTAFF_OK);
    CHECK(take(s) == "[]\n");
    twistaff_report_free(r);

    REQUIRE(twistaff_run_suites(c, "lie,structure,affine", &r) == TWISTAFF_OK);
    CHECK(twistaff_report_size(r) > 10);
    CHECK(twistaff_report_failures(r) == 0);
    twistaff_report_free(r);
    twistaff_config_free(c);
}

TEST_CASE("math-domain errors") {
    twistaff_config* c = nullptr;
    REQUIRE(twistaff_config_parse("algebra = \"sl(2)\"\n[module]\nlevel = \"-2\"\n", &c) == TWISTAFF_OK);
    twistaff_context* x = nullptr;
    REQUIRE(twistaff_context_new(c, &x) == TWISTAFF_OK);
    twistaff_module* m = nullptr;
    CHECK(twistaff_module_new(x, c, &m) == TWISTAFF_E_DOMAIN);
    CHECK(std::string(twistaff_status_name(TWISTAFF_E_DOMAIN)) == "domain");
    twistaff_context_free(x);
    twistaff_config_free(c);
    CHECK(twistaff_set_conductor_cap(0) == TWISTAFF_E_USAGE);
}
