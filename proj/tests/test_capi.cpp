// Exercises the shared library through its C header only.
#include "setadd/setadd.h"

#include <doctest.h>
#include <json.hpp>

#include <memory>
#include <string>

using nlohmann::json;

namespace {

struct Str {
    char* p = nullptr;
    ~Str() { sa_string_free(p); }
    json parse() const { return json::parse(p); }
};

const char* example_group =
    R"({"semidirect":{"normal":{"modulus":47,"rank":2},"quotient":23,"matrix":[[2,0],[0,1]]}})";

} // namespace

TEST_CASE("version and status names")
{
    CHECK(std::string(sa_version()) == "1.0.0");
    CHECK(std::string(sa_status_name(SA_OK)) != std::string(sa_status_name(SA_ERR_CAP_EXCEEDED)));
}

TEST_CASE("group handles")
{
    sa_group* g = nullptr;
    REQUIRE(sa_group_create(example_group, 0, &g) == SA_OK);
    std::unique_ptr<sa_group, void (*)(sa_group*)> hold(g, sa_group_destroy);
    CHECK(sa_group_order(g) == 50807);

    uint32_t a0 = 0, q = 0, out = 0;
    REQUIRE(sa_group_parse_element(g, "[[0,0],1]", &a0) == SA_OK);
    REQUIRE(sa_group_parse_element(g, "[[1,0],0]", &q) == SA_OK);
    CHECK(a0 == 2209);
    REQUIRE(sa_group_op(g, a0, q, &out) == SA_OK);
    CHECK(out == 2 + 2209);
    REQUIRE(sa_group_inverse(g, q, &out) == SA_OK);
    CHECK(out == 46);
    uint64_t ord = 0, p = 0;
    REQUIRE(sa_group_element_order(g, q, &ord) == SA_OK);
    CHECK(ord == 47);
    REQUIRE(sa_group_p(g, &p) == SA_OK);
    CHECK(p == 23);

    CHECK(sa_group_op(g, 50807, 0, &out) == SA_ERR_INVALID_ARGUMENT);
    CHECK(std::string(sa_last_error()).find("out of range") != std::string::npos);
    CHECK(sa_group_parse_element(g, "[[1,0],0", &out) == SA_ERR_PARSE);

    Str info;
    REQUIRE(sa_group_info_json(g, &info.p) == SA_OK);
    const json j = info.parse();
    CHECK(j["order"] == 50807);
    CHECK(j["nilpotent"] == false);
    CHECK(j["center_size"] == 47);

    sa_group* trivial = nullptr;
    REQUIRE(sa_group_create(R"({"cyclic":1})", 0, &trivial) == SA_OK);
    CHECK(sa_group_p(trivial, &p) == SA_OK);
    CHECK(p == 0);
    sa_group_destroy(trivial);
}

TEST_CASE("construction errors map to status codes")
{
    sa_group* g = nullptr;
    CHECK(sa_group_create(R"({"semidirect":{"normal":{"modulus":47,"rank":2},"quotient":23,"matrix":[[5,0],[0,1]]}})",
                          0, &g) == SA_ERR_INVALID_SPEC);
    CHECK(std::string(sa_last_error()).find("M^23") != std::string::npos);
    CHECK(sa_group_create(R"({"table":[[0,1],[0,1]]})", 0, &g) == SA_ERR_INVALID_SPEC);
    CHECK(sa_group_create("{oops", 0, &g) == SA_ERR_PARSE);
    CHECK(sa_group_create(R"({"cyclic":100000000})", 0, &g) == SA_ERR_CAP_EXCEEDED);
    CHECK(sa_group_create(R"({"cyclic":5})", 0, nullptr) == SA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("automorphism handles")
{
    sa_group* g = nullptr;
    REQUIRE(sa_group_create(R"({"cyclic":7})", 0, &g) == SA_OK);
    sa_automorphism* t = nullptr;
    REQUIRE(sa_automorphism_create(g, R"({"multiplier":3})", &t) == SA_OK);
    uint32_t out = 0;
    uint64_t ord = 0;
    int delta = -1;
    REQUIRE(sa_automorphism_apply(t, 5, &out) == SA_OK);
    CHECK(out == 1);
    REQUIRE(sa_automorphism_order(t, &ord) == SA_OK);
    CHECK(ord == 6);
    REQUIRE(sa_automorphism_delta(t, &delta) == SA_OK);
    CHECK(delta == 1);
    sa_automorphism_destroy(t);
    CHECK(sa_automorphism_create(g, R"({"multiplier":7})", &t) == SA_ERR_INVALID_SPEC);
    sa_group_destroy(g);
}

TEST_CASE("sumset and classification requests")
{
    Str s;
    REQUIRE(sa_sumset_json(R"({"group":{"cyclic":5},"a":"0,1","b":"0,2"})", &s.p) == SA_OK);
    json j = s.parse();
    CHECK(j["result"].dump() == "[0,1,2,3]");
    CHECK(j["bound"] == 3);

    Str e;
    const std::string req = std::string(R"({"group":)") + example_group +
                            R"(,"a":"[[0,0],1];[[2,0],1];[[4,0],1];[[6,0],1];[[8,0],1]",)" +
                            R"("b":"[[0,0],1];[[1,0],1];[[2,0],1];[[3,0],1];[[4,0],1];[[5,0],1];[[6,0],1];[[7,0],1];[[8,0],1]",)" +
                            R"("restricted":true})";
    REQUIRE(sa_sumset_json(req.c_str(), &e.p) == SA_OK);
    j = e.parse();
    CHECK(j["size"] == 11);
    CHECK(j["critical"] == true);

    Str c;
    REQUIRE(sa_classify_json(R"({"group":{"cyclic":5},"a":"0,1,2","b":"0,1"})", &c.p) == SA_OK);
    j = c.parse();
    CHECK(j["critical"] == true);
    REQUIRE(j["classifications"].size() == 2);
    CHECK(j["classifications"][0]["taxonomy"] == "vosper");
    CHECK(j["classifications"][0]["case"] == "iii");
    CHECK(j["classifications"][0]["verified"] == true);

    Str bad;
    CHECK(sa_classify_json(R"({"group":{"cyclic":5},"a":"","b":"0"})", &bad.p) == SA_ERR_INVALID_ARGUMENT);
    CHECK(sa_sumset_json(R"({"group":{"cyclic":5},"a":"0,9","b":"0"})", &bad.p) == SA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("verifiers through the C API")
{
    Str r;
    int findings = -1;
    REQUIRE(sa_verify_json("cd", R"({"group":{"cyclic":7}})", 2, &r.p, &findings) == SA_OK);
    json j = r.parse();
    CHECK(findings == 0);
    CHECK(j["instances_checked"] == 16129);
    CHECK(j.contains("elapsed_ms"));

    Str stripped;
    REQUIRE(sa_report_strip_timing(r.p, &stripped.p) == SA_OK);
    CHECK_FALSE(stripped.parse().contains("elapsed_ms"));

    Str v;
    REQUIRE(sa_verify_json("vosper", R"({"p":5})", 1, &v.p, &findings) == SA_OK);
    j = v.parse();
    CHECK(j["verifier"] == "vosper");
    CHECK(j["case_counts"]["vosper:iii"] == 100);

    Str gate;
    CHECK(sa_verify_json("thm51", R"({"n":15,"k":3,"l":3})", 1, &gate.p, &findings) == SA_ERR_HYPOTHESIS);
    CHECK(std::string(sa_last_error()).find("p=3") != std::string::npos);
    CHECK(sa_verify_json("cd", R"({"group":{"cyclic":17}})", 1, &gate.p, &findings) == SA_ERR_CAP_EXCEEDED);
    CHECK(sa_verify_json("nope", "{}", 1, &gate.p, &findings) == SA_ERR_INVALID_ARGUMENT);

    Str x;
    REQUIRE(sa_example_json("eh-nonabelian", &x.p, &findings) == SA_OK);
    CHECK(findings == 0);
    CHECK(x.parse()["details"]["size"] == 11);
}

TEST_CASE("critical pair search with CSV")
{
    Str r, csv;
    int findings = -1;
    REQUIRE(sa_search_critical_json(R"({"group":{"cyclic":5},"k":2,"l":2,"bound":"cd"})", 1, &r.p, &csv.p, &findings) ==
            SA_OK);
    CHECK(findings == 0);
    const json j = r.parse();
    CHECK(j["critical_pairs_found"] == 50); // same difference class: 2 classes x 5 x 5
    const std::string text = csv.p;
    CHECK(text.rfind("A-bits-hex,B-bits-hex,|A|,|B|,|product|,case_label\n0x3,0x3,2,2,3,vosper:iv\n", 0) == 0);
}
