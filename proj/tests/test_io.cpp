#include "fixtures.hpp"

#include "setadd/error.hpp"
#include "setadd/structure.hpp"

#include <doctest.h>

using namespace setadd;
using fixtures::ex;
using nlohmann::json;

namespace {

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::invalid_argument;
}

} // namespace

TEST_CASE("group specs round trip")
{
    const std::vector<std::string> texts{
        R"({"cyclic":12})",
        R"({"direct":[{"cyclic":2},{"cyclic":3}]})",
        R"({"semidirect":{"normal":{"modulus":47,"rank":2},"quotient":23,"matrix":[[2,0],[0,1]]}})",
        R"({"table":[[0,1],[1,0]]})",
    };
    for (const auto& t : texts) {
        const GroupSpec spec = group_spec_from_json(json::parse(t));
        CHECK(to_json(spec).dump() == t);
        CHECK(to_json(group_spec_from_json(json(t))).dump() == t); // string form is re-parsed
    }
    CHECK(Group::construct(group_spec_from_json(json::parse(texts[2]))).order() == 50807);
    CHECK(kind_of([] { group_spec_from_json(json::parse(R"({"ring":3})")); }) == ErrorKind::parse);
    CHECK(kind_of([] { group_spec_from_json(json("{not json")); }) == ErrorKind::parse);
    CHECK(kind_of([] { group_spec_from_json(json::parse(R"({"cyclic":-3})")); }) != ErrorKind::group_mismatch);
}

TEST_CASE("automorphism specs round trip")
{
    for (const std::string t : {R"({"identity":true})", R"({"multiplier":3})", R"({"matrix":[[3,0],[0,1]],"target":["normal"]})",
                                R"({"permutation":[0,2,1]})"}) {
        CHECK(to_json(automorphism_spec_from_json(json::parse(t))).dump() == t);
    }
    CHECK(kind_of([] { automorphism_spec_from_json(json::parse("[1]")); }) == ErrorKind::parse);
}

TEST_CASE("elements as indices or tuples")
{
    const Group g = fixtures::example_group();
    CHECK(element_from_json(g, json::parse("[[2,0],1]")) == ex(2, 0, 1));
    CHECK(element_from_json(g, json(2209)) == ex(0, 0, 1));
    CHECK(element_to_json(g, ex(3, 4, 5)).dump() == "[[3,4],5]");
    CHECK(kind_of([&] { element_from_json(g, json::parse("[[47,0],1]")); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([&] { element_from_json(g, json::parse("[[1,0,0],1]")); }) == ErrorKind::parse);
    CHECK(kind_of([&] { element_from_json(g, json(50807)); }) == ErrorKind::invalid_argument);

    const Group d = Group::construct(GroupSpec::direct(GroupSpec::cyclic(5), GroupSpec::cyclic(7)));
    const Elem e = element_from_json(d, json::parse("[2,3]"));
    CHECK(e == 2 + 5 * 3);
    CHECK(element_to_json(d, e).dump() == "[2,3]");
}

TEST_CASE("subset literals")
{
    const Group z7 = Group::cyclic(7);
    CHECK(parse_subset(z7, "0,1,2") == Subset::of(z7, {0, 1, 2}));
    CHECK(parse_subset(z7, " 3 , 5 ") == Subset::of(z7, {3, 5}));
    CHECK(parse_subset(z7, "0x13") == Subset::of(z7, {0, 1, 4}));
    CHECK(parse_subset(z7, "").empty());
    CHECK(kind_of([&] { parse_subset(z7, "0x80"); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([&] { parse_subset(z7, "0,9"); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([&] { parse_subset(z7, "0,x"); }) == ErrorKind::parse);
    CHECK(kind_of([&] { parse_subset(z7, "0xzz"); }) == ErrorKind::parse);

    const Group g = fixtures::example_group();
    CHECK(parse_subset(g, "[[0,0],1];[[2,0],1]") == Subset::of(g, {ex(0, 0, 1), ex(2, 0, 1)}));
    CHECK(subset_from_json(g, json::parse("[[[0,0],1], 1]")) == Subset::of(g, {ex(0, 0, 1), 1}));
    CHECK(Subset::of(z7, {0, 1, 4}).to_hex() == "0x13");
    CHECK(hex_of({0, 1, 4}, 7) == "0x13");
    CHECK(hex_of({}, 7) == "0x0");
    CHECK(hex_of({64}, 65) == "0x10000000000000000");
}

TEST_CASE("size ranges")
{
    CHECK(parse_size_range("3").min == 3);
    CHECK(parse_size_range("3").max == 3);
    const auto r = parse_size_range("2..5");
    CHECK(r.min == 2);
    CHECK(r.max == 5);
    CHECK(kind_of([] { parse_size_range("2..x"); }) == ErrorKind::parse);
}

TEST_CASE("task descriptors round trip")
{
    const json j = json::parse(R"({
        "group": {"cyclic": 7}, "theta": {"multiplier": 3}, "k": [2, 3], "l": "1..4",
        "mode": "self_pairs", "shard": [1, 4]})");
    const SearchTask t = task_from_json(j);
    CHECK(t.k.min == 2);
    CHECK(t.k.max == 3);
    CHECK(t.l.max == 4);
    CHECK(t.mode == SearchMode::self_pairs);
    CHECK(t.shard_index == 1);
    CHECK(t.shard_total == 4);
    CHECK(t.theta.multiplier == 3);
    const auto again = task_from_json(json::parse(to_json(t).dump()));
    CHECK(to_json(again) == to_json(t));

    const SearchTask c = task_from_json(json::parse(R"({
        "group": {"semidirect":{"normal":{"modulus":47,"rank":2},"quotient":23,"matrix":[[2,0],[0,1]]}},
        "mode": "supplied_candidates", "candidates": [[[[[0,0],1]], [2209, 1]]]})"));
    REQUIRE(c.candidates.size() == 1);
    CHECK(c.candidates[0].first == std::vector<Elem>{ex(0, 0, 1)});
    CHECK(c.candidates[0].second == std::vector<Elem>{1, 2209}); // stored as sorted sets

    CHECK(kind_of([] { task_from_json(json::parse(R"({"k": 3})")); }) == ErrorKind::parse);
    CHECK(kind_of([] { task_from_json(json::parse(R"({"group":{"cyclic":5},"mode":"everything"})")); }) ==
          ErrorKind::parse);
}

TEST_CASE("report serialization")
{
    SearchTask t;
    t.group = GroupSpec::cyclic(5);
    t.k = t.l = {2, 2};
    const auto r = enumerate_critical_pairs(t, BoundType::cd);
    const ojson full = to_json(r);
    const ojson det = deterministic_payload(r);
    CHECK(full.contains("elapsed_ms"));
    CHECK_FALSE(det.contains("elapsed_ms"));
    std::vector<std::string> keys;
    for (const auto& [k, v] : det.items())
        keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"verifier", "task", "instances_checked", "instances_covered",
                                           "critical_pairs_found", "critical_samples", "violation_count",
                                           "bound_violations", "failure_count", "classification_failures",
                                           "case_counts", "notes", "details"});
    const auto& first = det["critical_samples"][0];
    CHECK(first["a"].dump() == "[0,1]");
    CHECK(first["a_hex"] == "0x3");
    CHECK(first["product_size"] == 3);
    CHECK(first["case"].get<std::string>().rfind("vosper:", 0) == 0);

    PairRecord rec;
    rec.a = {0, 1};
    rec.b = {0, 2};
    rec.universe = 5;
    rec.product_size = 4;
    rec.case_label = "vosper:iv";
    CHECK(critical_pairs_csv({rec}) == "A-bits-hex,B-bits-hex,|A|,|B|,|product|,case_label\n0x3,0x5,2,2,4,vosper:iv\n");
}

TEST_CASE("classification JSON")
{
    const Group z7 = Group::cyclic(7);
    const Subset a = Subset::of(z7, {0, 1});
    const auto c = vosper_classify(z7, a, a);
    REQUIRE(c);
    const ojson j = to_json(z7, *c, true);
    CHECK(j["taxonomy"] == "vosper");
    CHECK(j["case"] == "iv");
    CHECK(j["verified"] == true);
    CHECK(j["witnesses"]["progression_a"]["step"] == 1);
}
