#include "setadd/setadd.h"

#include "setadd/error.hpp"
#include "setadd/io.hpp"
#include "setadd/modarith.hpp"
#include "setadd/morphism.hpp"
#include "setadd/search.hpp"
#include "setadd/series.hpp"
#include "setadd/structure.hpp"
#include "setadd/sumset.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct sa_group {
    setadd::Group g;
};

struct sa_automorphism {
    setadd::Automorphism t;
};

namespace {

using namespace setadd;
using nlohmann::json;

thread_local std::string last_error;

sa_status status_of(ErrorKind k)
{
    switch (k) {
    case ErrorKind::invalid_argument:
        return SA_ERR_INVALID_ARGUMENT;
    case ErrorKind::invalid_spec:
        return SA_ERR_INVALID_SPEC;
    case ErrorKind::parse:
        return SA_ERR_PARSE;
    case ErrorKind::cap_exceeded:
        return SA_ERR_CAP_EXCEEDED;
    case ErrorKind::hypothesis:
        return SA_ERR_HYPOTHESIS;
    case ErrorKind::group_mismatch:
        return SA_ERR_GROUP_MISMATCH;
    }
    return SA_ERR_INTERNAL;
}

template <typename F>
sa_status guard(F&& f)
{
    try {
        last_error.clear();
        f();
        return SA_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const json::parse_error& e) {
        last_error = std::string("malformed JSON: ") + e.what();
        return SA_ERR_PARSE;
    } catch (const json::exception& e) {
        last_error = std::string("bad request field: ") + e.what();
        return SA_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return SA_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return SA_ERR_INTERNAL;
    }
}

char* dup(const std::string& s)
{
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p)
        throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void require(const void* p, const char* what)
{
    if (!p)
        fail(ErrorKind::invalid_argument, std::string(what) + " is null");
}

json parse_request(const char* text)
{
    require(text, "request");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::parse, std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::parse, std::string("request is missing \"") + key + "\"");
    return j[key];
}

std::uint64_t uint_field(const json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        fail(ErrorKind::parse, std::string("\"") + key + "\" must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::uint64_t uint_or(const json& j, const char* key, std::uint64_t fallback)
{
    return j.contains(key) ? uint_field(j, key) : fallback;
}

Group group_of(const json& req)
{
    ConstructOptions co;
    co.cap_override = req.value("cap_override", false);
    return Group::construct(group_spec_from_json(field(req, "group")), co);
}

std::string emit(const VerificationReport& r, int* findings)
{
    if (findings)
        *findings = r.has_findings() ? 1 : 0;
    return to_json(r).dump(2);
}

ojson elements_json(const Group& g, const Subset& s)
{
    ojson a = ojson::array();
    s.for_each([&](Elem e) { a.push_back(element_to_json(g, e)); });
    return a;
}

} // namespace

extern "C" {

const char* sa_version(void) { return "1.0.0"; }

const char* sa_last_error(void) { return last_error.c_str(); }

const char* sa_status_name(sa_status status)
{
    switch (status) {
    case SA_OK:
        return "ok";
    case SA_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case SA_ERR_INVALID_SPEC:
        return "invalid spec";
    case SA_ERR_PARSE:
        return "parse error";
    case SA_ERR_CAP_EXCEEDED:
        return "cap exceeded";
    case SA_ERR_HYPOTHESIS:
        return "hypothesis not met";
    case SA_ERR_GROUP_MISMATCH:
        return "group mismatch";
    case SA_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

void sa_string_free(char* s) { std::free(s); }

sa_status sa_group_create(const char* spec_json, int cap_override, sa_group** out)
{
    return guard([&] {
        require(out, "out");
        json j = parse_request(spec_json);
        ConstructOptions co;
        co.cap_override = cap_override != 0;
        *out = new sa_group{Group::construct(group_spec_from_json(j), co)};
    });
}

void sa_group_destroy(sa_group* g) { delete g; }

uint64_t sa_group_order(const sa_group* g) { return g ? g->g.order() : 0; }

sa_status sa_group_op(const sa_group* g, uint32_t a, uint32_t b, uint32_t* out)
{
    return guard([&] {
        require(g, "group");
        require(out, "out");
        *out = g->g.op(a, b);
    });
}

sa_status sa_group_inverse(const sa_group* g, uint32_t a, uint32_t* out)
{
    return guard([&] {
        require(g, "group");
        require(out, "out");
        *out = g->g.inverse(a);
    });
}

sa_status sa_group_element_order(const sa_group* g, uint32_t a, uint64_t* out)
{
    return guard([&] {
        require(g, "group");
        require(out, "out");
        *out = g->g.element_order(a);
    });
}

sa_status sa_group_p(const sa_group* g, uint64_t* out)
{
    return guard([&] {
        require(g, "group");
        require(out, "out");
        *out = minimal_torsion(g->g).value_or(0);
    });
}

sa_status sa_group_parse_element(const sa_group* g, const char* element_json, uint32_t* out)
{
    return guard([&] {
        require(g, "group");
        require(out, "out");
        *out = element_from_json(g->g, parse_request(element_json));
    });
}

sa_status sa_group_info_json(const sa_group* g, char** out)
{
    return guard([&] {
        require(g, "group");
        require(out, "out");
        const Group& G = g->g;
        ojson j;
        j["spec"] = to_json(G.spec());
        j["order"] = G.order();
        const auto p = minimal_torsion(G);
        j["p_of_g"] = p ? ojson(*p) : ojson("infinity");
        j["cyclic"] = G.is_cyclic();
        j["abelian"] = G.is_abelian();
        try {
            j["nilpotent"] = is_nilpotent(G);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::cap_exceeded)
                throw;
            j["nilpotent"] = "undecided";
        }
        try {
            j["center_size"] = center(G).size();
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::cap_exceeded)
                throw;
            j["center_size"] = "not computed";
        }
        ojson gens = ojson::array();
        for (Elem x : G.generators())
            gens.push_back(element_to_json(G, x));
        j["generators"] = gens;
        *out = dup(j.dump(2));
    });
}

sa_status sa_automorphism_create(const sa_group* g, const char* spec_json, sa_automorphism** out)
{
    return guard([&] {
        require(g, "group");
        require(out, "out");
        *out = new sa_automorphism{Automorphism::make(g->g, automorphism_spec_from_json(parse_request(spec_json)))};
    });
}

void sa_automorphism_destroy(sa_automorphism* t) { delete t; }

sa_status sa_automorphism_apply(const sa_automorphism* t, uint32_t a, uint32_t* out)
{
    return guard([&] {
        require(t, "automorphism");
        require(out, "out");
        *out = t->t.apply(a);
    });
}

sa_status sa_automorphism_order(const sa_automorphism* t, uint64_t* out)
{
    return guard([&] {
        require(t, "automorphism");
        require(out, "out");
        *out = t->t.order();
    });
}

sa_status sa_automorphism_delta(const sa_automorphism* t, int* out)
{
    return guard([&] {
        require(t, "automorphism");
        require(out, "out");
        *out = t->t.delta();
    });
}

sa_status sa_sumset_json(const char* request_json, char** out)
{
    return guard([&] {
        require(out, "out");
        const json req = parse_request(request_json);
        const Group g = group_of(req);
        const Subset a = subset_from_json(g, field(req, "a"));
        const Subset b = subset_from_json(g, field(req, "b"));
        const bool restricted = req.value("restricted", false);
        const auto theta_spec =
            req.contains("theta") ? automorphism_spec_from_json(req["theta"]) : AutomorphismSpec::identity();
        const Automorphism theta = Automorphism::make(g, theta_spec);

        ojson j;
        j["group"] = to_json(g.spec());
        j["restricted"] = restricted;
        if (restricted)
            j["theta"] = to_json(theta_spec);
        j["a"] = elements_json(g, a);
        j["b"] = elements_json(g, b);
        const Subset s = restricted ? restricted_product_set(theta, a, b) : product_set(g, a, b);
        j["result"] = elements_json(g, s);
        j["size"] = s.size();
        if (!a.empty() && !b.empty()) {
            const std::int64_t bound = restricted ? eh_bound(theta, a, b) : cd_bound(g, a, b);
            j["bound"] = bound;
            j["critical"] = s.size() + (restricted ? 3 : 1) == a.size() + b.size();
        }
        *out = dup(j.dump(2));
    });
}

sa_status sa_classify_json(const char* request_json, char** out)
{
    return guard([&] {
        require(out, "out");
        const json req = parse_request(request_json);
        const Group g = group_of(req);
        const Subset a = subset_from_json(g, field(req, "a"));
        const Subset b = subset_from_json(g, field(req, "b"));
        if (a.empty() || b.empty())
            fail(ErrorKind::invalid_argument, "classification needs nonempty sets");
        const std::string bound = req.value("bound", "cd");
        const bool prime_cyclic = g.is_cyclic() && is_prime(g.order());
        ojson j;
        j["bound"] = bound;
        ojson list = ojson::array();
        auto push = [&](const std::optional<CriticalPairClassification>& c) {
            if (c)
                list.push_back(to_json(g, *c, verify_classification(g, a, b, *c)));
        };
        if (bound == "cd") {
            j["product_size"] = product_set(g, a, b).size();
            j["critical"] = is_critical_pair_cd(g, a, b);
            if (prime_cyclic)
                push(vosper_classify(g, a, b));
            push(karolyi_cd_classify(g, a, b));
        } else if (bound == "eh") {
            const Automorphism iota = Automorphism::identity(g);
            j["product_size"] = restricted_product_set(iota, a, b).size();
            j["critical"] = is_critical_pair_eh(iota, a, b);
            if (prime_cyclic && a == b)
                push(inverse_dh_classify(g, a));
            if (!prime_cyclic)
                push(conjecture_ieh_classify(g, a, b));
        } else {
            fail(ErrorKind::invalid_argument, "bound must be cd or eh");
        }
        j["classifications"] = list;
        *out = dup(j.dump(2));
    });
}

sa_status sa_verify_json(const char* verifier, const char* request_json, unsigned workers, char** out, int* findings)
{
    return guard([&] {
        require(verifier, "verifier");
        require(out, "out");
        const json req = parse_request(request_json);
        RunOptions opts;
        opts.workers = workers == 0 ? 1 : workers;
        const std::string v = verifier;
        VerificationReport r;
        if (v == "cd") {
            r = verify_cd_bound(task_from_json(req), opts);
        } else if (v == "eh") {
            r = verify_eh_bound(task_from_json(req), opts);
        } else if (v == "olson") {
            r = verify_olson(task_from_json(req), opts);
        } else if (v == "chowla") {
            r = verify_chowla(uint_field(req, "m"), opts);
        } else if (v == "vosper") {
            const auto p = uint_field(req, "p");
            if (!is_prime(p))
                fail(ErrorKind::hypothesis, "hypothesis p prime fails (p=" + std::to_string(p) + ")");
            json tj = {{"group", {{"cyclic", p}}}};
            for (const char* key : {"k", "l", "cap_override", "shard"})
                if (req.contains(key))
                    tj[key] = req[key];
            const SearchTask t = task_from_json(tj);
            r = enumerate_critical_pairs(t, BoundType::cd, opts);
            r.verifier = "vosper";
        } else if (v == "inverse-dh") {
            r = verify_inverse_dh(uint_field(req, "p"), uint_field(req, "k"), opts);
        } else if (v == "thm51") {
            r = verify_thm_5_1(uint_field(req, "n"), uint_field(req, "k"), uint_field(req, "l"), opts);
        } else if (v == "thm61") {
            std::optional<GeometricSlice> slice;
            if (req.contains("slice"))
                slice = slice_from_json(req["slice"]);
            r = verify_thm_6_1(group_spec_from_json(field(req, "group")), uint_field(req, "k"), uint_field(req, "l"),
                               slice, opts);
        } else if (v == "dupan") {
            DuPanTask t;
            t.group = group_spec_from_json(field(req, "group"));
            if (req.contains("candidates")) {
                const Group g = Group::construct(t.group);
                for (const auto& c : req["candidates"])
                    t.candidates.push_back(subset_from_json(g, c).elements());
            }
            t.sample_count = uint_or(req, "samples", 0);
            t.sample_size = uint_or(req, "sample_size", 4);
            t.seed = uint_or(req, "seed", 1);
            r = verify_du_pan_commutativity(t, opts);
        } else {
            fail(ErrorKind::invalid_argument, "unknown verifier '" + v + "'");
        }
        *out = dup(emit(r, findings));
    });
}

sa_status sa_search_critical_json(const char* request_json, unsigned workers, char** report_out, char** csv_out,
                                  int* findings)
{
    return guard([&] {
        require(report_out, "report_out");
        const json req = parse_request(request_json);
        const std::string bound = req.value("bound", "eh");
        if (bound != "cd" && bound != "eh")
            fail(ErrorKind::invalid_argument, "bound must be cd or eh");
        json task_j = req;
        task_j.erase("bound");
        const SearchTask task = task_from_json(task_j);
        RunOptions opts;
        opts.workers = workers == 0 ? 1 : workers;
        std::vector<PairRecord> records;
        std::function<void(const PairRecord&)> sink;
        if (csv_out)
            sink = [&](const PairRecord& r) { records.push_back(r); };
        const auto r = enumerate_critical_pairs(task, bound == "cd" ? BoundType::cd : BoundType::eh, opts, sink);
        std::string report = emit(r, findings);
        std::string csv = csv_out ? critical_pairs_csv(records) : std::string();
        *report_out = dup(report);
        if (csv_out)
            *csv_out = dup(csv);
    });
}

sa_status sa_example_json(const char* name, char** out, int* findings)
{
    return guard([&] {
        require(name, "name");
        require(out, "out");
        if (std::string(name) != "eh-nonabelian")
            fail(ErrorKind::invalid_argument, std::string("unknown example '") + name + "'");
        *out = dup(emit(reproduce_example_4_13(), findings));
    });
}

sa_status sa_report_strip_timing(const char* report_json, char** out)
{
    return guard([&] {
        require(out, "out");
        ojson j = ojson::parse(report_json ? report_json : "");
        if (j.is_object())
            j.erase("elapsed_ms");
        *out = dup(j.dump(2));
    });
}

} // extern "C"
