// setadd: command-line front end over the C interface.
//
//   setadd group info --group '{"cyclic":15}'
//   setadd sumset --group '{"cyclic":7}' --a 0,1,2 --b 0,1,2 --restricted
//   setadd verify cd --group '{"cyclic":7}'
//   setadd verify thm51 --n 49 --k 3 --l 3
//   setadd search critical --group '{"cyclic":13}' --mode self_pairs --k 5 --csv crit.csv
//   setadd example eh-nonabelian
//
// Exit status: 0 success, 1 usage or input error, 2 findings.

#include "setadd/setadd.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using ojson = nlohmann::ordered_json;

namespace {

struct Options {
    std::string group, theta, a, b, k, l, mode, shard, normalization, filter, bound = "eh";
    std::string task_file, candidates, slice, csv, out;
    std::uint64_t n = 0, m = 0, p = 0, samples = 0, sample_size = 4, seed = 1;
    bool restricted = false, json = false, cap_override = false;
    unsigned workers = 1;
};

struct Failure {
    std::string message;
};

// Owns a string returned by the library.
struct Owned {
    char* s = nullptr;
    ~Owned() { sa_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

void check(sa_status st)
{
    if (st != SA_OK)
        throw Failure{std::string(sa_status_name(st)) + ": " + sa_last_error()};
}

ojson parse_json_arg(const std::string& text, const char* flag)
{
    try {
        return ojson::parse(text);
    } catch (const ojson::parse_error&) {
        throw Failure{std::string("parse error: ") + flag + " is not valid JSON"};
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Failure{"cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ojson set_arg(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t");
    // A bare JSON array of flat indices is passed through; everything else is a literal.
    if (first != std::string::npos && text[first] == '[' && text.find(';') == std::string::npos) {
        try {
            auto j = ojson::parse(text);
            bool flat = j.is_array();
            for (const auto& e : j)
                flat = flat && e.is_number_integer();
            if (flat)
                return j;
        } catch (const ojson::parse_error&) {
        }
    }
    return text;
}

ojson task_json(const Options& o)
{
    ojson t = o.task_file.empty() ? ojson::object() : parse_json_arg(read_file(o.task_file), "--task");
    if (!o.group.empty())
        t["group"] = parse_json_arg(o.group, "--group");
    if (!t.contains("group"))
        throw Failure{"usage: --group is required"};
    if (!o.theta.empty())
        t["theta"] = parse_json_arg(o.theta, "--theta");
    if (!o.k.empty())
        t["k"] = o.k;
    if (!o.l.empty())
        t["l"] = o.l;
    if (!o.mode.empty())
        t["mode"] = o.mode;
    if (!o.normalization.empty())
        t["normalization"] = o.normalization;
    if (!o.filter.empty())
        t["filter"] = o.filter;
    if (!o.shard.empty()) {
        const auto slash = o.shard.find('/');
        try {
            if (slash == std::string::npos)
                throw std::invalid_argument("shard");
            t["shard"] = ojson::array({std::stoul(o.shard.substr(0, slash)), std::stoul(o.shard.substr(slash + 1))});
        } catch (const std::exception&) {
            throw Failure{"usage: --shard expects I/T, e.g. 0/4"};
        }
    }
    if (!o.candidates.empty())
        t["candidates"] = parse_json_arg(o.candidates, "--candidates");
    if (!o.slice.empty())
        t["slice"] = parse_json_arg(o.slice, "--slice");
    if (o.cap_override)
        t["cap_override"] = true;
    return t;
}

std::uint64_t need(std::uint64_t v, const char* flag)
{
    if (v == 0)
        throw Failure{std::string("usage: ") + flag + " is required"};
    return v;
}

std::uint64_t need_size(const std::string& v, const char* flag)
{
    if (v.empty())
        throw Failure{std::string("usage: ") + flag + " is required"};
    try {
        std::size_t pos = 0;
        const auto x = std::stoull(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(flag);
        return x;
    } catch (const std::exception&) {
        throw Failure{std::string("usage: ") + flag + " expects an integer here"};
    }
}

std::string scalar(const ojson& v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

std::string render_set(const ojson& arr)
{
    std::string s = "{";
    for (std::size_t i = 0; i < arr.size(); ++i)
        s += (i ? ", " : "") + scalar(arr[i]);
    return s + "}";
}

std::string pretty_report(const ojson& r)
{
    std::ostringstream os;
    os << "verifier: " << scalar(r["verifier"]) << "\n";
    os << "instances checked: " << r["instances_checked"].get<std::uint64_t>();
    if (r["instances_covered"] != r["instances_checked"])
        os << " (covering " << r["instances_covered"].get<std::uint64_t>() << ")";
    os << "\n";
    os << "critical pairs: " << r["critical_pairs_found"].get<std::uint64_t>() << "\n";
    os << "violations: " << r["violation_count"].get<std::uint64_t>() << "\n";
    os << "classification failures: " << r["failure_count"].get<std::uint64_t>() << "\n";
    if (!r["case_counts"].empty()) {
        os << "cases:\n";
        for (const auto& [k, v] : r["case_counts"].items())
            os << "  " << k << ": " << v.get<std::uint64_t>() << "\n";
    }
    for (const auto& [k, v] : r["details"].items())
        if (v.is_primitive())
            os << k << ": " << scalar(v) << "\n";
    if (r["details"].contains("size"))
        os << "restricted product: " << render_set(r["details"]["restricted_product"]) << "\n";
    auto list = [&](const char* key, const char* title) {
        if (r[key].empty())
            return;
        os << title << ":\n";
        for (const auto& rec : r[key]) {
            os << "  A=" << render_set(rec["a"]) << " B=" << render_set(rec["b"]) << " size=" << rec["product_size"];
            if (!rec["case"].get<std::string>().empty())
                os << " case=" << rec["case"].get<std::string>();
            if (rec.contains("note"))
                os << " (" << rec["note"].get<std::string>() << ")";
            os << "\n";
        }
    };
    list("bound_violations", "violations");
    list("classification_failures", "classification failures");
    for (const auto& n : r["notes"])
        os << "note: " << n.get<std::string>() << "\n";
    os << "elapsed ms: " << r["elapsed_ms"].get<double>() << "\n";
    return os.str();
}

std::string pretty_flat(const ojson& j)
{
    std::ostringstream os;
    for (const auto& [k, v] : j.items()) {
        if (v.is_array() && (k == "result" || k == "a" || k == "b" || k == "generators"))
            os << k << ": " << render_set(v) << "\n";
        else
            os << k << ": " << (v.is_primitive() ? scalar(v) : v.dump()) << "\n";
    }
    return os.str();
}

int deliver(const Options& o, const std::string& json_text, bool report, bool findings)
{
    const ojson j = ojson::parse(json_text);
    const std::string text = o.json ? j.dump(2) + "\n" : (report ? pretty_report(j) : pretty_flat(j));
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f)
            throw Failure{"cannot write " + o.out};
        f << text;
    } else {
        std::cout << text;
    }
    return findings ? 2 : 0;
}

int run_group(const Options& o, const std::string& action)
{
    if (action != "info")
        throw Failure{"usage: unknown group action '" + action + "'"};
    if (o.group.empty())
        throw Failure{"usage: --group is required"};
    sa_group* g = nullptr;
    check(sa_group_create(o.group.c_str(), o.cap_override ? 1 : 0, &g));
    Owned info;
    const sa_status st = sa_group_info_json(g, &info.s);
    sa_group_destroy(g);
    check(st);
    return deliver(o, info.str(), false, false);
}

int run_sumset(const Options& o)
{
    if (o.group.empty() || o.a.empty() || o.b.empty())
        throw Failure{"usage: sumset needs --group, --a and --b"};
    ojson req;
    req["group"] = parse_json_arg(o.group, "--group");
    req["a"] = set_arg(o.a);
    req["b"] = set_arg(o.b);
    req["restricted"] = o.restricted;
    if (!o.theta.empty())
        req["theta"] = parse_json_arg(o.theta, "--theta");
    if (o.cap_override)
        req["cap_override"] = true;
    Owned out;
    check(sa_sumset_json(req.dump().c_str(), &out.s));
    return deliver(o, out.str(), false, false);
}

int run_verify(const Options& o, const std::string& name)
{
    ojson req;
    if (name == "cd" || name == "eh" || name == "olson") {
        req = task_json(o);
    } else if (name == "chowla") {
        req["m"] = need(o.m ? o.m : o.n, "--m");
    } else if (name == "vosper") {
        req["p"] = need(o.p, "--p");
        if (!o.k.empty())
            req["k"] = o.k;
        if (!o.l.empty())
            req["l"] = o.l;
        if (o.cap_override)
            req["cap_override"] = true;
    } else if (name == "inverse-dh") {
        req["p"] = need(o.p, "--p");
        req["k"] = need_size(o.k, "--k");
    } else if (name == "thm51") {
        req["n"] = need(o.n, "--n");
        req["k"] = need_size(o.k, "--k");
        req["l"] = need_size(o.l, "--l");
    } else if (name == "thm61") {
        if (o.group.empty())
            throw Failure{"usage: --group is required"};
        req["group"] = parse_json_arg(o.group, "--group");
        req["k"] = need_size(o.k, "--k");
        req["l"] = need_size(o.l, "--l");
        if (!o.slice.empty())
            req["slice"] = parse_json_arg(o.slice, "--slice");
    } else if (name == "dupan") {
        if (o.group.empty())
            throw Failure{"usage: --group is required"};
        req["group"] = parse_json_arg(o.group, "--group");
        if (!o.candidates.empty())
            req["candidates"] = parse_json_arg(o.candidates, "--candidates");
        req["samples"] = o.samples;
        req["sample_size"] = o.sample_size;
        req["seed"] = o.seed;
    } else {
        throw Failure{"usage: unknown verifier '" + name + "'"};
    }
    Owned out;
    int findings = 0;
    check(sa_verify_json(name.c_str(), req.dump().c_str(), o.workers, &out.s, &findings));
    return deliver(o, out.str(), true, findings != 0);
}

int run_search(const Options& o, const std::string& what)
{
    if (what != "critical")
        throw Failure{"usage: unknown search '" + what + "'"};
    ojson req = task_json(o);
    req["bound"] = o.bound;
    Owned report, csv;
    int findings = 0;
    check(sa_search_critical_json(req.dump().c_str(), o.workers, &report.s, o.csv.empty() ? nullptr : &csv.s,
                                  &findings));
    if (!o.csv.empty()) {
        std::ofstream f(o.csv);
        if (!f)
            throw Failure{"cannot write " + o.csv};
        f << csv.str();
    }
    return deliver(o, report.str(), true, findings != 0);
}

int run_example(const Options& o, const std::string& name)
{
    Owned out;
    int findings = 0;
    check(sa_example_json(name.c_str(), &out.s, &findings));
    return deliver(o, out.str(), true, findings != 0);
}

void common_flags(CLI::App* app, Options& o)
{
    app->add_flag("--json", o.json, "Print the canonical JSON report");
    app->add_option("--out", o.out, "Write the report to FILE instead of stdout");
    app->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
    app->add_flag("--cap-override", o.cap_override, "Run past the enumeration caps");
}

void task_flags(CLI::App* app, Options& o)
{
    app->add_option("--group", o.group, "Group descriptor (JSON)");
    app->add_option("--theta", o.theta, "Automorphism descriptor (JSON)");
    app->add_option("--k", o.k, "Size of A: N or MIN..MAX");
    app->add_option("--l", o.l, "Size of B: N or MIN..MAX");
    app->add_option("--mode", o.mode, "all_pairs | ap_pairs_same_difference | geometric_pairs_same_ratio | "
                                      "self_pairs | supplied_candidates");
    app->add_option("--normalization", o.normalization, "none | affine");
    app->add_option("--filter", o.filter, "none | chowla");
    app->add_option("--shard", o.shard, "I/T: run shard I of T");
    app->add_option("--task", o.task_file, "Task descriptor file (JSON); flags override its fields");
    app->add_option("--candidates", o.candidates, "JSON list of [A, B] pairs (or sets for dupan)");
    app->add_option("--slice", o.slice, "Geometric slice (JSON)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Restricted set addition workbench"};
    app.require_subcommand(1);
    Options o;
    std::string action;

    auto* group = app.add_subcommand("group", "Group construction and invariants");
    group->add_option("action", action, "info")->required();
    group->add_option("--group", o.group, "Group descriptor (JSON)");
    common_flags(group, o);

    auto* sumset = app.add_subcommand("sumset", "Compute AB or the restricted product");
    sumset->add_option("--group", o.group, "Group descriptor (JSON)");
    sumset->add_option("--a", o.a, "Set A");
    sumset->add_option("--b", o.b, "Set B");
    sumset->add_flag("--restricted", o.restricted, "Restricted product {a*theta(b) : a != b}");
    sumset->add_option("--theta", o.theta, "Automorphism descriptor (JSON)");
    common_flags(sumset, o);

    auto* verify = app.add_subcommand("verify", "Run a theorem verifier");
    verify->add_option("verifier", action, "cd | eh | chowla | vosper | inverse-dh | thm51 | thm61 | dupan | olson")
        ->required();
    task_flags(verify, o);
    verify->add_option("--n", o.n, "Modulus for thm51");
    verify->add_option("--m", o.m, "Modulus for chowla");
    verify->add_option("--p", o.p, "Prime for vosper / inverse-dh");
    verify->add_option("--samples", o.samples, "Random candidates for dupan");
    verify->add_option("--sample-size", o.sample_size, "Size of random candidates");
    verify->add_option("--seed", o.seed, "Sampling seed");
    common_flags(verify, o);

    auto* search = app.add_subcommand("search", "Enumerate and classify critical pairs");
    search->add_option("what", action, "critical")->required();
    task_flags(search, o);
    search->add_option("--bound", o.bound, "cd | eh")->check(CLI::IsMember({"cd", "eh"}));
    search->add_option("--csv", o.csv, "Write critical pairs as CSV");
    common_flags(search, o);

    auto* example = app.add_subcommand("example", "Reproduce a worked example");
    example->add_option("name", action, "eh-nonabelian")->required();
    common_flags(example, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*group)
            return run_group(o, action);
        if (*sumset)
            return run_sumset(o);
        if (*verify)
            return run_verify(o, action);
        if (*search)
            return run_search(o, action);
        if (*example)
            return run_example(o, action);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
