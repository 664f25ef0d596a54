#include "setadd/io.hpp"

#include "group_node.hpp"
#include "setadd/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace setadd {

using nlohmann::json;
using detail::Node;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::parse, what); }

std::int64_t as_int(const json& j, const char* what)
{
    if (!j.is_number_integer())
        parse_fail(std::string("expected an integer for ") + what);
    return j.get<std::int64_t>();
}

std::uint64_t as_positive(const json& j, const char* what)
{
    const auto v = as_int(j, what);
    if (v < 1)
        fail(ErrorKind::invalid_spec, std::string(what) + " must be positive");
    return static_cast<std::uint64_t>(v);
}

std::vector<std::vector<std::int64_t>> as_matrix(const json& j, const char* what)
{
    if (!j.is_array())
        parse_fail(std::string("expected a matrix for ") + what);
    std::vector<std::vector<std::int64_t>> m;
    for (const auto& row : j) {
        if (!row.is_array())
            parse_fail(std::string("expected matrix rows for ") + what);
        auto& r = m.emplace_back();
        for (const auto& v : row)
            r.push_back(as_int(v, what));
    }
    return m;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::uint64_t parse_uint(std::string_view s, const char* what)
{
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        parse_fail(std::string("cannot parse ") + what + " '" + std::string(s) + "'");
    return v;
}

json parse_json_text(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(std::string("malformed JSON: ") + e.what());
    }
}

Elem node_element(const Node& node, const json& j)
{
    switch (node.kind) {
    case Node::Kind::cyclic:
    case Node::Kind::table: {
        const auto v = as_int(j, "element");
        if (v < 0 || static_cast<std::uint64_t>(v) >= node.order)
            fail(ErrorKind::invalid_argument, "element component " + std::to_string(v) + " out of range");
        return static_cast<Elem>(v);
    }
    case Node::Kind::direct: {
        if (!j.is_array() || j.size() != 2)
            parse_fail("direct-product elements are [left, right]");
        return static_cast<Elem>(node_element(*node.left, j[0]) + node.left->order * node_element(*node.right, j[1]));
    }
    case Node::Kind::semidirect: {
        if (!j.is_array() || j.size() != 2)
            parse_fail("semidirect elements are [[x...], z]");
        std::vector<std::uint64_t> digits;
        if (j[0].is_array()) {
            for (const auto& x : j[0])
                digits.push_back(static_cast<std::uint64_t>(as_int(x, "element")));
        } else {
            digits.push_back(static_cast<std::uint64_t>(as_int(j[0], "element")));
        }
        if (digits.size() != node.rank)
            parse_fail("semidirect element has the wrong number of normal coordinates");
        for (auto d : digits)
            if (d >= node.modulus)
                fail(ErrorKind::invalid_argument, "normal coordinate out of range");
        const auto z = as_int(j[1], "element");
        if (z < 0 || static_cast<std::uint64_t>(z) >= node.quotient)
            fail(ErrorKind::invalid_argument, "quotient coordinate out of range");
        return static_cast<Elem>(node.encode_normal(digits.data()) + node.normal_order * static_cast<std::uint64_t>(z));
    }
    }
    return 0;
}

ojson node_to_json(const Node& node, std::uint64_t idx)
{
    switch (node.kind) {
    case Node::Kind::cyclic:
    case Node::Kind::table:
        return idx;
    case Node::Kind::direct:
        return ojson::array({node_to_json(*node.left, idx % node.left->order),
                             node_to_json(*node.right, idx / node.left->order)});
    case Node::Kind::semidirect: {
        std::vector<std::uint64_t> digits(node.rank);
        node.decode_normal(idx % node.normal_order, digits.data());
        return ojson::array({ojson(digits), idx / node.normal_order});
    }
    }
    return idx;
}

SizeRange range_from_json(const json& j)
{
    if (j.is_number_integer()) {
        const auto v = static_cast<std::size_t>(as_positive(j, "cardinality"));
        return {v, v};
    }
    if (j.is_array() && j.size() == 2)
        return {static_cast<std::size_t>(as_positive(j[0], "cardinality")),
                static_cast<std::size_t>(as_positive(j[1], "cardinality"))};
    if (j.is_string())
        return parse_size_range(j.get<std::string>());
    parse_fail("cardinality range must be an integer, [min, max] or \"min..max\"");
}

template <typename E>
E enum_from(const json& j, std::initializer_list<std::pair<const char*, E>> table, const char* what)
{
    if (!j.is_string())
        parse_fail(std::string("expected a string for ") + what);
    const auto s = j.get<std::string>();
    for (const auto& [name, v] : table)
        if (s == name)
            return v;
    parse_fail(std::string("unknown ") + what + " '" + s + "'");
}

std::vector<Elem> elems_from_json(const Group* g, const json& j)
{
    std::vector<Elem> out;
    if (!j.is_array())
        parse_fail("expected an element list");
    for (const auto& e : j) {
        if (g)
            out.push_back(element_from_json(*g, e));
        else
            out.push_back(static_cast<Elem>(as_int(e, "element")));
    }
    return out;
}

} // namespace

GroupSpec group_spec_from_json(const json& j)
{
    if (j.is_string())
        return group_spec_from_json(parse_json_text(j.get<std::string>()));
    if (!j.is_object() || j.size() != 1)
        parse_fail("group spec must be an object with one of cyclic, direct, semidirect, table");
    if (j.contains("cyclic"))
        return GroupSpec::cyclic(as_positive(j["cyclic"], "cyclic order"));
    if (j.contains("direct")) {
        const auto& d = j["direct"];
        if (!d.is_array() || d.size() != 2)
            fail(ErrorKind::invalid_spec, "direct product needs exactly two factors");
        return GroupSpec::direct(group_spec_from_json(d[0]), group_spec_from_json(d[1]));
    }
    if (j.contains("semidirect")) {
        const auto& s = j["semidirect"];
        if (!s.is_object() || !s.contains("normal") || !s.contains("quotient") || !s.contains("matrix"))
            parse_fail("semidirect spec needs normal, quotient and matrix");
        const auto& n = s["normal"];
        if (!n.is_object() || !n.contains("modulus") || !n.contains("rank"))
            parse_fail("semidirect normal part needs modulus and rank");
        return GroupSpec::semidirect(as_positive(n["modulus"], "modulus"),
                                     static_cast<std::size_t>(as_positive(n["rank"], "rank")),
                                     as_positive(s["quotient"], "quotient"), as_matrix(s["matrix"], "matrix"));
    }
    if (j.contains("table"))
        return GroupSpec::table(as_matrix(j["table"], "table"));
    parse_fail("group spec must be one of cyclic, direct, semidirect, table");
}

ojson to_json(const GroupSpec& spec)
{
    return std::visit(
        [](const auto& s) -> ojson {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CyclicSpec>) {
                return {{"cyclic", s.order}};
            } else if constexpr (std::is_same_v<T, DirectSpec>) {
                ojson arr = ojson::array();
                for (const auto& f : s.factors)
                    arr.push_back(to_json(f));
                return {{"direct", arr}};
            } else if constexpr (std::is_same_v<T, SemidirectSpec>) {
                ojson body;
                body["normal"] = {{"modulus", s.modulus}, {"rank", s.rank}};
                body["quotient"] = s.quotient;
                body["matrix"] = s.matrix;
                return {{"semidirect", body}};
            } else {
                return {{"table", s.table}};
            }
        },
        spec.node);
}

AutomorphismSpec automorphism_spec_from_json(const json& j)
{
    if (j.is_string())
        return automorphism_spec_from_json(parse_json_text(j.get<std::string>()));
    if (!j.is_object())
        parse_fail("automorphism spec must be an object");
    if (j.contains("identity"))
        return AutomorphismSpec::identity();
    if (j.contains("multiplier"))
        return AutomorphismSpec::times(as_int(j["multiplier"], "multiplier"));
    if (j.contains("matrix")) {
        std::vector<std::string> path;
        if (j.contains("target")) {
            const auto& t = j["target"];
            if (!t.is_array())
                parse_fail("automorphism target must be a path array");
            for (const auto& step : t)
                path.push_back(step.is_string() ? step.get<std::string>() : std::to_string(as_int(step, "target")));
        }
        return AutomorphismSpec::linear(as_matrix(j["matrix"], "matrix"), std::move(path));
    }
    if (j.contains("permutation")) {
        std::vector<std::int64_t> p;
        for (const auto& v : j["permutation"])
            p.push_back(as_int(v, "permutation"));
        return AutomorphismSpec::perm(std::move(p));
    }
    parse_fail("automorphism spec must be one of identity, multiplier, matrix, permutation");
}

ojson to_json(const AutomorphismSpec& spec)
{
    switch (spec.form) {
    case AutomorphismSpec::Form::identity:
        return {{"identity", true}};
    case AutomorphismSpec::Form::multiplier:
        return {{"multiplier", spec.multiplier}};
    case AutomorphismSpec::Form::matrix: {
        ojson j;
        j["matrix"] = spec.matrix;
        j["target"] = spec.target;
        return j;
    }
    case AutomorphismSpec::Form::permutation:
        return {{"permutation", spec.permutation}};
    }
    return {};
}

Elem element_from_json(const Group& g, const json& j)
{
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0 || static_cast<std::uint64_t>(v) >= g.order())
            fail(ErrorKind::invalid_argument,
                 "element index " + std::to_string(v) + " out of range for group of order " + std::to_string(g.order()));
        return static_cast<Elem>(v);
    }
    return node_element(g.root(), j);
}

ojson element_to_json(const Group& g, Elem a) { return node_to_json(g.root(), a); }

Subset parse_subset(const Group& g, std::string_view literal)
{
    const auto s = trim(literal);
    Subset out(g);
    if (s.empty())
        return out;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        std::uint64_t bit = 0;
        for (std::size_t i = s.size(); i-- > 2; bit += 4) {
            const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
            int v;
            if (c >= '0' && c <= '9')
                v = c - '0';
            else if (c >= 'a' && c <= 'f')
                v = c - 'a' + 10;
            else
                parse_fail("bad hex digit in subset literal");
            for (int b = 0; b < 4; ++b)
                if (v >> b & 1) {
                    if (bit + b >= g.order())
                        fail(ErrorKind::invalid_argument, "hex subset has bits beyond the group order");
                    out.insert(static_cast<Elem>(bit + b));
                }
        }
        return out;
    }
    if (s.front() == '[') {
        std::size_t start = 0;
        while (start <= s.size()) {
            auto end = s.find(';', start);
            if (end == std::string_view::npos)
                end = s.size();
            const auto part = trim(s.substr(start, end - start));
            if (!part.empty())
                out.insert(element_from_json(g, parse_json_text(part)));
            start = end + 1;
        }
        return out;
    }
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(',', start);
        if (end == std::string_view::npos)
            end = s.size();
        const auto part = trim(s.substr(start, end - start));
        if (!part.empty()) {
            const auto v = parse_uint(part, "element");
            if (v >= g.order())
                fail(ErrorKind::invalid_argument, "element index " + std::to_string(v) +
                                                      " out of range for group of order " + std::to_string(g.order()));
            out.insert(static_cast<Elem>(v));
        }
        start = end + 1;
    }
    return out;
}

Subset subset_from_json(const Group& g, const json& j)
{
    if (j.is_string())
        return parse_subset(g, j.get<std::string>());
    Subset out(g);
    for (Elem e : elems_from_json(&g, j))
        out.insert(e);
    return out;
}

SizeRange parse_size_range(std::string_view text)
{
    const auto s = trim(text);
    const auto dots = s.find("..");
    if (dots == std::string_view::npos) {
        const auto v = parse_uint(s, "cardinality");
        return {v, v};
    }
    return {parse_uint(s.substr(0, dots), "cardinality"), parse_uint(s.substr(dots + 2), "cardinality")};
}

ojson to_json(const GeometricSlice& slice)
{
    ojson j;
    j["ratios"] = slice.ratios;
    j["a_begin"] = slice.a_begin;
    j["a_count"] = slice.a_count;
    j["b_begin"] = slice.b_begin;
    j["b_count"] = slice.b_count;
    ojson extra = ojson::array();
    for (const auto& t : slice.extra_triples)
        extra.push_back(ojson::array({t[0], t[1], t[2]}));
    j["extra_triples"] = extra;
    return j;
}

GeometricSlice slice_from_json(const json& j)
{
    GeometricSlice s;
    if (!j.is_object())
        parse_fail("slice must be an object");
    if (j.contains("ratios"))
        s.ratios = elems_from_json(nullptr, j["ratios"]);
    if (j.contains("a_begin"))
        s.a_begin = static_cast<Elem>(as_int(j["a_begin"], "a_begin"));
    if (j.contains("a_count"))
        s.a_count = static_cast<std::uint64_t>(as_int(j["a_count"], "a_count"));
    if (j.contains("b_begin"))
        s.b_begin = static_cast<Elem>(as_int(j["b_begin"], "b_begin"));
    if (j.contains("b_count"))
        s.b_count = static_cast<std::uint64_t>(as_int(j["b_count"], "b_count"));
    if (j.contains("extra_triples"))
        for (const auto& t : j["extra_triples"]) {
            if (!t.is_array() || t.size() != 3)
                parse_fail("extra triples are [a, q, b]");
            s.extra_triples.push_back({static_cast<Elem>(as_int(t[0], "a")), static_cast<Elem>(as_int(t[1], "q")),
                                       static_cast<Elem>(as_int(t[2], "b"))});
        }
    return s;
}

SearchTask task_from_json(const json& j)
{
    if (j.is_string())
        return task_from_json(parse_json_text(j.get<std::string>()));
    if (!j.is_object() || !j.contains("group"))
        parse_fail("task descriptor needs a group");
    SearchTask t;
    t.group = group_spec_from_json(j["group"]);
    if (j.contains("theta"))
        t.theta = automorphism_spec_from_json(j["theta"]);
    if (j.contains("k"))
        t.k = range_from_json(j["k"]);
    if (j.contains("l"))
        t.l = range_from_json(j["l"]);
    if (j.contains("mode"))
        t.mode = enum_from<SearchMode>(j["mode"],
                                       {{"all_pairs", SearchMode::all_pairs},
                                        {"ap_pairs_same_difference", SearchMode::ap_pairs_same_difference},
                                        {"geometric_pairs_same_ratio", SearchMode::geometric_pairs_same_ratio},
                                        {"self_pairs", SearchMode::self_pairs},
                                        {"supplied_candidates", SearchMode::supplied_candidates}},
                                       "mode");
    if (j.contains("normalization"))
        t.normalization = enum_from<Normalization>(
            j["normalization"], {{"none", Normalization::none}, {"affine", Normalization::affine}}, "normalization");
    if (j.contains("filter"))
        t.filter = enum_from<PairFilter>(j["filter"], {{"none", PairFilter::none}, {"chowla", PairFilter::chowla}},
                                         "filter");
    if (j.contains("shard")) {
        const auto& s = j["shard"];
        if (!s.is_array() || s.size() != 2)
            parse_fail("shard is [index, total]");
        t.shard_index = static_cast<std::uint32_t>(as_int(s[0], "shard index"));
        t.shard_total = static_cast<std::uint32_t>(as_positive(s[1], "shard total"));
    }
    if (j.contains("candidates")) {
        const Group g = Group::construct(t.group);
        for (const auto& c : j["candidates"]) {
            if (!c.is_array() || c.size() != 2)
                parse_fail("candidates are [A, B] pairs");
            t.candidates.emplace_back(subset_from_json(g, c[0]).elements(), subset_from_json(g, c[1]).elements());
        }
    }
    if (j.contains("slice"))
        t.slice = slice_from_json(j["slice"]);
    if (j.contains("cap_override"))
        t.cap_override = j["cap_override"].get<bool>();
    return t;
}

ojson to_json(const SearchTask& t)
{
    ojson j;
    j["group"] = to_json(t.group);
    j["theta"] = to_json(t.theta);
    j["k"] = ojson::array({t.k.min, t.k.max});
    j["l"] = ojson::array({t.l.min, t.l.max});
    j["mode"] = to_string(t.mode);
    j["normalization"] = to_string(t.normalization);
    j["filter"] = to_string(t.filter);
    j["shard"] = ojson::array({t.shard_index, t.shard_total});
    if (!t.candidates.empty()) {
        ojson c = ojson::array();
        for (const auto& [a, b] : t.candidates)
            c.push_back(ojson::array({a, b}));
        j["candidates"] = c;
    }
    if (t.slice)
        j["slice"] = to_json(*t.slice);
    j["cap_override"] = t.cap_override;
    return j;
}

ojson to_json(const Group& g, const ProgressionDescriptor& d)
{
    ojson j;
    j["kind"] = to_string(d.kind);
    j["anchor"] = element_to_json(g, d.anchor);
    j["step"] = element_to_json(g, d.step);
    j["length"] = d.length;
    return j;
}

ojson to_json(const Group& g, const CriticalPairClassification& c, bool verified)
{
    ojson j;
    j["taxonomy"] = to_string(c.taxonomy);
    j["case"] = c.case_label;
    ojson w = ojson::object();
    const auto& x = c.witness;
    if (x.progression_a)
        w["progression_a"] = to_json(g, *x.progression_a);
    if (x.progression_b)
        w["progression_b"] = to_json(g, *x.progression_b);
    if (x.complement)
        w["complement"] = element_to_json(g, *x.complement);
    if (x.subgroup_generator)
        w["subgroup_generator"] = element_to_json(g, *x.subgroup_generator);
    if (x.u)
        w["u"] = element_to_json(g, *x.u);
    if (x.v)
        w["v"] = element_to_json(g, *x.v);
    if (x.z)
        w["z"] = element_to_json(g, *x.z);
    if (x.quad)
        w["a_d_c"] = ojson::array({(*x.quad)[0], (*x.quad)[1], (*x.quad)[2]});
    j["witnesses"] = w;
    j["verified"] = verified;
    return j;
}

std::string hex_of(const std::vector<Elem>& elems, std::uint64_t universe)
{
    std::vector<std::uint64_t> words((universe + 63) / 64, 0);
    for (Elem e : elems)
        words[e / 64] |= std::uint64_t{1} << (e % 64);
    std::string out = "0x";
    bool leading = true;
    static const char* digits = "0123456789abcdef";
    for (std::size_t w = words.size(); w-- > 0;)
        for (int nib = 15; nib >= 0; --nib) {
            const auto v = static_cast<unsigned>((words[w] >> (nib * 4)) & 0xf);
            if (leading && v == 0)
                continue;
            leading = false;
            out += digits[v];
        }
    if (leading)
        out += '0';
    return out;
}

ojson to_json(const PairRecord& r)
{
    ojson j;
    j["a"] = r.a;
    j["b"] = r.b;
    if (r.universe <= 1024) {
        j["a_hex"] = hex_of(r.a, r.universe);
        j["b_hex"] = hex_of(r.b, r.universe);
    }
    j["size_a"] = r.a.size();
    j["size_b"] = r.b.size();
    j["product_size"] = r.product_size;
    j["bound"] = r.bound;
    j["case"] = r.case_label;
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

ojson deterministic_payload(const VerificationReport& r)
{
    ojson j;
    j["verifier"] = r.verifier;
    j["task"] = r.task;
    j["instances_checked"] = r.instances_checked;
    j["instances_covered"] = r.instances_covered;
    j["critical_pairs_found"] = r.critical_pairs_found;
    auto list = [](const std::vector<PairRecord>& v) {
        ojson a = ojson::array();
        for (const auto& x : v)
            a.push_back(to_json(x));
        return a;
    };
    j["critical_samples"] = list(r.critical_samples);
    j["violation_count"] = r.violation_count;
    j["bound_violations"] = list(r.bound_violations);
    j["failure_count"] = r.failure_count;
    j["classification_failures"] = list(r.classification_failures);
    ojson cases = ojson::object();
    for (const auto& [k, v] : r.case_counts)
        cases[k] = v;
    j["case_counts"] = cases;
    j["notes"] = r.notes;
    j["details"] = r.details;
    return j;
}

ojson to_json(const VerificationReport& r)
{
    ojson j = deterministic_payload(r);
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

std::string critical_pairs_csv(const std::vector<PairRecord>& records)
{
    std::ostringstream os;
    os << "A-bits-hex,B-bits-hex,|A|,|B|,|product|,case_label\n";
    for (const auto& r : records)
        os << hex_of(r.a, r.universe) << ',' << hex_of(r.b, r.universe) << ',' << r.a.size() << ',' << r.b.size()
           << ',' << r.product_size << ',' << r.case_label << '\n';
    return os.str();
}

} // namespace setadd
