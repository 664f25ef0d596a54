#include "setadd/structure.hpp"

#include "setadd/error.hpp"
#include "setadd/modarith.hpp"
#include "setadd/morphism.hpp"
#include "setadd/series.hpp"
#include "setadd/sumset.hpp"

#include <algorithm>
#include <tuple>

namespace setadd {

std::string to_string(Taxonomy t)
{
    switch (t) {
    case Taxonomy::vosper:
        return "vosper";
    case Taxonomy::karolyi_cd:
        return "karolyi_cd";
    case Taxonomy::inverse_dh:
        return "inverse_dh";
    case Taxonomy::conjecture_ieh:
        return "conjecture_ieh";
    }
    return "?";
}

std::string to_string(ProgressionKind k)
{
    switch (k) {
    case ProgressionKind::arithmetic:
        return "arithmetic";
    case ProgressionKind::right_geometric:
        return "right_geometric";
    case ProgressionKind::left_geometric:
        return "left_geometric";
    }
    return "?";
}

std::vector<Elem> materialize(const Group& g, const ProgressionDescriptor& d)
{
    std::vector<Elem> out;
    out.reserve(d.length);
    Elem x = d.anchor;
    for (std::size_t i = 0; i < d.length; ++i) {
        out.push_back(x);
        x = d.kind == ProgressionKind::left_geometric ? g.mul(d.step, x) : g.mul(x, d.step);
    }
    return out;
}

bool describes(const Group& g, const ProgressionDescriptor& d, const Subset& s)
{
    if (d.length != s.size())
        return false;
    Subset seen(g);
    for (Elem x : materialize(g, d)) {
        if (!s.contains(x) || seen.contains(x))
            return false;
        seen.insert(x);
    }
    return true;
}

namespace {

void require_cyclic(const Group& g)
{
    if (!g.is_cyclic())
        fail(ErrorKind::invalid_argument, "arithmetic progressions are detected in cyclic groups only");
}

void require_prime_cyclic(const Group& g)
{
    require_cyclic(g);
    if (!is_prime(g.order()))
        fail(ErrorKind::invalid_argument, "modulus " + std::to_string(g.order()) + " is not prime");
}

std::vector<ProgressionDescriptor> geometric(const Group& g, const Subset& s, ProgressionKind kind)
{
    require_same_group(g, s);
    std::vector<ProgressionDescriptor> out;
    const auto elems = s.elements();
    if (elems.empty())
        return out;
    if (elems.size() == 1) {
        out.push_back({kind, elems[0], Group::identity(), 1});
        return out;
    }
    for (Elem anchor : elems) {
        const Elem inv = g.inverse(anchor);
        std::vector<Elem> steps;
        for (Elem next : elems) {
            if (next == anchor)
                continue;
            const Elem q = kind == ProgressionKind::left_geometric ? g.mul(next, inv) : g.mul(inv, next);
            ProgressionDescriptor d{kind, anchor, q, elems.size()};
            if (describes(g, d, s))
                steps.push_back(q);
        }
        std::sort(steps.begin(), steps.end());
        for (Elem q : steps)
            out.push_back({kind, anchor, q, elems.size()});
    }
    return out;
}

std::vector<Elem> shared_steps(const std::vector<ProgressionDescriptor>& x,
                               const std::vector<ProgressionDescriptor>& y)
{
    std::vector<Elem> a, b, out;
    for (const auto& d : x)
        a.push_back(d.step);
    for (const auto& d : y)
        b.push_back(d.step);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

const ProgressionDescriptor* first_with_step(const std::vector<ProgressionDescriptor>& v, Elem step)
{
    for (const auto& d : v)
        if (d.step == step)
            return &d;
    return nullptr;
}

CriticalPairClassification make(Taxonomy t, std::string label)
{
    CriticalPairClassification c;
    c.taxonomy = t;
    c.case_label = std::move(label);
    return c;
}

bool canonical_step_less(std::uint64_t n, Elem x, Elem y)
{
    const bool xs = x <= n / 2, ys = y <= n / 2;
    if (xs != ys)
        return xs;
    return x < y;
}

} // namespace

std::vector<ProgressionDescriptor> arithmetic_progression_descriptors(const Group& g, const Subset& a)
{
    require_cyclic(g);
    require_same_group(g, a);
    const std::uint64_t n = g.order();
    std::vector<ProgressionDescriptor> out;
    const auto elems = a.elements();
    if (elems.empty())
        return out;
    if (elems.size() == 1) {
        out.push_back({ProgressionKind::arithmetic, elems[0], static_cast<Elem>(1 % n), 1});
        return out;
    }
    for (Elem anchor : elems)
        for (Elem next : elems) {
            if (next == anchor)
                continue;
            const auto d = static_cast<Elem>((next + n - anchor) % n);
            ProgressionDescriptor desc{ProgressionKind::arithmetic, anchor, d, elems.size()};
            if (describes(g, desc, a))
                out.push_back(desc);
        }
    std::sort(out.begin(), out.end(), [n](const ProgressionDescriptor& x, const ProgressionDescriptor& y) {
        if (x.step != y.step)
            return canonical_step_less(n, x.step, y.step);
        return x.anchor < y.anchor;
    });
    return out;
}

std::vector<ProgressionDescriptor> right_geometric_descriptors(const Group& g, const Subset& a)
{
    return geometric(g, a, ProgressionKind::right_geometric);
}

std::vector<ProgressionDescriptor> left_geometric_descriptors(const Group& g, const Subset& b)
{
    return geometric(g, b, ProgressionKind::left_geometric);
}

std::optional<ProgressionDescriptor> right_geometric_descriptor(const Group& g, const Subset& a)
{
    auto all = right_geometric_descriptors(g, a);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

std::optional<ProgressionDescriptor> left_geometric_descriptor(const Group& g, const Subset& b)
{
    auto all = left_geometric_descriptors(g, b);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

bool shares_endpoints(const Group& g, const ProgressionDescriptor& right, const ProgressionDescriptor& left)
{
    if (right.step != left.step)
        fail(ErrorKind::invalid_argument, "shares_endpoints needs descriptors with the same step");
    if (right.anchor != left.anchor)
        return false;
    const auto k = static_cast<std::int64_t>(right.length);
    const auto l = static_cast<std::int64_t>(left.length);
    const Elem a = right.anchor;
    return g.mul(a, g.power(right.step, k - 1)) == g.mul(g.power(left.step, l - 1), a);
}

std::optional<CriticalPairClassification> vosper_classify(const Group& g, const Subset& a, const Subset& b)
{
    require_prime_cyclic(g);
    if (!is_critical_pair_cd(g, a, b))
        return std::nullopt;
    const std::uint64_t p = g.order();
    if (a.size() == 1 || b.size() == 1)
        return make(Taxonomy::vosper, "i");
    const Subset sum = product_set(g, a, b);
    if (sum.size() == p)
        return make(Taxonomy::vosper, "ii");
    if (sum.size() + 1 == p) {
        const Elem c = sum.complement().front();
        Subset c_minus_a(g);
        a.for_each([&](Elem x) { c_minus_a.insert(static_cast<Elem>((c + p - x) % p)); });
        if (c_minus_a.complement() == b) {
            auto r = make(Taxonomy::vosper, "iii");
            r.witness.complement = c;
            return r;
        }
    }
    const auto da = arithmetic_progression_descriptors(g, a);
    const auto db = arithmetic_progression_descriptors(g, b);
    auto steps = shared_steps(da, db);
    if (!steps.empty()) {
        std::sort(steps.begin(), steps.end(), [p](Elem x, Elem y) { return canonical_step_less(p, x, y); });
        auto r = make(Taxonomy::vosper, "iv");
        r.witness.progression_a = *first_with_step(da, steps.front());
        r.witness.progression_b = *first_with_step(db, steps.front());
        return r;
    }
    return std::nullopt;
}

namespace {

// Case (iii) search. u and v may be fixed to the least members of A and B:
// replacing u by uf (f in F) is absorbed by z, and likewise for v.
std::optional<CriticalPairClassification> karolyi_case_three(const Group& g, const Subset& a, const Subset& b,
                                                             std::uint64_t p, const KarolyiOptions& opts)
{
    if (g.order() > opts.subgroup_search_cap)
        fail(ErrorKind::cap_exceeded, "Karolyi case (iii) subgroup search is capped at order " +
                                          std::to_string(opts.subgroup_search_cap));
    const Elem u = a.front(), v = b.front();
    const Elem u_inv = g.inverse(u), v_inv = g.inverse(v);
    std::vector<Subset> seen;
    for (std::uint64_t i = 1; i < g.order(); ++i) {
        const auto gen = static_cast<Elem>(i);
        if (g.element_order(gen) != p)
            continue;
        Subset f(g);
        for (Elem x = Group::identity();;) {
            f.insert(x);
            x = g.mul(x, gen);
            if (x == Group::identity())
                break;
        }
        if (std::find(seen.begin(), seen.end(), f) != seen.end())
            continue;
        seen.push_back(f);
        bool a_in = true, b_in = true;
        a.for_each([&](Elem x) { a_in = a_in && f.contains(g.mul(u_inv, x)); });
        b.for_each([&](Elem y) { b_in = b_in && f.contains(g.mul(y, v_inv)); });
        if (!a_in || !b_in)
            continue;
        const auto fe = f.elements();
        for (Elem z : fe) {
            Subset removed(g);
            b.for_each([&](Elem y) { removed.insert(g.mul(g.mul(z, v), g.inverse(y))); });
            Subset candidate(g);
            for (Elem x : fe)
                if (!removed.contains(x))
                    candidate.insert(g.mul(u, x));
            if (candidate == a) {
                auto r = make(Taxonomy::karolyi_cd, "iii");
                r.witness.subgroup_generator = gen;
                r.witness.u = u;
                r.witness.v = v;
                r.witness.z = z;
                return r;
            }
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<CriticalPairClassification> karolyi_cd_classify(const Group& g, const Subset& a, const Subset& b,
                                                              const KarolyiOptions& opts)
{
    require_same_group(g, a);
    require_same_group(g, b);
    if (a.empty() || b.empty())
        fail(ErrorKind::invalid_argument, "classification needs nonempty sets");
    const std::uint64_t k = a.size(), l = b.size();
    const auto p = minimal_torsion(g);
    if (p && k + l > *p)
        return std::nullopt;
    if (product_set(g, a, b).size() != k + l - 1)
        return std::nullopt;
    if (k == 1 || l == 1)
        return make(Taxonomy::karolyi_cd, "i");
    const auto ra = right_geometric_descriptors(g, a);
    const auto lb = left_geometric_descriptors(g, b);
    const auto steps = shared_steps(ra, lb);
    if (!steps.empty()) {
        auto r = make(Taxonomy::karolyi_cd, "ii");
        r.witness.progression_a = *first_with_step(ra, steps.front());
        r.witness.progression_b = *first_with_step(lb, steps.front());
        return r;
    }
    if (p && k + l == *p)
        return karolyi_case_three(g, a, b, *p, opts);
    return std::nullopt;
}

std::optional<CriticalPairClassification> inverse_dh_classify(const Group& g, const Subset& a)
{
    require_prime_cyclic(g);
    require_same_group(g, a);
    const std::uint64_t p = g.order();
    const std::uint64_t k = a.size();
    if (k < 2 || p + 2 < 2 * k)
        return std::nullopt;
    const auto iota = Automorphism::identity(g);
    if (restricted_product_set(iota, a, a).size() + 3 != 2 * k)
        return std::nullopt;
    if (k == 2 || k == 3)
        return make(Taxonomy::inverse_dh, "i");
    if (k == 4) {
        const auto elems = a.elements();
        for (Elem x : elems)
            for (std::uint64_t d = 1; d < p; ++d)
                for (Elem c : elems) {
                    Subset s(g);
                    s.insert(x);
                    s.insert(static_cast<Elem>((x + d) % p));
                    s.insert(c);
                    s.insert(static_cast<Elem>((c + d) % p));
                    if (s == a) {
                        auto r = make(Taxonomy::inverse_dh, "ii");
                        r.witness.quad = {x, static_cast<Elem>(d), c};
                        return r;
                    }
                }
        return std::nullopt;
    }
    const auto ap = arithmetic_progression_descriptors(g, a);
    if (ap.empty())
        return std::nullopt;
    auto r = make(Taxonomy::inverse_dh, "iii");
    r.witness.progression_a = ap.front();
    return r;
}

bool conjecture_ieh_applies(const Group& g, const Subset& a, const Subset& b)
{
    require_same_group(g, a);
    require_same_group(g, b);
    const std::uint64_t k = a.size(), l = b.size();
    if (k < 3 || l < 3)
        return false;
    const auto p = minimal_torsion(g);
    if (p && k + l - 3 >= *p)
        return false;
    if (is_nilpotent(g))
        return false;
    return is_critical_pair_eh(Automorphism::identity(g), a, b);
}

std::optional<CriticalPairClassification> conjecture_ieh_classify(const Group& g, const Subset& a,
                                                                  const Subset& b)
{
    if (!conjecture_ieh_applies(g, a, b))
        return std::nullopt;
    const auto ra = right_geometric_descriptors(g, a);
    const auto lb = left_geometric_descriptors(g, b);
    for (const auto& r : ra)
        for (const auto& l : lb)
            if (r.step == l.step && shares_endpoints(g, r, l)) {
                auto c = make(Taxonomy::conjecture_ieh, "shared_endpoints");
                c.witness.progression_a = r;
                c.witness.progression_b = l;
                return c;
            }
    return std::nullopt;
}

bool verify_classification(const Group& g, const Subset& a, const Subset& b, const CriticalPairClassification& c)
{
    const auto& w = c.witness;
    const std::uint64_t k = a.size(), l = b.size();
    auto both_progressions = [&](ProgressionKind ka, ProgressionKind kb) {
        return w.progression_a && w.progression_b && w.progression_a->kind == ka && w.progression_b->kind == kb &&
               w.progression_a->step == w.progression_b->step && describes(g, *w.progression_a, a) &&
               describes(g, *w.progression_b, b);
    };
    switch (c.taxonomy) {
    case Taxonomy::vosper: {
        if (!is_critical_pair_cd(g, a, b))
            return false;
        const std::uint64_t p = g.order();
        if (c.case_label == "i")
            return k == 1 || l == 1;
        if (c.case_label == "ii")
            return product_set(g, a, b).size() == p;
        if (c.case_label == "iii") {
            if (!w.complement)
                return false;
            const Subset sum = product_set(g, a, b);
            if (sum.size() + 1 != p || sum.contains(*w.complement))
                return false;
            Subset cma(g);
            a.for_each([&](Elem x) { cma.insert(static_cast<Elem>((*w.complement + p - x) % p)); });
            return cma.complement() == b;
        }
        if (c.case_label == "iv")
            return both_progressions(ProgressionKind::arithmetic, ProgressionKind::arithmetic);
        return false;
    }
    case Taxonomy::karolyi_cd: {
        if (product_set(g, a, b).size() + 1 != k + l)
            return false;
        if (c.case_label == "i")
            return k == 1 || l == 1;
        if (c.case_label == "ii")
            return both_progressions(ProgressionKind::right_geometric, ProgressionKind::left_geometric);
        if (c.case_label == "iii") {
            if (!w.subgroup_generator || !w.u || !w.v || !w.z)
                return false;
            const auto p = minimal_torsion(g);
            if (!p || g.element_order(*w.subgroup_generator) != *p || k + l != *p)
                return false;
            Subset f(g);
            for (Elem x = 0;;) {
                f.insert(x);
                x = g.mul(x, *w.subgroup_generator);
                if (x == 0)
                    break;
            }
            if (!f.contains(*w.z))
                return false;
            bool ok = true;
            a.for_each([&](Elem x) { ok = ok && f.contains(g.mul(g.inverse(*w.u), x)); });
            b.for_each([&](Elem y) { ok = ok && f.contains(g.mul(y, g.inverse(*w.v))); });
            if (!ok)
                return false;
            Subset removed(g);
            b.for_each([&](Elem y) { removed.insert(g.mul(g.mul(*w.z, *w.v), g.inverse(y))); });
            Subset cand(g);
            f.for_each([&](Elem x) {
                if (!removed.contains(x))
                    cand.insert(g.mul(*w.u, x));
            });
            return cand == a;
        }
        return false;
    }
    case Taxonomy::inverse_dh: {
        if (!(a == b))
            return false;
        const auto iota = Automorphism::identity(g);
        if (restricted_product_set(iota, a, a).size() + 3 != 2 * k)
            return false;
        if (c.case_label == "i")
            return k == 2 || k == 3;
        if (c.case_label == "ii") {
            if (!w.quad || k != 4)
                return false;
            const std::uint64_t p = g.order();
            const auto [x, d, cc] = *w.quad;
            Subset s(g);
            s.insert(x);
            s.insert(static_cast<Elem>((x + d) % p));
            s.insert(cc);
            s.insert(static_cast<Elem>((cc + d) % p));
            return s == a;
        }
        if (c.case_label == "iii")
            return k >= 5 && w.progression_a && describes(g, *w.progression_a, a);
        return false;
    }
    case Taxonomy::conjecture_ieh:
        return is_critical_pair_eh(Automorphism::identity(g), a, b) &&
               both_progressions(ProgressionKind::right_geometric, ProgressionKind::left_geometric) &&
               shares_endpoints(g, *w.progression_a, *w.progression_b);
    }
    return false;
}

} // namespace setadd
