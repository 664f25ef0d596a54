#include "setadd/series.hpp"

#include "setadd/error.hpp"
#include "setadd/modarith.hpp"

#include <numeric>
#include <string>

namespace setadd {

Subset center(const Group& g, const SeriesOptions& opts)
{
    if (g.order() > opts.center_scan_cap)
        fail(ErrorKind::cap_exceeded, "group of order " + std::to_string(g.order()) +
                                          " is too large for an exhaustive center scan");
    Subset z(g);
    const auto& gens = g.generators();
    for (std::uint64_t i = 0; i < g.order(); ++i) {
        const auto x = static_cast<Elem>(i);
        bool central = true;
        for (Elem s : gens)
            if (g.mul(x, s) != g.mul(s, x)) {
                central = false;
                break;
            }
        if (central)
            z.insert(x);
    }
    return z;
}

bool is_subgroup(const Group& g, const Subset& s)
{
    require_same_group(g, s);
    if (!s.contains(Group::identity()))
        return false;
    const auto elems = s.elements();
    for (Elem a : elems)
        for (Elem b : elems)
            if (!s.contains(g.mul(a, b)))
                return false;
    return true;
}

Group quotient_group(const Group& g, const Subset& normal, const SeriesOptions& opts)
{
    require_same_group(g, normal);
    if (g.order() > opts.nilpotency_cap)
        fail(ErrorKind::cap_exceeded, "quotient construction is limited to groups of order " +
                                          std::to_string(opts.nilpotency_cap));
    if (!is_subgroup(g, normal))
        fail(ErrorKind::invalid_argument, "N is not a subgroup");
    const auto members = normal.elements();
    for (Elem s : g.generators()) {
        const Elem si = g.inverse(s);
        for (Elem x : members)
            if (!normal.contains(g.mul(g.mul(s, x), si)))
                fail(ErrorKind::invalid_argument, "N is not normal");
    }
    const std::uint64_t n = g.order();
    constexpr Elem unset = ~Elem{0};
    std::vector<Elem> label(n, unset);
    std::vector<Elem> reps;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (label[i] != unset)
            continue;
        const auto c = static_cast<Elem>(reps.size());
        reps.push_back(static_cast<Elem>(i));
        for (Elem x : members)
            label[g.mul(static_cast<Elem>(i), x)] = c;
    }
    const std::uint64_t q = reps.size();
    std::vector<Elem> table(q * q);
    for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b)
            table[a * q + b] = label[g.mul(reps[a], reps[b])];
    return make_table_group_unchecked(std::move(table), q);
}

namespace {

bool series_reaches_top(Group g, const SeriesOptions& opts)
{
    while (true) {
        const Subset z = center(g, opts);
        const std::size_t zs = z.size();
        if (zs == g.order())
            return true;
        if (zs == 1)
            return false;
        g = quotient_group(g, z, opts);
    }
}

std::optional<bool> decide(const GroupSpec& spec, const SeriesOptions& opts)
{
    ConstructOptions co;
    co.materialize_limit = 0;
    const Group g = Group::construct(spec, co);
    if (g.is_abelian())
        return true;
    if (g.order() <= opts.nilpotency_cap)
        return series_reaches_top(g, opts);
    if (const auto* d = std::get_if<DirectSpec>(&spec.node)) {
        const auto l = decide(d->factors[0], opts);
        const auto r = decide(d->factors[1], opts);
        if ((l && !*l) || (r && !*r))
            return false;
        if (l && r)
            return true;
        return std::nullopt;
    }
    if (const auto* s = std::get_if<SemidirectSpec>(&spec.node)) {
        // A nilpotent group is the product of its Sylow subgroups, so a
        // quotient of coprime order must act trivially.
        if (std::gcd(s->quotient, s->modulus) == 1)
            return false;
    }
    return std::nullopt;
}

} // namespace

bool is_nilpotent(const Group& g, const SeriesOptions& opts)
{
    if (g.is_abelian())
        return true;
    if (g.order() <= opts.nilpotency_cap)
        return series_reaches_top(g, opts);
    if (const auto r = decide(g.spec(), opts))
        return *r;
    fail(ErrorKind::cap_exceeded, "group of order " + std::to_string(g.order()) +
                                      " exceeds the nilpotency cap and no structural rule applies");
}

} // namespace setadd
