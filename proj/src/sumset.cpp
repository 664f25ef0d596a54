#include "setadd/sumset.hpp"

#include "setadd/error.hpp"

#include <algorithm>

namespace setadd {

namespace {

void require_nonempty(const Subset& a, const Subset& b)
{
    if (a.empty() || b.empty())
        fail(ErrorKind::invalid_argument, "bounds need nonempty sets");
}

// dst |= src rotated by r.
void or_rotated(const Subset& src, std::uint64_t n, std::uint64_t r, std::vector<std::uint64_t>& scratch,
                Subset& dst)
{
    rotate_bits(src.words(), n, r, scratch);
    auto w = dst.words();
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] |= scratch[i];
}

} // namespace

Subset product_set_generic(const Group& g, const Subset& a, const Subset& b)
{
    require_same_group(g, a);
    require_same_group(g, b);
    Subset out(g);
    const auto bs = b.elements();
    a.for_each([&](Elem x) {
        for (Elem y : bs)
            out.insert(g.mul(x, y));
    });
    return out;
}

Subset product_set(const Group& g, const Subset& a, const Subset& b)
{
    require_same_group(g, a);
    require_same_group(g, b);
    if (!g.is_cyclic())
        return product_set_generic(g, a, b);
    Subset out(g);
    std::vector<std::uint64_t> scratch(out.words().size());
    const Subset& rotated = a.size() >= b.size() ? a : b;
    const Subset& shifts = a.size() >= b.size() ? b : a;
    shifts.for_each([&](Elem s) { or_rotated(rotated, g.order(), s, scratch, out); });
    return out;
}

Subset restricted_product_set_generic(const Automorphism& theta, const Subset& a, const Subset& b)
{
    const Group& g = theta.group();
    require_same_group(g, a);
    require_same_group(g, b);
    Subset out(g);
    const auto bs = b.elements();
    a.for_each([&](Elem x) {
        for (Elem y : bs)
            if (x != y)
                out.insert(g.mul(x, theta.map(y)));
    });
    return out;
}

Subset restricted_product_set(const Automorphism& theta, const Subset& a, const Subset& b)
{
    const Group& g = theta.group();
    require_same_group(g, a);
    require_same_group(g, b);
    if (!g.is_cyclic())
        return restricted_product_set_generic(theta, a, b);
    // Union over b of (A \ {b}) + theta(b).
    Subset out(g);
    Subset rest = a;
    std::vector<std::uint64_t> scratch(out.words().size());
    b.for_each([&](Elem y) {
        const bool had = rest.contains(y);
        if (had)
            rest.erase(y);
        or_rotated(rest, g.order(), theta.map(y), scratch, out);
        if (had)
            rest.insert(y);
    });
    return out;
}

Subset image(const Automorphism& theta, const Subset& s)
{
    require_same_group(theta.group(), s);
    Subset out(theta.group());
    s.for_each([&](Elem x) { out.insert(theta.map(x)); });
    return out;
}

std::int64_t cd_bound(const Group& g, const Subset& a, const Subset& b)
{
    require_nonempty(a, b);
    const auto sum = static_cast<std::int64_t>(a.size() + b.size()) - 1;
    const auto p = minimal_torsion(g);
    return p ? std::min(static_cast<std::int64_t>(*p), sum) : sum;
}

std::int64_t eh_bound(const Automorphism& theta, const Subset& a, const Subset& b)
{
    require_nonempty(a, b);
    const auto sum = static_cast<std::int64_t>(a.size() + b.size()) - 3;
    const auto p = minimal_torsion(theta.group());
    return p ? std::min(static_cast<std::int64_t>(*p) - theta.delta(), sum) : sum;
}

bool is_critical_pair_cd(const Group& g, const Subset& a, const Subset& b)
{
    require_nonempty(a, b);
    return product_set(g, a, b).size() + 1 == a.size() + b.size();
}

bool is_critical_pair_eh(const Automorphism& theta, const Subset& a, const Subset& b)
{
    require_nonempty(a, b);
    return restricted_product_set(theta, a, b).size() + 3 == a.size() + b.size();
}

OlsonCheck olson_check(const Group& g, const Subset& a, const Subset& b)
{
    require_nonempty(a, b);
    OlsonCheck r;
    const Subset ab = product_set(g, a, b);
    r.product_size = ab.size();
    r.inequality = 2 * ab.size() >= 2 * a.size() + b.size();
    if (!r.inequality) {
        Subset binv(g);
        b.for_each([&](Elem x) { binv.insert(g.inverse(x)); });
        const Subset bb = product_set(g, binv, b);
        r.exceptional = product_set(g, ab, bb) == ab;
    }
    return r;
}

} // namespace setadd
