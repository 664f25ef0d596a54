#include "setadd/subset.hpp"

#include "setadd/error.hpp"

#include <algorithm>
#include <cstdio>

namespace setadd {

Subset Subset::of(const Group& g, std::span<const Elem> elems)
{
    Subset s(g);
    for (Elem a : elems) {
        g.check(a);
        s.insert(a);
    }
    return s;
}

Subset Subset::full(const Group& g)
{
    Subset s(g);
    for (std::uint64_t a = 0; a < g.order(); ++a)
        s.insert(static_cast<Elem>(a));
    return s;
}

Subset Subset::from_mask(const Group& g, std::uint64_t mask)
{
    if (g.order() > 64)
        fail(ErrorKind::invalid_argument, "mask subsets need a group of order at most 64");
    if (g.order() < 64 && (mask >> g.order()) != 0)
        fail(ErrorKind::invalid_argument, "mask has bits beyond the group order");
    Subset s(g);
    s.words_[0] = mask;
    return s;
}

std::vector<Elem> Subset::elements() const
{
    std::vector<Elem> out;
    out.reserve(size());
    for_each([&](Elem a) { out.push_back(a); });
    return out;
}

Elem Subset::front() const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w])
            return static_cast<Elem>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
    fail(ErrorKind::invalid_argument, "empty subset has no least element");
}

std::string Subset::to_hex() const
{
    std::string out = "0x";
    bool leading = true;
    for (std::size_t w = words_.size(); w-- > 0;) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(words_[w]));
        std::string chunk(buf);
        if (leading) {
            const auto nz = chunk.find_first_not_of('0');
            if (nz == std::string::npos)
                continue;
            chunk = chunk.substr(nz);
            leading = false;
        }
        out += chunk;
    }
    if (leading)
        out += '0';
    return out;
}

Subset& Subset::operator|=(const Subset& o)
{
    for (std::size_t i = 0; i < words_.size() && i < o.words_.size(); ++i)
        words_[i] |= o.words_[i];
    return *this;
}

Subset& Subset::operator&=(const Subset& o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= i < o.words_.size() ? o.words_[i] : 0;
    return *this;
}

Subset Subset::complement() const
{
    Subset c = *this;
    for (auto& w : c.words_)
        w = ~w;
    if (universe_ % 64 && !c.words_.empty())
        c.words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    return c;
}

bool Subset::is_subset_of(const Subset& o) const
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~(i < o.words_.size() ? o.words_[i] : 0))
            return false;
    return true;
}

void require_same_group(const Group& g, const Subset& s)
{
    if (s.group_id() != g.id())
        fail(ErrorKind::group_mismatch, "subset belongs to a different group");
}

namespace {

// out = in << r (bit positions), truncated to n bits.
void shift_up(std::span<const std::uint64_t> in, std::uint64_t r, std::span<std::uint64_t> out)
{
    const std::size_t words = out.size();
    const std::size_t ws = r / 64, bs = r % 64;
    for (std::size_t i = words; i-- > 0;) {
        std::uint64_t v = 0;
        if (i >= ws) {
            v = in[i - ws] << bs;
            if (bs && i >= ws + 1)
                v |= in[i - ws - 1] >> (64 - bs);
        }
        out[i] |= v;
    }
}

// out |= in >> r.
void shift_down(std::span<const std::uint64_t> in, std::uint64_t r, std::span<std::uint64_t> out)
{
    const std::size_t words = out.size();
    const std::size_t ws = r / 64, bs = r % 64;
    for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t v = 0;
        if (i + ws < words) {
            v = in[i + ws] >> bs;
            if (bs && i + ws + 1 < words)
                v |= in[i + ws + 1] << (64 - bs);
        }
        out[i] |= v;
    }
}

} // namespace

void rotate_bits(std::span<const std::uint64_t> in, std::uint64_t n, std::uint64_t r,
                 std::span<std::uint64_t> out)
{
    r %= n;
    std::fill(out.begin(), out.end(), 0);
    if (r == 0) {
        std::copy(in.begin(), in.end(), out.begin());
        return;
    }
    shift_up(in, r, out);
    shift_down(in, n - r, out);
    if (n % 64)
        out.back() &= (std::uint64_t{1} << (n % 64)) - 1;
}

} // namespace setadd
