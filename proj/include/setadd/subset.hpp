#pragma once

#include "setadd/group.hpp"

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace setadd {

/// A subset of a fixed group, stored as a bit-vector over element indices.
class Subset {
public:
    Subset() = default;
    explicit Subset(const Group& g)
        : group_id_(g.id()), universe_(g.order()), words_((g.order() + 63) / 64, 0) {}

    static Subset of(const Group& g, std::span<const Elem> elems);
    static Subset of(const Group& g, std::initializer_list<Elem> elems)
    {
        return of(g, std::span<const Elem>(elems.begin(), elems.size()));
    }
    static Subset full(const Group& g);
    /// Bits of `mask` as members; requires |G| <= 64.
    static Subset from_mask(const Group& g, std::uint64_t mask);

    void insert(Elem a) { words_[a / 64] |= std::uint64_t{1} << (a % 64); }
    void erase(Elem a) { words_[a / 64] &= ~(std::uint64_t{1} << (a % 64)); }
    bool contains(Elem a) const
    {
        return a < universe_ && (words_[a / 64] >> (a % 64) & 1);
    }

    std::size_t size() const
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }

    std::uint64_t universe() const { return universe_; }
    std::uint64_t group_id() const { return group_id_; }
    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    /// Low 64 bits; the whole set when |G| <= 64.
    std::uint64_t low_mask() const { return words_.empty() ? 0 : words_[0]; }

    std::vector<Elem> elements() const;

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1)
                f(static_cast<Elem>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
    }

    /// Least member; requires a nonempty set.
    Elem front() const;

    /// Bit-vector as "0x..." with element 0 in the least significant bit.
    std::string to_hex() const;

    Subset& operator|=(const Subset& o);
    Subset& operator&=(const Subset& o);
    Subset complement() const;
    bool is_subset_of(const Subset& o) const;

    bool operator==(const Subset& o) const = default;

private:
    std::uint64_t group_id_ = 0;
    std::uint64_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Throws group_mismatch unless `s` belongs to `g`.
void require_same_group(const Group& g, const Subset& s);

/// Rotate a bit-vector of length n left by r (element i moves to i + r mod n).
void rotate_bits(std::span<const std::uint64_t> in, std::uint64_t n, std::uint64_t r,
                 std::span<std::uint64_t> out);

} // namespace setadd
