#pragma once

// Single-word set arithmetic for groups with at most 64 elements, with a
// Subset fallback above that.

#include "setadd/group.hpp"
#include "setadd/morphism.hpp"
#include "setadd/subset.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace setadd::detail {

struct Operand {
    std::uint64_t mask = 0;
    Subset set; // populated only for groups above 64 elements
    std::size_t size = 0;
};

class Kernel {
public:
    explicit Kernel(const Automorphism& theta);

    bool small() const { return small_; }
    std::uint64_t order() const { return n_; }
    std::uint64_t full_mask() const { return full_; }

    Operand from_mask(std::uint64_t m) const;
    Operand from_elems(const std::vector<Elem>& elems) const;
    Subset subset(const Operand& x) const;
    std::vector<Elem> elems(const Operand& x) const;

    /// |AB|
    std::size_t product(const Operand& a, const Operand& b) const;
    /// |A .theta B|
    std::size_t restricted(const Operand& a, const Operand& b) const;

    std::uint64_t image_mask(std::uint64_t m, Elem y) const
    {
        if (cyclic_)
            return rotate(m, y);
        std::uint64_t out = 0;
        const std::uint64_t* base = &lut_[static_cast<std::size_t>(y) * chunks_ * 256];
        for (std::size_t c = 0; c < chunks_; ++c, m >>= 8)
            out |= base[c * 256 + (m & 0xff)];
        return out;
    }

    std::uint64_t rotate(std::uint64_t m, std::uint64_t r) const
    {
        if (r == 0)
            return m;
        return ((m << r) | (m >> (n_ - r))) & full_;
    }

    const Group& group() const { return theta_.group(); }
    const Automorphism& theta() const { return theta_; }

private:
    Automorphism theta_;
    std::uint64_t n_ = 0;
    bool small_ = false;
    bool cyclic_ = false;
    std::uint64_t full_ = 0;
    std::size_t chunks_ = 0;
    std::vector<std::uint64_t> lut_; // [y][chunk][byte] -> image of the byte's elements under x -> x*y
    std::vector<Elem> theta_map_;
};

} // namespace setadd::detail
