#include "kernel.hpp"

#include "setadd/sumset.hpp"

namespace setadd::detail {

Kernel::Kernel(const Automorphism& theta) : theta_(theta)
{
    const Group& g = theta_.group();
    n_ = g.order();
    small_ = n_ <= 64;
    cyclic_ = g.is_cyclic();
    if (!small_)
        return;
    full_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    theta_map_.resize(n_);
    for (Elem y = 0; y < n_; ++y)
        theta_map_[y] = theta_.map(y);
    if (cyclic_)
        return;
    chunks_ = (n_ + 7) / 8;
    lut_.assign(n_ * chunks_ * 256, 0);
    for (Elem y = 0; y < n_; ++y)
        for (std::size_t c = 0; c < chunks_; ++c) {
            std::uint64_t* row = &lut_[(y * chunks_ + c) * 256];
            for (unsigned byte = 1; byte < 256; ++byte) {
                const auto bit = static_cast<unsigned>(std::countr_zero(byte));
                const std::uint64_t x = c * 8 + bit;
                std::uint64_t v = row[byte & (byte - 1)];
                if (x < n_)
                    v |= std::uint64_t{1} << g.mul(static_cast<Elem>(x), y);
                row[byte] = v;
            }
        }
}

Operand Kernel::from_mask(std::uint64_t m) const
{
    Operand o;
    o.mask = m;
    o.size = static_cast<std::size_t>(std::popcount(m));
    return o;
}

Operand Kernel::from_elems(const std::vector<Elem>& elems) const
{
    Operand o;
    if (small_) {
        for (Elem e : elems)
            o.mask |= std::uint64_t{1} << e;
        o.size = static_cast<std::size_t>(std::popcount(o.mask));
    } else {
        o.set = Subset::of(group(), elems);
        o.size = o.set.size();
    }
    return o;
}

Subset Kernel::subset(const Operand& x) const
{
    return small_ ? Subset::from_mask(group(), x.mask) : x.set;
}

std::vector<Elem> Kernel::elems(const Operand& x) const
{
    if (!small_)
        return x.set.elements();
    std::vector<Elem> out;
    for (std::uint64_t m = x.mask; m; m &= m - 1)
        out.push_back(static_cast<Elem>(std::countr_zero(m)));
    return out;
}

std::size_t Kernel::product(const Operand& a, const Operand& b) const
{
    if (!small_)
        return product_set(group(), a.set, b.set).size();
    std::uint64_t out = 0;
    for (std::uint64_t m = b.mask; m; m &= m - 1)
        out |= image_mask(a.mask, static_cast<Elem>(std::countr_zero(m)));
    return static_cast<std::size_t>(std::popcount(out));
}

std::size_t Kernel::restricted(const Operand& a, const Operand& b) const
{
    if (!small_)
        return restricted_product_set(theta_, a.set, b.set).size();
    std::uint64_t out = 0;
    for (std::uint64_t m = b.mask; m; m &= m - 1) {
        const auto y = static_cast<Elem>(std::countr_zero(m));
        out |= image_mask(a.mask & ~(std::uint64_t{1} << y), theta_map_[y]);
    }
    return static_cast<std::size_t>(std::popcount(out));
}

} // namespace setadd::detail
