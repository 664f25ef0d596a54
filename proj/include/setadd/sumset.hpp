#pragma once

#include "setadd/group.hpp"
#include "setadd/morphism.hpp"
#include "setadd/subset.hpp"

#include <cstdint>

namespace setadd {

/// AB = { a*b : a in A, b in B }. Cyclic groups take the rotation path.
Subset product_set(const Group& g, const Subset& a, const Subset& b);

/// AB by a loop over set bits, for any representation.
Subset product_set_generic(const Group& g, const Subset& a, const Subset& b);

/// { a * theta(b) : a in A, b in B, a != b }. The restriction compares the
/// elements a and b, not the products.
Subset restricted_product_set(const Automorphism& theta, const Subset& a, const Subset& b);
Subset restricted_product_set_generic(const Automorphism& theta, const Subset& a, const Subset& b);

/// theta(S).
Subset image(const Automorphism& theta, const Subset& s);

/// min(p(G), |A|+|B|-1); with p(G) infinite only the second term counts.
std::int64_t cd_bound(const Group& g, const Subset& a, const Subset& b);

/// min(p(G) - delta(theta), |A|+|B|-3). May be negative for tiny sets, in
/// which case the bound holds vacuously.
std::int64_t eh_bound(const Automorphism& theta, const Subset& a, const Subset& b);

/// |AB| = |A|+|B|-1.
bool is_critical_pair_cd(const Group& g, const Subset& a, const Subset& b);

/// |A .theta B| = |A|+|B|-3.
bool is_critical_pair_eh(const Automorphism& theta, const Subset& a, const Subset& b);

struct OlsonCheck {
    std::size_t product_size = 0;
    /// 2|AB| >= 2|A| + |B|.
    bool inequality = false;
    /// AB (B^-1 B) = AB, the reading adopted for the "-B.B" exception.
    bool exceptional = false;

    bool holds() const { return inequality || exceptional; }
};

OlsonCheck olson_check(const Group& g, const Subset& a, const Subset& b);

} // namespace setadd
