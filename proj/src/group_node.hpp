#pragma once

#include "setadd/group.hpp"
#include "setadd/modarith.hpp"

#include <memory>
#include <vector>

namespace setadd::detail {

/// Construction-tree node. Every node encodes its elements as 0..order-1 with
/// identity 0; composite nodes use mixed radix with the first child fastest.
struct Node {
    enum class Kind { cyclic, direct, semidirect, table };

    Kind kind = Kind::cyclic;
    std::uint64_t order = 1;

    // direct
    std::unique_ptr<Node> left, right;

    // semidirect: normal part (Z/modulus)^rank, quotient Z/quotient
    std::uint64_t modulus = 1;
    std::size_t rank = 0;
    std::uint64_t quotient = 1;
    std::uint64_t normal_order = 1;
    ModMatrix action;
    std::vector<ModMatrix> action_powers; // action^z for z in [0, quotient)

    // table
    std::vector<Elem> table;
    std::vector<Elem> inverses;

    Elem op(Elem a, Elem b) const;
    Elem inverse(Elem a) const;

    void decode_normal(std::uint64_t idx, std::uint64_t* digits) const
    {
        for (std::size_t i = 0; i < rank; ++i) {
            digits[i] = idx % modulus;
            idx /= modulus;
        }
    }
    std::uint64_t encode_normal(const std::uint64_t* digits) const
    {
        std::uint64_t idx = 0;
        for (std::size_t i = rank; i-- > 0;)
            idx = idx * modulus + digits[i];
        return idx;
    }
};

} // namespace setadd::detail
