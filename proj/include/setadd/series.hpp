#pragma once

// Center, quotients and the upper central series.

#include "setadd/group.hpp"
#include "setadd/subset.hpp"

namespace setadd {

struct SeriesOptions {
    /// Largest structured group whose center is found by scanning.
    std::uint64_t center_scan_cap = std::uint64_t{1} << 20;
    /// Largest group handled by the upper-central-series algorithm.
    std::uint64_t nilpotency_cap = 4096;
};

/// { z : zg = gz for all g }, found by testing commutation with generators.
Subset center(const Group& g, const SeriesOptions& opts = {});

/// Checks that `s` is a subgroup: contains identity and is closed under products.
bool is_subgroup(const Group& g, const Subset& s);

/// Coset group G/N as a table group; cosets are numbered by least member.
/// Throws invalid_argument when N is not a normal subgroup.
Group quotient_group(const Group& g, const Subset& normal, const SeriesOptions& opts = {});

/// Whether the upper central series reaches G. Groups above the cap are
/// decided by structural rules when one applies.
bool is_nilpotent(const Group& g, const SeriesOptions& opts = {});

} // namespace setadd
