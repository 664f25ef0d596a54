#pragma once

#include "setadd/group.hpp"
#include "setadd/io.hpp"
#include "setadd/search.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <vector>

namespace fixtures {

using namespace setadd;

// Cayley table of S3 on the lexicographically sorted permutations of {0,1,2};
// index 0 is the identity. Composition (f*g)(i) = f(g(i)).
inline std::vector<std::vector<std::int64_t>> s3_table()
{
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto index = [&](const std::array<int, 3>& q) {
        return std::find(perms.begin(), perms.end(), q) - perms.begin();
    };
    std::vector<std::vector<std::int64_t>> t(6, std::vector<std::int64_t>(6));
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i)
                c[i] = perms[a][perms[b][i]];
            t[a][b] = index(c);
        }
    return t;
}

inline Group s3() { return Group::construct(GroupSpec::table(s3_table())); }

inline Group example_group() { return Group::construct(example_4_13_group()); }

// Index of ((x, y), z) in the example group.
inline Elem ex(std::uint64_t x, std::uint64_t y, std::uint64_t z) { return static_cast<Elem>(x + 47 * y + 2209 * z); }

// The paper's A = {((0,0),1) ((1,0),0)^k : k < 5}: elements ((2k, 0), 1).
inline std::vector<Elem> example_a()
{
    std::vector<Elem> v;
    for (std::uint64_t k = 0; k < 5; ++k)
        v.push_back(ex(2 * k, 0, 1));
    return v;
}

// B = {((1,0),0)^l ((0,0),1) : l < 9}: elements ((l, 0), 1).
inline std::vector<Elem> example_b()
{
    std::vector<Elem> v;
    for (std::uint64_t l = 0; l < 9; ++l)
        v.push_back(ex(l, 0, 1));
    return v;
}

inline Subset random_subset(const Group& g, std::mt19937_64& rng, double density = 0.4)
{
    std::bernoulli_distribution coin(density);
    Subset s(g);
    for (Elem x = 0; x < g.order(); ++x)
        if (coin(rng))
            s.insert(x);
    return s;
}

} // namespace fixtures
