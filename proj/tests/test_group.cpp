#include "fixtures.hpp"

#include "setadd/error.hpp"
#include "setadd/series.hpp"

#include <doctest.h>

using namespace setadd;
using fixtures::ex;

namespace {

Group semidirect47(std::int64_t diag)
{
    return Group::construct(GroupSpec::semidirect(47, 2, 23, {{diag, 0}, {0, 1}}));
}

bool kind_is(ErrorKind k, auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == k;
    }
    return false;
}

std::uint64_t power_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i)
        r = r * b % m;
    return r;
}

std::vector<Group> small_groups()
{
    std::vector<Group> gs;
    for (std::uint64_t n : {1, 2, 5, 6, 12})
        gs.push_back(Group::cyclic(n));
    gs.push_back(fixtures::s3());
    gs.push_back(Group::construct(GroupSpec::direct(GroupSpec::cyclic(2), GroupSpec::cyclic(6))));
    gs.push_back(Group::construct(GroupSpec::semidirect(7, 1, 3, {{2}})));
    gs.push_back(Group::construct(GroupSpec::semidirect(5, 2, 4, {{0, 4}, {1, 0}})));
    gs.push_back(Group::construct(
        GroupSpec::direct(GroupSpec::table(fixtures::s3_table()), GroupSpec::semidirect(7, 1, 3, {{2}}))));
    return gs;
}

} // namespace

TEST_CASE("cyclic construction and arithmetic")
{
    const Group g = Group::cyclic(5);
    CHECK(g.order() == 5);
    CHECK(Group::identity() == 0);
    const Group z7 = Group::cyclic(7);
    CHECK(z7.op(3, 5) == 1);
    CHECK(z7.inverse(3) == 4);
    CHECK(z7.element_order(0) == 1);
    CHECK(kind_is(ErrorKind::invalid_argument, [&] { z7.op(7, 0); }));
}

TEST_CASE("example group construction and law")
{
    const Group g = fixtures::example_group();
    CHECK(g.order() == 50807);
    CHECK(g.op(ex(0, 0, 1), ex(1, 0, 0)) == ex(2, 0, 1));
    CHECK(g.op(ex(2, 0, 1), ex(0, 0, 1)) == ex(2, 0, 2));
    CHECK(g.element_order(ex(1, 0, 0)) == 47);
    CHECK(*minimal_torsion(g) == 23);
    CHECK_FALSE(g.has_table());
    CHECK(kind_is(ErrorKind::cap_exceeded, [&] { (void)g.cayley_table(); }));
}

TEST_CASE("semidirect matrix validation follows M^h by powering")
{
    // 3^23 mod 47: computed here by repeated multiplication.
    const bool three_ok = power_mod(3, 23, 47) == 1;
    if (three_ok)
        CHECK_NOTHROW(semidirect47(3));
    else
        CHECK(kind_is(ErrorKind::invalid_spec, [] { semidirect47(3); }));
    CHECK(power_mod(5, 23, 47) != 1);
    CHECK(kind_is(ErrorKind::invalid_spec, [] { semidirect47(5); }));
    CHECK(kind_is(ErrorKind::invalid_spec, [] { semidirect47(47); })); // singular mod 47
    try {
        semidirect47(5);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("M^23") != std::string::npos);
    }
}

TEST_CASE("malformed tables have distinct diagnostics")
{
    auto message = [](std::vector<std::vector<std::int64_t>> t) {
        try {
            Group::construct(GroupSpec::table(std::move(t)));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::invalid_spec);
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message({{0, 1}, {0, 1}}).find("Latin square") != std::string::npos);
    CHECK(message({{1, 0}, {0, 1}}).find("identity") != std::string::npos);
    // Latin square with identity 0 that is not associative (order 5 loop).
    const std::vector<std::vector<std::int64_t>> loop{
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK(message(loop).find("associativ") != std::string::npos);
    CHECK(kind_is(ErrorKind::cap_exceeded, [] {
        ConstructOptions o;
        o.max_order = 100;
        Group::construct(GroupSpec::cyclic(101), o);
    }));
}

TEST_CASE("p(G)")
{
    CHECK(*minimal_torsion(Group::cyclic(15)) == 3);
    CHECK_FALSE(minimal_torsion(Group::cyclic(1)).has_value());
    CHECK(*minimal_torsion(fixtures::s3()) == 2);
}

TEST_CASE("group invariants on small groups")
{
    for (const Group& g : small_groups()) {
        const std::uint64_t n = g.order();
        CAPTURE(n);
        // Latin square.
        for (Elem a = 0; a < n; ++a) {
            std::vector<bool> row(n), col(n);
            for (Elem b = 0; b < n; ++b) {
                row[g.op(a, b)] = true;
                col[g.op(b, a)] = true;
            }
            CHECK(std::count(row.begin(), row.end(), true) == static_cast<long>(n));
            CHECK(std::count(col.begin(), col.end(), true) == static_cast<long>(n));
        }
        // Structured vs materialized table.
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                REQUIRE(g.op(a, b) == g.op_structural(a, b));
        // Inverses, Lagrange, p(G) as least prime divisor of element orders.
        std::optional<std::uint64_t> least;
        for (Elem a = 0; a < n; ++a) {
            CHECK(g.op(a, g.inverse(a)) == 0);
            CHECK(g.inverse(g.inverse(a)) == a);
            const auto o = g.element_order(a);
            CHECK(n % o == 0);
            if (a != 0) {
                std::uint64_t q = 2;
                while (o % q)
                    ++q;
                least = least ? std::min(*least, q) : q;
            }
        }
        CHECK(least == minimal_torsion(g));
        // Associativity on a sample of triples.
        for (Elem a = 0; a < n; a += 3)
            for (Elem b = 0; b < n; b += 2)
                for (Elem c = 0; c < n; ++c)
                    REQUIRE(g.op(g.op(a, b), c) == g.op(a, g.op(b, c)));
    }
}

TEST_CASE("structured groups up to 512 agree with their tables")
{
    const Group g = Group::construct(GroupSpec::semidirect(7, 3, 1, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})); // 343
    const Group h = Group::construct(GroupSpec::direct(GroupSpec::semidirect(7, 1, 3, {{2}}), GroupSpec::cyclic(24)));
    for (const Group* G : {&g, &h}) {
        REQUIRE(G->order() <= 512);
        CHECK(G->has_table());
        const auto t = G->cayley_table();
        const std::uint64_t n = G->order();
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                REQUIRE(t[a * n + b] == G->op_structural(a, b));
    }
}

TEST_CASE("center")
{
    CHECK(center(Group::cyclic(6)).size() == 6);
    const auto z = center(fixtures::s3());
    CHECK(z.size() == 1);
    CHECK(z.contains(0));
    const Group g = fixtures::example_group();
    const Subset c = center(g);
    CHECK(c.size() == 47);
    for (std::uint64_t y = 0; y < 47; ++y)
        CHECK(c.contains(ex(0, y, 0)));
}

TEST_CASE("quotients")
{
    const Group z6 = Group::cyclic(6);
    const Group q = quotient_group(z6, Subset::of(z6, {0, 3}));
    CHECK(q.order() == 3);
    // Cosets by least member: {0,3} -> 0, {1,4} -> 1, {2,5} -> 2; Z/3 table.
    for (Elem a = 0; a < 3; ++a)
        for (Elem b = 0; b < 3; ++b)
            CHECK(q.op(a, b) == (a + b) % 3);
    CHECK(quotient_group(z6, Subset::full(z6)).order() == 1);

    const Group s3 = fixtures::s3();
    Subset a3(s3);
    for (Elem x = 0; x < 6; ++x)
        if (s3.element_order(x) != 2)
            a3.insert(x);
    REQUIRE(a3.size() == 3);
    const Group c2 = quotient_group(s3, a3);
    CHECK(c2.order() * a3.size() == s3.order());
    Subset reflection(s3);
    reflection.insert(0);
    reflection.insert(1);
    CHECK(kind_is(ErrorKind::invalid_argument, [&] { quotient_group(s3, reflection); }));
    CHECK(kind_is(ErrorKind::invalid_argument, [&] { quotient_group(s3, Subset::of(s3, {0, 1, 2})); }));
}

TEST_CASE("nilpotency")
{
    CHECK(is_nilpotent(Group::cyclic(12)));
    CHECK_FALSE(is_nilpotent(fixtures::s3()));
    CHECK_FALSE(is_nilpotent(fixtures::example_group()));
    // Quaternion-like 2-group (Z/4 x| Z/2 by -1 is dihedral of order 8): nilpotent.
    CHECK(is_nilpotent(Group::construct(GroupSpec::semidirect(4, 1, 2, {{3}}))));
    CHECK(is_nilpotent(Group::construct(GroupSpec::direct(GroupSpec::cyclic(9), GroupSpec::cyclic(100000)))));
}
