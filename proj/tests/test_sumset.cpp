#include "fixtures.hpp"

#include "setadd/error.hpp"
#include "setadd/sumset.hpp"

#include <doctest.h>

using namespace setadd;
using fixtures::ex;

namespace {

Subset naive_product(const Group& g, const Subset& a, const Subset& b, const Automorphism* theta = nullptr)
{
    Subset out(g);
    for (Elem x = 0; x < g.order(); ++x)
        for (Elem y = 0; y < g.order(); ++y)
            if (a.contains(x) && b.contains(y) && (!theta || x != y))
                out.insert(g.op(x, theta ? theta->apply(y) : y));
    return out;
}

SearchTask all_pairs(GroupSpec spec, AutomorphismSpec theta = {})
{
    SearchTask t;
    t.group = std::move(spec);
    t.theta = std::move(theta);
    return t;
}

} // namespace

TEST_CASE("product set examples")
{
    const Group z5 = Group::cyclic(5);
    CHECK(product_set(z5, Subset::of(z5, {0, 1}), Subset::of(z5, {0, 2})) == Subset::of(z5, {0, 1, 2, 3}));
    const Subset a = Subset::of(z5, {1, 3});
    CHECK(product_set(z5, a, Subset::of(z5, {0})) == a);
    CHECK(product_set(z5, Subset(z5), a).empty());

    const Group g = fixtures::example_group();
    const Subset ea = Subset::of(g, fixtures::example_a());
    const Subset eb = Subset::of(g, fixtures::example_b());
    const Subset ab = product_set(g, ea, eb);
    Subset expect(g);
    for (std::uint64_t s = 0; s <= 12; ++s)
        expect.insert(ex(2 * s, 0, 2));
    CHECK(ab == expect);
    CHECK(cd_bound(g, ea, eb) == 13);
    CHECK(is_critical_pair_cd(g, ea, eb));
}

TEST_CASE("restricted product set examples")
{
    const Group g = fixtures::example_group();
    const auto iota = Automorphism::identity(g);
    const Subset ea = Subset::of(g, fixtures::example_a());
    const Subset eb = Subset::of(g, fixtures::example_b());
    const Subset r = restricted_product_set(iota, ea, eb);
    CHECK(r.size() == 11);
    CHECK(eh_bound(iota, ea, eb) == 11);
    CHECK(is_critical_pair_eh(iota, ea, eb));
    CHECK(r == naive_product(g, ea, eb, &iota));

    const Group z7 = Group::cyclic(7);
    const auto i7 = Automorphism::identity(z7);
    const Subset s = Subset::of(z7, {0, 1, 2});
    CHECK(restricted_product_set(i7, s, s) == Subset::of(z7, {1, 2, 3}));
    CHECK(is_critical_pair_eh(i7, s, s));
    const auto three = Automorphism::make(z7, AutomorphismSpec::times(3));
    CHECK(eh_bound(three, s, s) == 3);

    const Group z11 = Group::cyclic(11);
    const Subset t = Subset::of(z11, {0, 1, 5});
    CHECK(restricted_product_set(Automorphism::identity(z11), t, t) == Subset::of(z11, {1, 5, 6}));

    const Group z5 = Group::cyclic(5);
    const Subset one = Subset::of(z5, {2});
    CHECK(restricted_product_set(Automorphism::identity(z5), one, one).empty());
    CHECK(eh_bound(Automorphism::identity(z5), one, one) == -1);
}

TEST_CASE("bounds and criticality examples")
{
    const Group z5 = Group::cyclic(5), z7 = Group::cyclic(7);
    CHECK(cd_bound(z5, Subset::of(z5, {0, 1}), Subset::of(z5, {2, 3})) == 3);
    CHECK(cd_bound(z7, Subset::of(z7, {0, 1, 2, 3}), Subset::of(z7, {0, 1, 2, 3, 4})) == 7);
    CHECK(is_critical_pair_cd(z7, Subset::of(z7, {0, 1}), Subset::of(z7, {0, 1})));
    CHECK(is_critical_pair_cd(z7, Subset::of(z7, {0}), Subset::of(z7, {0, 3})));
    // {0,1,3} + {0,1,3} is all of Z/5: 5 = 3 + 3 - 1, so the pair is critical.
    CHECK(product_set(z5, Subset::of(z5, {0, 1, 3}), Subset::of(z5, {0, 1, 3})).size() == 5);
    CHECK(is_critical_pair_cd(z5, Subset::of(z5, {0, 1, 3}), Subset::of(z5, {0, 1, 3})));
    // In Z/7 the same sets give {0,1,2,3,4,6}: 6 > 5.
    CHECK_FALSE(is_critical_pair_cd(z7, Subset::of(z7, {0, 1, 3}), Subset::of(z7, {0, 1, 3})));
    CHECK_THROWS_AS(cd_bound(z5, Subset(z5), Subset::of(z5, {0})), Error);
    CHECK_THROWS_AS(is_critical_pair_cd(z5, Subset(z5), Subset::of(z5, {0})), Error);
    try {
        product_set(z5, Subset::of(z7, {0}), Subset::of(z5, {0}));
        FAIL("expected a group mismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::group_mismatch);
    }
}

TEST_CASE("rotation path agrees with the naive double loop")
{
    std::mt19937_64 rng(2024);
    for (std::uint64_t n : {7, 64, 65, 130, 257}) {
        const Group g = Group::cyclic(n);
        const auto theta = Automorphism::make(g, AutomorphismSpec::times(n == 64 ? 5 : 3));
        const int trials = n <= 65 ? 10000 : 600;
        for (int i = 0; i < trials; ++i) {
            std::uniform_real_distribution<double> dens(0.02, 0.6);
            const Subset a = fixtures::random_subset(g, rng, dens(rng));
            const Subset b = fixtures::random_subset(g, rng, dens(rng));
            REQUIRE(product_set(g, a, b) == product_set_generic(g, a, b));
            const Subset r = restricted_product_set(theta, a, b);
            REQUIRE(r == restricted_product_set_generic(theta, a, b));
            REQUIRE(r.is_subset_of(product_set(g, a, image(theta, b))));
        }
        if (n <= 65) {
            for (int i = 0; i < 200; ++i) {
                const Subset a = fixtures::random_subset(g, rng);
                const Subset b = fixtures::random_subset(g, rng);
                REQUIRE(product_set(g, a, b) == naive_product(g, a, b));
                REQUIRE(restricted_product_set(theta, a, b) == naive_product(g, a, b, &theta));
            }
        }
    }
}

TEST_CASE("restricted product lies inside the twisted product on nonabelian groups")
{
    const Group g = fixtures::example_group();
    const auto theta = Automorphism::make(g, AutomorphismSpec::linear({{3, 0}, {0, 1}}));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
    for (int i = 0; i < 200; ++i) {
        std::vector<Elem> xs, ys;
        for (int j = 0; j < 6; ++j) {
            xs.push_back(pick(rng));
            ys.push_back(j < 3 ? xs.back() : pick(rng));
        }
        const Subset a = Subset::of(g, xs), b = Subset::of(g, ys);
        const Subset r = restricted_product_set(theta, a, b);
        REQUIRE(r.is_subset_of(product_set(g, a, image(theta, b))));
        Subset manual(g);
        for (Elem x : xs)
            for (Elem y : ys)
                if (x != y)
                    manual.insert(g.op(x, theta.apply(y)));
        REQUIRE(r == manual);
    }
}

TEST_CASE("bounds hold exhaustively on every small group")
{
    std::vector<GroupSpec> specs;
    for (std::uint64_t n = 1; n <= 13; ++n)
        specs.push_back(GroupSpec::cyclic(n));
    specs.push_back(GroupSpec::table(fixtures::s3_table()));
    specs.push_back(GroupSpec::direct(GroupSpec::cyclic(2), GroupSpec::cyclic(2)));
    specs.push_back(GroupSpec::direct(GroupSpec::cyclic(2), GroupSpec::cyclic(4)));
    specs.push_back(GroupSpec::direct(GroupSpec::cyclic(2), GroupSpec::direct(GroupSpec::cyclic(2), GroupSpec::cyclic(2))));
    specs.push_back(GroupSpec::semidirect(4, 1, 2, {{3}}));          // dihedral of order 8
    specs.push_back(GroupSpec::semidirect(5, 1, 2, {{4}}));          // dihedral of order 10
    specs.push_back(GroupSpec::semidirect(3, 1, 4, {{2}}));          // Z/3 x| Z/4
    specs.push_back(GroupSpec::semidirect(2, 2, 3, {{0, 1}, {1, 1}})); // A4
    specs.push_back(GroupSpec::direct(GroupSpec::cyclic(2), GroupSpec::cyclic(6)));
    for (const auto& spec : specs) {
        const Group g = Group::construct(spec);
        REQUIRE(g.order() <= 13);
        CAPTURE(g.order());
        const auto cd = verify_cd_bound(all_pairs(spec));
        const std::uint64_t pairs = ((std::uint64_t{1} << g.order()) - 1) * ((std::uint64_t{1} << g.order()) - 1);
        CHECK(cd.instances_checked == pairs);
        CHECK(cd.violation_count == 0);
        const auto eh = verify_eh_bound(all_pairs(spec));
        CHECK(eh.instances_checked == pairs);
        CHECK(eh.violation_count == 0);
    }
}

TEST_CASE("kernel counts match an independent brute force")
{
    // Independent counts from tests/oracles/brute_force.py.
    CHECK(verify_cd_bound(all_pairs(GroupSpec::cyclic(5))).critical_pairs_found == 635);
    CHECK(verify_cd_bound(all_pairs(GroupSpec::cyclic(7))).critical_pairs_found == 6384);
    CHECK(verify_cd_bound(all_pairs(GroupSpec::table(fixtures::s3_table()))).critical_pairs_found == 1932);
    CHECK(verify_eh_bound(all_pairs(GroupSpec::cyclic(7), AutomorphismSpec::times(3))).critical_pairs_found == 1078);
    // And a test-local double loop over Z/6.
    const Group z6 = Group::cyclic(6);
    std::uint64_t critical = 0;
    for (std::uint64_t ma = 1; ma < 64; ++ma)
        for (std::uint64_t mb = 1; mb < 64; ++mb) {
            const Subset a = Subset::from_mask(z6, ma), b = Subset::from_mask(z6, mb);
            if (naive_product(z6, a, b).size() + 1 == a.size() + b.size())
                ++critical;
        }
    CHECK(verify_cd_bound(all_pairs(GroupSpec::cyclic(6))).critical_pairs_found == critical);
}

TEST_CASE("Olson inequality and its exception")
{
    const Group z7 = Group::cyclic(7);
    const auto o1 = olson_check(z7, Subset::of(z7, {0, 1}), Subset::of(z7, {0, 1}));
    CHECK(o1.product_size == 3);
    CHECK(o1.inequality);
    CHECK(o1.holds());

    const Subset full = Subset::full(z7);
    const auto o2 = olson_check(z7, full, full);
    CHECK_FALSE(o2.inequality);
    CHECK(o2.exceptional);

    const Group z6 = Group::cyclic(6);
    const Subset h = Subset::of(z6, {0, 2, 4});
    const auto o3 = olson_check(z6, h, h);
    CHECK(o3.product_size == 3);
    CHECK_FALSE(o3.inequality);
    CHECK(o3.exceptional);

    SearchTask t = all_pairs(GroupSpec::table(fixtures::s3_table()));
    const auto rep = verify_olson(t);
    CHECK(rep.violation_count == 0);
    CHECK(rep.instances_checked == 63 * 63);
}
