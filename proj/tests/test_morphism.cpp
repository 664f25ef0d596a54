#include "fixtures.hpp"

#include "setadd/error.hpp"
#include "setadd/morphism.hpp"

#include <doctest.h>

#include <numeric>

using namespace setadd;
using fixtures::ex;

namespace {

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::invalid_argument;
}

void check_automorphism(const Automorphism& t, std::uint64_t pairs_step = 1)
{
    const Group& g = t.group();
    const std::uint64_t n = g.order();
    std::vector<bool> hit(n);
    for (Elem a = 0; a < n; ++a)
        hit[t.apply(a)] = true;
    CHECK(std::count(hit.begin(), hit.end(), true) == static_cast<long>(n));
    for (Elem a = 0; a < n; a += static_cast<Elem>(pairs_step))
        for (Elem b = 0; b < n; b += static_cast<Elem>(pairs_step))
            REQUIRE(t.apply(g.op(a, b)) == g.op(t.apply(a), t.apply(b)));
}

} // namespace

TEST_CASE("identity and multipliers")
{
    const Group z7 = Group::cyclic(7);
    const auto iota = Automorphism::identity(z7);
    CHECK(iota.order() == 1);
    CHECK(iota.delta() == 0);
    CHECK(iota.apply(5) == 5);

    const auto three = Automorphism::make(z7, AutomorphismSpec::times(3));
    CHECK(three.apply(5) == 1);
    CHECK(three.order() == 6);
    CHECK(three.delta() == 1);

    const auto two = Automorphism::make(z7, AutomorphismSpec::times(2));
    CHECK(two.apply(5) == 3);
    CHECK(two.order() == 3);
    CHECK(two.delta() == 0);
    check_automorphism(two);

    const auto neg = Automorphism::make(z7, AutomorphismSpec::times(-1));
    CHECK(neg.apply(1) == 6);
    CHECK(neg.order() == 2);
    CHECK(neg.delta() == 1);

    CHECK(kind_of([&] { Automorphism::make(Group::cyclic(6), AutomorphismSpec::times(2)); }) == ErrorKind::invalid_spec);
    CHECK(kind_of([&] { Automorphism::make(fixtures::s3(), AutomorphismSpec::times(1)); }) == ErrorKind::invalid_spec);
    CHECK(kind_of([&] { two.apply(7); }) == ErrorKind::invalid_argument);
}

TEST_CASE("matrix automorphisms on the normal part")
{
    const Group g = fixtures::example_group();
    const auto phi = Automorphism::make(g, AutomorphismSpec::linear({{2, 0}, {0, 1}}));
    CHECK(phi.apply(ex(1, 1, 0)) == ex(2, 1, 0));
    CHECK(phi.order() == 23);

    // Diagonal matrices commute with the action diag(2, 1).
    const auto t = Automorphism::make(g, AutomorphismSpec::linear({{3, 0}, {0, 5}}));
    CHECK(t.apply(ex(1, 1, 0)) == ex(3, 5, 0));
    CHECK(t.apply(ex(1, 0, 7)) == ex(3, 0, 7));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
    for (int i = 0; i < 2000; ++i) {
        const Elem a = pick(rng), b = pick(rng);
        REQUIRE(t.apply(g.op(a, b)) == g.op(t.apply(a), t.apply(b)));
    }
    // The orbit of a point with both coordinates nonzero has the matrix order.
    std::uint64_t ord = 1;
    for (Elem x = t.apply(ex(1, 1, 0)); x != ex(1, 1, 0); x = t.apply(x))
        ++ord;
    CHECK(t.order() == ord);

    CHECK(kind_of([&] { Automorphism::make(g, AutomorphismSpec::linear({{0, 1}, {1, 0}})); }) == ErrorKind::invalid_spec);
    CHECK(kind_of([&] { Automorphism::make(g, AutomorphismSpec::linear({{1, 0}, {0, 0}})); }) == ErrorKind::invalid_spec);
    CHECK(kind_of([&] { Automorphism::make(g, AutomorphismSpec::linear({{1}})); }) == ErrorKind::invalid_spec);
}

TEST_CASE("target paths in direct products")
{
    const Group g = Group::construct(GroupSpec::direct(GroupSpec::cyclic(5), GroupSpec::cyclic(7)));
    const auto t = Automorphism::make(g, AutomorphismSpec::linear({{3}}, {"1"}));
    check_automorphism(t);
    CHECK(t.order() == 6); // 3 generates (Z/7)^*
    CHECK(t.delta() == 1);
    for (Elem a = 0; a < 5; ++a)
        CHECK(t.apply(a) == a); // left factor occupies the low digit
    CHECK(kind_of([&] { Automorphism::make(g, AutomorphismSpec::linear({{3}}, {"2"})); }) == ErrorKind::invalid_spec);
    CHECK(kind_of([&] { Automorphism::make(g, AutomorphismSpec::linear({{3}}, {})); }) == ErrorKind::invalid_spec);
}

TEST_CASE("permutation automorphisms")
{
    const Group s3 = fixtures::s3();
    // Conjugation by element 1.
    std::vector<std::int64_t> conj(6);
    for (Elem x = 0; x < 6; ++x)
        conj[x] = s3.op(s3.op(1, x), s3.inverse(1));
    const auto c = Automorphism::make(s3, AutomorphismSpec::perm(conj));
    check_automorphism(c);
    CHECK(c.order() == 2);

    CHECK(kind_of([&] { Automorphism::make(s3, AutomorphismSpec::perm({0, 2, 1, 3, 4, 5})); }) == ErrorKind::invalid_spec);
    CHECK(kind_of([&] { Automorphism::make(s3, AutomorphismSpec::perm({1, 0, 2, 3, 4, 5})); }) == ErrorKind::invalid_spec);
    CHECK(kind_of([&] { Automorphism::make(s3, AutomorphismSpec::perm({0, 0, 2, 3, 4, 5})); }) == ErrorKind::invalid_spec);
    CHECK(kind_of([&] { Automorphism::make(s3, AutomorphismSpec::perm({0, 1, 2})); }) == ErrorKind::invalid_spec);

    const Group big = Group::cyclic(600);
    std::vector<std::int64_t> id(600);
    std::iota(id.begin(), id.end(), 0);
    CHECK(kind_of([&] { Automorphism::make(big, AutomorphismSpec::perm(id)); }) == ErrorKind::cap_exceeded);
    MorphismOptions o;
    o.cap_override = true;
    CHECK(Automorphism::make(big, AutomorphismSpec::perm(id), o).order() == 1);
}
