#include "setadd/morphism.hpp"

#include "group_node.hpp"
#include "setadd/error.hpp"

#include <array>
#include <numeric>

namespace setadd {

using detail::Node;

namespace {

std::uint64_t reduce(std::int64_t v, std::uint64_t m)
{
    const auto sm = static_cast<std::int64_t>(m);
    std::int64_t r = v % sm;
    return static_cast<std::uint64_t>(r < 0 ? r + sm : r);
}

struct Target {
    const Node* node = nullptr; // cyclic node or semidirect whose normal part is targeted
    bool normal = false;
    std::uint64_t stride = 1;
};

Target resolve(const Node& root, const std::vector<std::string>& path)
{
    const Node* node = &root;
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& step = path[i];
        if (node->kind == Node::Kind::direct && (step == "0" || step == "1")) {
            if (step == "1") {
                stride *= node->left->order;
                node = node->right.get();
            } else {
                node = node->left.get();
            }
        } else if (node->kind == Node::Kind::semidirect && step == "normal" && i + 1 == path.size()) {
            return {node, true, stride};
        } else {
            fail(ErrorKind::invalid_spec, "invalid automorphism target path at step '" + step + "'");
        }
    }
    if (node->kind == Node::Kind::cyclic)
        return {node, false, stride};
    if (node->kind == Node::Kind::semidirect)
        return {node, true, stride};
    fail(ErrorKind::invalid_spec, "matrix automorphisms must target a cyclic node or a semidirect normal part");
}

} // namespace

Automorphism Automorphism::identity(const Group& g)
{
    Automorphism a(g);
    a.order_ = 1;
    return a;
}

Automorphism Automorphism::make(const Group& g, const AutomorphismSpec& spec, const MorphismOptions& opts)
{
    Automorphism a(g);
    a.spec_ = spec;
    const std::uint64_t n = g.order();
    switch (spec.form) {
    case AutomorphismSpec::Form::identity:
        a.order_ = 1;
        return a;

    case AutomorphismSpec::Form::multiplier: {
        if (!g.is_cyclic())
            fail(ErrorKind::invalid_spec, "multiplier automorphisms need a cyclic group");
        a.unit_ = reduce(spec.multiplier, n);
        if (std::gcd(a.unit_, n) != 1 && n != 1)
            fail(ErrorKind::invalid_spec, "multiplier " + std::to_string(spec.multiplier) +
                                              " is not coprime to " + std::to_string(n) + ", not a bijection");
        a.order_ = multiplicative_order(a.unit_, n, opts.order_cap);
        return a;
    }

    case AutomorphismSpec::Form::matrix: {
        const Target t = resolve(g.root(), spec.target);
        const std::size_t dim = t.normal ? t.node->rank : 1;
        const std::uint64_t m = t.normal ? t.node->modulus : t.node->order;
        if (spec.matrix.size() != dim)
            fail(ErrorKind::invalid_spec, "automorphism matrix must be " + std::to_string(dim) + "x" +
                                              std::to_string(dim));
        ModMatrix mm(dim, m);
        for (std::size_t r = 0; r < dim; ++r) {
            if (spec.matrix[r].size() != dim)
                fail(ErrorKind::invalid_spec, "automorphism matrix row " + std::to_string(r) + " has wrong length");
            for (std::size_t c = 0; c < dim; ++c)
                mm(r, c) = reduce(spec.matrix[r][c], m);
        }
        if (std::gcd(mm.determinant(), m) != 1 && m != 1)
            fail(ErrorKind::invalid_spec, "automorphism matrix is not invertible, not a bijection");
        if (t.normal && !(mm * t.node->action == t.node->action * mm))
            fail(ErrorKind::invalid_spec, "automorphism matrix does not commute with the semidirect action, "
                                          "not multiplicative");
        a.matrix_ = mm;
        a.stride_ = t.stride;
        a.block_ = t.normal ? t.node->normal_order : t.node->order;
        // Order of the matrix in GL_d(Z/m).
        ModMatrix p = mm;
        for (std::uint64_t k = 1; k <= opts.order_cap; ++k) {
            if (p.is_identity()) {
                a.order_ = k;
                break;
            }
            p = p * mm;
        }
        // Spot-check multiplicativity on generators.
        const auto& gens = g.generators();
        for (Elem x : gens)
            for (Elem y : gens)
                if (a.map(g.mul(x, y)) != g.mul(a.map(x), a.map(y)))
                    fail(ErrorKind::invalid_spec, "matrix map is not multiplicative");
        return a;
    }

    case AutomorphismSpec::Form::permutation: {
        if (spec.permutation.size() != n)
            fail(ErrorKind::invalid_spec, "permutation must list exactly " + std::to_string(n) + " images");
        if (n > opts.exhaustive_cap && !opts.cap_override)
            fail(ErrorKind::cap_exceeded, "permutation automorphisms are verified exhaustively only up to order " +
                                              std::to_string(opts.exhaustive_cap));
        a.perm_.resize(n);
        std::vector<std::uint8_t> seen(n, 0);
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::int64_t v = spec.permutation[i];
            if (v < 0 || static_cast<std::uint64_t>(v) >= n || seen[static_cast<std::size_t>(v)]++)
                fail(ErrorKind::invalid_spec, "permutation is not bijective");
            a.perm_[i] = static_cast<Elem>(v);
        }
        if (a.perm_[0] != 0)
            fail(ErrorKind::invalid_spec, "permutation does not fix the identity, not multiplicative");
        for (std::uint64_t x = 0; x < n; ++x)
            for (std::uint64_t y = 0; y < n; ++y) {
                const auto ex = static_cast<Elem>(x), ey = static_cast<Elem>(y);
                if (a.perm_[g.mul(ex, ey)] != g.mul(a.perm_[ex], a.perm_[ey]))
                    fail(ErrorKind::invalid_spec, "permutation is not multiplicative at (" + std::to_string(x) +
                                                      "," + std::to_string(y) + ")");
            }
        std::vector<std::uint8_t> visited(n, 0);
        std::uint64_t ord = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (visited[i])
                continue;
            std::uint64_t len = 0;
            for (std::uint64_t j = i; !visited[j]; j = a.perm_[j]) {
                visited[j] = 1;
                ++len;
            }
            ord = std::lcm(ord, len);
        }
        if (ord <= opts.order_cap)
            a.order_ = ord;
        return a;
    }
    }
    return a;
}

Elem Automorphism::apply(Elem a) const
{
    group_.check(a);
    return map(a);
}

Elem Automorphism::map(Elem a) const noexcept
{
    switch (spec_.form) {
    case AutomorphismSpec::Form::identity:
        return a;
    case AutomorphismSpec::Form::multiplier:
        return static_cast<Elem>(mulmod(a, unit_, group_.order()));
    case AutomorphismSpec::Form::matrix: {
        const std::uint64_t sub = (a / stride_) % block_;
        const std::uint64_t m = matrix_.modulus();
        std::array<std::uint64_t, 16> x{}, y{};
        std::uint64_t rest = sub;
        for (std::size_t i = 0; i < matrix_.dim(); ++i) {
            x[i] = rest % m;
            rest /= m;
        }
        matrix_.apply(x.data(), y.data());
        std::uint64_t mapped = 0;
        for (std::size_t i = matrix_.dim(); i-- > 0;)
            mapped = mapped * m + y[i];
        return static_cast<Elem>(a - sub * stride_ + mapped * stride_);
    }
    case AutomorphismSpec::Form::permutation:
        return perm_[a];
    }
    return a;
}

std::uint64_t Automorphism::order() const
{
    if (!order_)
        fail(ErrorKind::cap_exceeded, "automorphism order exceeds the iteration cap");
    return *order_;
}

} // namespace setadd
