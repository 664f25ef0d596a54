#include "setadd/group.hpp"

#include "group_node.hpp"
#include "setadd/error.hpp"

#include <array>
#include <atomic>
#include <string>

namespace setadd {

namespace detail {

namespace {
constexpr std::size_t max_rank = 16;
}

Elem Node::op(Elem a, Elem b) const
{
    switch (kind) {
    case Kind::cyclic: {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Elem>(s >= order ? s - order : s);
    }
    case Kind::direct: {
        const std::uint64_t lo = left->order;
        const Elem l = left->op(static_cast<Elem>(a % lo), static_cast<Elem>(b % lo));
        const Elem r = right->op(static_cast<Elem>(a / lo), static_cast<Elem>(b / lo));
        return static_cast<Elem>(l + lo * r);
    }
    case Kind::semidirect: {
        const std::uint64_t z1 = a / normal_order, z2 = b / normal_order;
        std::array<std::uint64_t, max_rank> x{}, y{}, my{};
        decode_normal(a % normal_order, x.data());
        decode_normal(b % normal_order, y.data());
        if (action_powers.empty())
            action.pow(z1).apply(y.data(), my.data());
        else
            action_powers[z1].apply(y.data(), my.data());
        for (std::size_t i = 0; i < rank; ++i)
            x[i] = (x[i] + my[i]) % modulus;
        const std::uint64_t z = (z1 + z2) % quotient;
        return static_cast<Elem>(encode_normal(x.data()) + normal_order * z);
    }
    case Kind::table:
        return table[std::uint64_t{a} * order + b];
    }
    return 0;
}

Elem Node::inverse(Elem a) const
{
    switch (kind) {
    case Kind::cyclic:
        return static_cast<Elem>(a == 0 ? 0 : order - a);
    case Kind::direct: {
        const std::uint64_t lo = left->order;
        return static_cast<Elem>(left->inverse(static_cast<Elem>(a % lo)) +
                                 lo * right->inverse(static_cast<Elem>(a / lo)));
    }
    case Kind::semidirect: {
        // (n, z)^-1 = (-M^{-z} n, -z) and M^{-z} = M^{h-z}.
        const std::uint64_t z = a / normal_order;
        const std::uint64_t zi = (quotient - z) % quotient;
        std::array<std::uint64_t, max_rank> x{}, y{};
        decode_normal(a % normal_order, x.data());
        if (action_powers.empty())
            action.pow(zi).apply(x.data(), y.data());
        else
            action_powers[zi].apply(x.data(), y.data());
        for (std::size_t i = 0; i < rank; ++i)
            y[i] = (modulus - y[i]) % modulus;
        return static_cast<Elem>(encode_normal(y.data()) + normal_order * zi);
    }
    case Kind::table:
        return inverses[a];
    }
    return 0;
}

} // namespace detail

using detail::Node;

struct Group::Impl {
    GroupSpec spec;
    std::unique_ptr<Node> root;
    std::vector<Elem> table; // materialized structured table, or empty
    std::vector<Elem> generators;
    bool abelian = true;
    std::uint64_t id = 0;
};

namespace {

std::atomic<std::uint64_t> next_group_id{1};

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap)
{
    if (a != 0 && b > cap / a)
        fail(ErrorKind::cap_exceeded, "group order exceeds configured maximum " + std::to_string(cap));
    const std::uint64_t r = a * b;
    if (r > cap)
        fail(ErrorKind::cap_exceeded, "group order exceeds configured maximum " + std::to_string(cap));
    return r;
}

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t m)
{
    const auto sm = static_cast<std::int64_t>(m);
    std::int64_t r = v % sm;
    if (r < 0)
        r += sm;
    return static_cast<std::uint64_t>(r);
}

void validate_table(Node& node, const TableSpec& spec, const ConstructOptions& opts)
{
    const std::uint64_t n = spec.table.size();
    if (n == 0)
        fail(ErrorKind::invalid_spec, "malformed table: empty");
    if (n > opts.max_order)
        fail(ErrorKind::cap_exceeded, "group order exceeds configured maximum " + std::to_string(opts.max_order));
    if (n > 4096 && !opts.cap_override)
        fail(ErrorKind::cap_exceeded, "table groups are limited to order 4096");
    node.kind = Node::Kind::table;
    node.order = n;
    node.table.assign(n * n, 0);
    for (std::uint64_t r = 0; r < n; ++r) {
        if (spec.table[r].size() != n)
            fail(ErrorKind::invalid_spec, "malformed table: row " + std::to_string(r) + " has wrong length");
        for (std::uint64_t c = 0; c < n; ++c) {
            const std::int64_t v = spec.table[r][c];
            if (v < 0 || static_cast<std::uint64_t>(v) >= n)
                fail(ErrorKind::invalid_spec, "malformed table: entry out of range at (" + std::to_string(r) +
                                                  "," + std::to_string(c) + ")");
            node.table[r * n + c] = static_cast<Elem>(v);
        }
    }
    std::vector<std::uint8_t> seen(n);
    for (std::uint64_t r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::uint64_t c = 0; c < n; ++c)
            if (seen[node.table[r * n + c]]++)
                fail(ErrorKind::invalid_spec, "malformed table: not a Latin square (row " + std::to_string(r) + ")");
    }
    for (std::uint64_t c = 0; c < n; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::uint64_t r = 0; r < n; ++r)
            if (seen[node.table[r * n + c]]++)
                fail(ErrorKind::invalid_spec, "malformed table: not a Latin square (column " + std::to_string(c) + ")");
    }
    for (std::uint64_t g = 0; g < n; ++g)
        if (node.table[g] != g || node.table[g * n] != g)
            fail(ErrorKind::invalid_spec, "malformed table: element 0 is not the identity");
    // In a Latin square with a two-sided identity every row holds exactly one
    // 0, giving a right inverse; two-sidedness follows from associativity.
    node.inverses.assign(n, 0);
    for (std::uint64_t g = 0; g < n; ++g)
        for (std::uint64_t h = 0; h < n; ++h)
            if (node.table[g * n + h] == 0) {
                node.inverses[g] = static_cast<Elem>(h);
                break;
            }
    if (n <= opts.associativity_cap || opts.cap_override) {
        const auto& t = node.table;
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b) {
                const std::uint64_t ab = t[a * n + b];
                for (std::uint64_t c = 0; c < n; ++c)
                    if (t[ab * n + c] != t[a * n + t[b * n + c]])
                        fail(ErrorKind::invalid_spec,
                             "malformed table: associativity fails at (" + std::to_string(a) + "," +
                                 std::to_string(b) + "," + std::to_string(c) + ")");
            }
    } else {
        for (std::uint64_t g = 0; g < n; ++g)
            if (node.table[node.inverses[g] * n + g] != 0)
                fail(ErrorKind::invalid_spec, "malformed table: element " + std::to_string(g) +
                                                  " has no two-sided inverse");
    }
}

std::unique_ptr<Node> build(const GroupSpec& spec, const ConstructOptions& opts)
{
    auto node = std::make_unique<Node>();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CyclicSpec>) {
                if (s.order < 1)
                    fail(ErrorKind::invalid_spec, "cyclic order must be at least 1");
                if (s.order > opts.max_order)
                    fail(ErrorKind::cap_exceeded,
                         "group order exceeds configured maximum " + std::to_string(opts.max_order));
                node->kind = Node::Kind::cyclic;
                node->order = s.order;
            } else if constexpr (std::is_same_v<T, DirectSpec>) {
                if (s.factors.size() != 2)
                    fail(ErrorKind::invalid_spec, "direct product needs exactly two factors");
                node->kind = Node::Kind::direct;
                node->left = build(s.factors[0], opts);
                node->right = build(s.factors[1], opts);
                node->order = checked_mul(node->left->order, node->right->order, opts.max_order);
            } else if constexpr (std::is_same_v<T, SemidirectSpec>) {
                if (s.modulus < 1 || s.quotient < 1)
                    fail(ErrorKind::invalid_spec, "semidirect modulus and quotient must be positive");
                if (s.rank < 1 || s.rank > detail::max_rank)
                    fail(ErrorKind::invalid_spec, "semidirect rank must be in 1..16");
                if (s.matrix.size() != s.rank)
                    fail(ErrorKind::invalid_spec, "invalid matrix: expected " + std::to_string(s.rank) + " rows");
                node->kind = Node::Kind::semidirect;
                node->modulus = s.modulus;
                node->rank = s.rank;
                node->quotient = s.quotient;
                node->normal_order = 1;
                for (std::size_t i = 0; i < s.rank; ++i)
                    node->normal_order = checked_mul(node->normal_order, s.modulus, opts.max_order);
                node->order = checked_mul(node->normal_order, s.quotient, opts.max_order);
                ModMatrix m(s.rank, s.modulus);
                for (std::size_t r = 0; r < s.rank; ++r) {
                    if (s.matrix[r].size() != s.rank)
                        fail(ErrorKind::invalid_spec, "invalid matrix: row " + std::to_string(r) + " has wrong length");
                    for (std::size_t c = 0; c < s.rank; ++c)
                        m(r, c) = reduce_mod(s.matrix[r][c], s.modulus);
                }
                const std::uint64_t det = m.determinant();
                if (std::gcd(det, s.modulus) != 1)
                    fail(ErrorKind::invalid_spec, "invalid matrix: determinant " + std::to_string(det) +
                                                      " is not a unit mod " + std::to_string(s.modulus));
                if (!m.pow(s.quotient).is_identity())
                    fail(ErrorKind::invalid_spec, "invalid matrix: M^" + std::to_string(s.quotient) +
                                                      " is not the identity mod " + std::to_string(s.modulus));
                node->action = m;
                if (s.quotient * s.rank * s.rank <= (std::uint64_t{1} << 22)) {
                    node->action_powers.reserve(s.quotient);
                    ModMatrix p = ModMatrix::identity(s.rank, s.modulus);
                    for (std::uint64_t z = 0; z < s.quotient; ++z) {
                        node->action_powers.push_back(p);
                        p = p * m;
                    }
                }
            } else {
                validate_table(*node, s, opts);
            }
        },
        spec.node);
    return node;
}

void collect_generators(const Node& node, std::uint64_t stride, std::vector<Elem>& out)
{
    switch (node.kind) {
    case Node::Kind::cyclic:
        if (node.order > 1)
            out.push_back(static_cast<Elem>(stride));
        break;
    case Node::Kind::direct:
        collect_generators(*node.left, stride, out);
        collect_generators(*node.right, stride * node.left->order, out);
        break;
    case Node::Kind::semidirect: {
        if (node.modulus > 1) {
            std::uint64_t unit = 1;
            for (std::size_t i = 0; i < node.rank; ++i, unit *= node.modulus)
                out.push_back(static_cast<Elem>(stride * unit));
        }
        if (node.quotient > 1)
            out.push_back(static_cast<Elem>(stride * node.normal_order));
        break;
    }
    case Node::Kind::table: {
        // Greedy: add the least element outside the current subgroup.
        const std::uint64_t n = node.order;
        std::vector<std::uint8_t> in(n, 0);
        std::vector<Elem> members{0};
        in[0] = 1;
        std::vector<Elem> gens;
        for (std::uint64_t g = 1; g < n; ++g) {
            if (in[g])
                continue;
            gens.push_back(static_cast<Elem>(g));
            std::vector<Elem> frontier = members;
            while (!frontier.empty()) {
                std::vector<Elem> next;
                for (Elem x : frontier)
                    for (Elem s : gens) {
                        const Elem y = node.table[std::uint64_t{x} * n + s];
                        if (!in[y]) {
                            in[y] = 1;
                            members.push_back(y);
                            next.push_back(y);
                        }
                    }
                frontier.swap(next);
            }
        }
        for (Elem g : gens)
            out.push_back(static_cast<Elem>(stride * g));
        break;
    }
    }
}

bool structurally_abelian(const Node& node)
{
    switch (node.kind) {
    case Node::Kind::cyclic:
        return true;
    case Node::Kind::direct:
        return structurally_abelian(*node.left) && structurally_abelian(*node.right);
    case Node::Kind::semidirect:
        return node.modulus == 1 || node.quotient == 1 || node.action.is_identity();
    case Node::Kind::table: {
        std::vector<Elem> gens;
        collect_generators(node, 1, gens);
        for (Elem a : gens)
            for (Elem b : gens)
                if (node.op(a, b) != node.op(b, a))
                    return false;
        return true;
    }
    }
    return true;
}

} // namespace

Group Group::construct(const GroupSpec& spec, const ConstructOptions& opts)
{
    auto impl = std::make_shared<Impl>();
    impl->spec = spec;
    impl->root = build(spec, opts);
    impl->id = next_group_id.fetch_add(1);
    collect_generators(*impl->root, 1, impl->generators);
    impl->abelian = structurally_abelian(*impl->root);
    const std::uint64_t n = impl->root->order;
    const auto kind = impl->root->kind;
    if (kind != Node::Kind::cyclic && kind != Node::Kind::table && n <= opts.materialize_limit) {
        impl->table.resize(n * n);
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b)
                impl->table[a * n + b] = impl->root->op(static_cast<Elem>(a), static_cast<Elem>(b));
    }
    return Group(std::move(impl));
}

Group make_table_group_unchecked(std::vector<Elem> table, std::uint64_t n)
{
    auto impl = std::make_shared<Group::Impl>();
    TableSpec ts;
    ts.table.assign(n, std::vector<std::int64_t>(n));
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b)
            ts.table[a][b] = table[a * n + b];
    impl->spec = GroupSpec{std::move(ts)};
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::table;
    node->order = n;
    node->table = std::move(table);
    node->inverses.assign(n, 0);
    for (std::uint64_t g = 0; g < n; ++g)
        for (std::uint64_t h = 0; h < n; ++h)
            if (node->table[g * n + h] == 0) {
                node->inverses[g] = static_cast<Elem>(h);
                break;
            }
    impl->root = std::move(node);
    impl->id = next_group_id.fetch_add(1);
    collect_generators(*impl->root, 1, impl->generators);
    impl->abelian = structurally_abelian(*impl->root);
    return Group(std::move(impl));
}

std::uint64_t Group::order() const { return impl_->root->order; }

void Group::check(Elem a) const
{
    if (a >= order())
        fail(ErrorKind::invalid_argument,
             "element index " + std::to_string(a) + " out of range for group of order " + std::to_string(order()));
}

Elem Group::op(Elem a, Elem b) const
{
    check(a);
    check(b);
    return mul(a, b);
}

Elem Group::mul(Elem a, Elem b) const noexcept
{
    if (!impl_->table.empty())
        return impl_->table[std::uint64_t{a} * order() + b];
    return impl_->root->op(a, b);
}

Elem Group::op_structural(Elem a, Elem b) const
{
    check(a);
    check(b);
    return impl_->root->op(a, b);
}

Elem Group::inverse(Elem a) const
{
    check(a);
    return impl_->root->inverse(a);
}

Elem Group::power(Elem a, std::int64_t e) const
{
    check(a);
    Elem base = e < 0 ? inverse(a) : a;
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    Elem result = identity();
    while (k) {
        if (k & 1)
            result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

std::uint64_t Group::element_order(Elem a) const
{
    check(a);
    std::uint64_t t = 1;
    for (Elem x = a; x != identity(); x = mul(x, a))
        ++t;
    return t;
}

bool Group::is_cyclic() const { return impl_->root->kind == Node::Kind::cyclic; }
bool Group::is_table() const { return impl_->root->kind == Node::Kind::table; }
bool Group::is_abelian() const { return impl_->abelian; }
const std::vector<Elem>& Group::generators() const { return impl_->generators; }
const GroupSpec& Group::spec() const { return impl_->spec; }
bool Group::has_table() const { return !impl_->table.empty() || is_table(); }
std::uint64_t Group::id() const { return impl_->id; }
const detail::Node& Group::root() const { return *impl_->root; }

std::vector<Elem> Group::cayley_table() const
{
    const std::uint64_t n = order();
    if (n > 4096)
        fail(ErrorKind::cap_exceeded, "refusing to materialize a Cayley table above order 4096");
    std::vector<Elem> t(n * n);
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b)
            t[a * n + b] = impl_->root->op(static_cast<Elem>(a), static_cast<Elem>(b));
    return t;
}

std::optional<std::uint64_t> minimal_torsion(const Group& g)
{
    return smallest_prime_factor(g.order());
}

} // namespace setadd
