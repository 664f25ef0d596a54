#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace setadd {

/// Element index. Identity is always 0; structured groups use a mixed-radix
/// encoding with the first (normal / left) component varying fastest.
using Elem = std::uint32_t;

struct GroupSpec;

struct CyclicSpec {
    std::uint64_t order = 1;
};

/// Direct product of exactly two factors; index = i_left + |left| * i_right.
struct DirectSpec {
    std::vector<GroupSpec> factors;
};

/// (Z/modulus)^rank semidirect Z/quotient, where the generator of the
/// quotient acts on column vectors by `matrix`.
/// Index = (x_0 + m x_1 + ... + m^{d-1} x_{d-1}) + m^d * z.
struct SemidirectSpec {
    std::uint64_t modulus = 1;
    std::size_t rank = 1;
    std::uint64_t quotient = 1;
    std::vector<std::vector<std::int64_t>> matrix;
};

/// Cayley table, row a column b holds a*b.
struct TableSpec {
    std::vector<std::vector<std::int64_t>> table;
};

struct GroupSpec {
    std::variant<CyclicSpec, DirectSpec, SemidirectSpec, TableSpec> node;

    static GroupSpec cyclic(std::uint64_t n) { return {CyclicSpec{n}}; }
    static GroupSpec direct(GroupSpec left, GroupSpec right)
    {
        DirectSpec d;
        d.factors.push_back(std::move(left));
        d.factors.push_back(std::move(right));
        return {std::move(d)};
    }
    static GroupSpec semidirect(std::uint64_t modulus, std::size_t rank, std::uint64_t quotient,
                                std::vector<std::vector<std::int64_t>> matrix)
    {
        return {SemidirectSpec{modulus, rank, quotient, std::move(matrix)}};
    }
    static GroupSpec table(std::vector<std::vector<std::int64_t>> t) { return {TableSpec{std::move(t)}}; }
};

struct ConstructOptions {
    std::uint64_t max_order = std::uint64_t{1} << 26;
    /// Tables up to this order get the O(n^3) associativity check.
    std::uint64_t associativity_cap = 512;
    /// Structured groups up to this order get a materialized Cayley table.
    std::uint64_t materialize_limit = 512;
    bool cap_override = false;
};

namespace detail {
struct Node;
}

/// An immutable finite group. Copies share the same underlying data and
/// compare equal; subsets and automorphisms remember which group they belong to.
class Group {
public:
    static Group construct(const GroupSpec& spec, const ConstructOptions& opts = {});
    static Group cyclic(std::uint64_t n) { return construct(GroupSpec::cyclic(n)); }

    std::uint64_t order() const;
    static constexpr Elem identity() { return 0; }

    /// Product a*b with range checks.
    Elem op(Elem a, Elem b) const;
    /// Product without range checks; uses the materialized table when present.
    Elem mul(Elem a, Elem b) const noexcept;
    /// Product computed from the construction tree, never from a table.
    Elem op_structural(Elem a, Elem b) const;

    Elem inverse(Elem a) const;
    Elem power(Elem a, std::int64_t e) const;
    /// Least t >= 1 with a^t = identity.
    std::uint64_t element_order(Elem a) const;

    bool is_cyclic() const;
    bool is_abelian() const;
    bool is_table() const;

    /// A generating set: unit vectors of the construction tree, or a greedy
    /// choice for table groups.
    const std::vector<Elem>& generators() const;

    const GroupSpec& spec() const;
    bool has_table() const;
    /// Flat n*n Cayley table computed structurally. Refuses n > 4096.
    std::vector<Elem> cayley_table() const;

    std::uint64_t id() const;
    const detail::Node& root() const;

    bool contains(Elem a) const { return a < order(); }
    void check(Elem a) const;

    bool operator==(const Group& other) const { return id() == other.id(); }

private:
    struct Impl;
    explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;

    friend Group make_table_group_unchecked(std::vector<Elem> table, std::uint64_t n);
};

/// p(G): the smallest prime dividing |G|; nullopt stands for infinity (trivial group).
std::optional<std::uint64_t> minimal_torsion(const Group& g);

/// Build a table group from a table already known to be a group table with
/// identity 0 (used for quotients). Skips validation.
Group make_table_group_unchecked(std::vector<Elem> table, std::uint64_t n);

} // namespace setadd
