#pragma once

#include "setadd/group.hpp"
#include "setadd/modarith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace setadd {

namespace detail {
struct Node;
}

struct AutomorphismSpec {
    enum class Form { identity, multiplier, matrix, permutation };

    Form form = Form::identity;
    std::int64_t multiplier = 1;
    std::vector<std::vector<std::int64_t>> matrix;
    /// Path into the construction tree: "0"/"1" pick a direct factor,
    /// "normal" picks the normal part of a semidirect product. Empty means
    /// the root (cyclic) or the root's normal part (semidirect).
    std::vector<std::string> target;
    std::vector<std::int64_t> permutation;

    static AutomorphismSpec identity() { return {}; }
    static AutomorphismSpec times(std::int64_t u)
    {
        AutomorphismSpec s;
        s.form = Form::multiplier;
        s.multiplier = u;
        return s;
    }
    static AutomorphismSpec linear(std::vector<std::vector<std::int64_t>> m, std::vector<std::string> path = {})
    {
        AutomorphismSpec s;
        s.form = Form::matrix;
        s.matrix = std::move(m);
        s.target = std::move(path);
        return s;
    }
    static AutomorphismSpec perm(std::vector<std::int64_t> p)
    {
        AutomorphismSpec s;
        s.form = Form::permutation;
        s.permutation = std::move(p);
        return s;
    }
};

struct MorphismOptions {
    /// Permutation forms are checked on all pairs up to this order.
    std::uint64_t exhaustive_cap = 512;
    /// Largest order computed by repeated composition.
    std::uint64_t order_cap = 1'000'000;
    bool cap_override = false;
};

/// A verified automorphism. Arbitrary bijections are rejected at construction.
class Automorphism {
public:
    static Automorphism identity(const Group& g);
    static Automorphism make(const Group& g, const AutomorphismSpec& spec, const MorphismOptions& opts = {});

    Elem apply(Elem a) const;
    Elem map(Elem a) const noexcept;

    /// Order in Aut(G); throws cap_exceeded when it could not be computed.
    std::uint64_t order() const;
    /// 1 when the order is even, else 0.
    int delta() const { return order() % 2 == 0 ? 1 : 0; }

    bool is_identity() const { return spec_.form == AutomorphismSpec::Form::identity; }
    const Group& group() const { return group_; }
    const AutomorphismSpec& spec() const { return spec_; }

private:
    explicit Automorphism(Group g) : group_(std::move(g)) {}

    Group group_;
    AutomorphismSpec spec_;
    std::optional<std::uint64_t> order_;

    // multiplier
    std::uint64_t unit_ = 1;
    // matrix acting on the digit block [stride, stride * block)
    ModMatrix matrix_;
    std::uint64_t stride_ = 1;
    std::uint64_t block_ = 1;
    // permutation
    std::vector<Elem> perm_;
};

} // namespace setadd
