#pragma once

// Progression detection and critical-pair classification against the
// inverse-theorem case lists (Vosper, Karolyi, inverse Dias da Silva-Hamidoune,
// and the nonabelian shared-endpoint form).

#include "setadd/group.hpp"
#include "setadd/subset.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace setadd {

enum class ProgressionKind { arithmetic, right_geometric, left_geometric };

/// Materializes as {a + i d} (arithmetic, cyclic groups), {a q^i} (right) or
/// {q^i a} (left) for 0 <= i < length. Length-1 descriptors carry the
/// identity as a step marker.
struct ProgressionDescriptor {
    ProgressionKind kind = ProgressionKind::arithmetic;
    Elem anchor = 0;
    Elem step = 0;
    std::size_t length = 0;

    bool operator==(const ProgressionDescriptor&) const = default;
};

/// Elements in progression order.
std::vector<Elem> materialize(const Group& g, const ProgressionDescriptor& d);

/// True iff the descriptor produces `length` distinct elements equal to `s`.
bool describes(const Group& g, const ProgressionDescriptor& d, const Subset& s);

/// All (anchor, step) descriptions of an arithmetic progression in a cyclic
/// group, canonical first: steps in 1..n/2 before the rest, ascending, then
/// ascending anchor. Singletons get step 1.
std::vector<ProgressionDescriptor> arithmetic_progression_descriptors(const Group& g, const Subset& a);

/// All right (left) geometric descriptions, ordered by anchor index then step index.
std::vector<ProgressionDescriptor> right_geometric_descriptors(const Group& g, const Subset& a);
std::vector<ProgressionDescriptor> left_geometric_descriptors(const Group& g, const Subset& b);

std::optional<ProgressionDescriptor> right_geometric_descriptor(const Group& g, const Subset& a);
std::optional<ProgressionDescriptor> left_geometric_descriptor(const Group& g, const Subset& b);

/// Anchors equal and a q^{k-1} = q^{l-1} a. Throws when the steps differ.
bool shares_endpoints(const Group& g, const ProgressionDescriptor& right, const ProgressionDescriptor& left);

enum class Taxonomy { vosper, karolyi_cd, inverse_dh, conjecture_ieh };

std::string to_string(Taxonomy t);
std::string to_string(ProgressionKind k);

struct ClassificationWitness {
    std::optional<ProgressionDescriptor> progression_a;
    std::optional<ProgressionDescriptor> progression_b;
    std::optional<Elem> complement;          // Vosper (iii): the missing element c
    std::optional<Elem> subgroup_generator;  // Karolyi (iii): generator of F
    std::optional<Elem> u, v, z;             // Karolyi (iii)
    std::optional<std::array<Elem, 3>> quad; // inverse DH (ii): (a, d, c)
};

struct CriticalPairClassification {
    Taxonomy taxonomy = Taxonomy::vosper;
    std::string case_label;
    ClassificationWitness witness;
};

/// Vosper's cases for a CD-critical pair in Z/p, first match in order
/// (i), (ii), (iii), (iv). nullopt when the pair is not critical or no case
/// matches. Throws for non-cyclic groups or composite order.
std::optional<CriticalPairClassification> vosper_classify(const Group& g, const Subset& a, const Subset& b);

struct KarolyiOptions {
    /// Largest group searched for case (iii) subgroups.
    std::uint64_t subgroup_search_cap = 4096;
};

/// Karolyi's inverse Cauchy-Davenport cases for any finite group. nullopt
/// when |AB| != k+l-1, k+l-1 > p(G)-1, or no case matches.
std::optional<CriticalPairClassification> karolyi_cd_classify(const Group& g, const Subset& a, const Subset& b,
                                                              const KarolyiOptions& opts = {});

/// Cases of the A = B restricted inverse theorem in Z/p. nullopt when
/// |A .+ A| != 2|A|-3, p < 2|A|-2, or no case matches.
std::optional<CriticalPairClassification> inverse_dh_classify(const Group& g, const Subset& a);

/// Whether the nonabelian conjecture's hypotheses hold: k, l >= 3,
/// k+l-3 < p(G), G non-nilpotent, and |A .iota B| = k+l-3.
bool conjecture_ieh_applies(const Group& g, const Subset& a, const Subset& b);

/// Right/left progressions with a common ratio, a common anchor and shared
/// endpoints. nullopt when the hypotheses fail or no such description exists;
/// the second case on a critical pair is a counterexample candidate.
std::optional<CriticalPairClassification> conjecture_ieh_classify(const Group& g, const Subset& a,
                                                                  const Subset& b);

/// Re-derives the case from the witness data alone.
bool verify_classification(const Group& g, const Subset& a, const Subset& b, const CriticalPairClassification& c);

} // namespace setadd
