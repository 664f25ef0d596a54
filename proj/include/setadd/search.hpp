#pragma once

// Exhaustive and sliced verification runs. Every run is partitioned into
// fixed chunks that are merged in chunk order, so reports do not depend on
// the number of worker threads.

#include "setadd/group.hpp"
#include "setadd/morphism.hpp"
#include "setadd/structure.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace setadd {

enum class SearchMode { all_pairs, ap_pairs_same_difference, geometric_pairs_same_ratio, self_pairs, supplied_candidates };
enum class Normalization { none, affine };
enum class PairFilter { none, chowla };
enum class BoundType { cd, eh };

std::string to_string(SearchMode m);
std::string to_string(Normalization n);
std::string to_string(PairFilter f);
std::string to_string(BoundType b);

struct SizeRange {
    std::size_t min = 1;
    /// 0 means |G|.
    std::size_t max = 0;
};

/// (a, q, b) triples for right/left progressions {a q^s}, {q^t b}.
struct GeometricSlice {
    std::vector<Elem> ratios;
    Elem a_begin = 0;
    std::uint64_t a_count = 0;
    Elem b_begin = 0;
    std::uint64_t b_count = 0;
    std::vector<std::array<Elem, 3>> extra_triples;
};

/// Default slice: generators and their pairwise products as ratios (keeping
/// those of order > k+l-2), anchors from a window starting at the last
/// generator, sized to about 10^4 triples.
GeometricSlice default_geometric_slice(const Group& g, std::size_t k, std::size_t l);

struct SearchTask {
    GroupSpec group = GroupSpec::cyclic(1);
    AutomorphismSpec theta;
    SizeRange k, l;
    SearchMode mode = SearchMode::all_pairs;
    Normalization normalization = Normalization::none;
    PairFilter filter = PairFilter::none;
    std::uint32_t shard_index = 0;
    std::uint32_t shard_total = 1;
    std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> candidates;
    std::optional<GeometricSlice> slice;
    bool cap_override = false;
};

struct RunOptions {
    unsigned workers = 1;
    /// Upper limit on critical pairs kept for streaming / CSV output.
    std::size_t keep_critical = 1'000'000;
};

struct PairRecord {
    std::vector<Elem> a, b;
    std::uint64_t universe = 0;
    std::size_t product_size = 0;
    std::int64_t bound = 0;
    std::string case_label;
    std::string note;
};

struct VerificationReport {
    std::string verifier;
    nlohmann::ordered_json task;
    std::uint64_t instances_checked = 0;
    /// Pairs accounted for; differs from instances_checked only under normalization.
    std::uint64_t instances_covered = 0;
    std::uint64_t critical_pairs_found = 0;
    std::vector<PairRecord> critical_samples;
    std::uint64_t violation_count = 0;
    std::vector<PairRecord> bound_violations;
    std::uint64_t failure_count = 0;
    std::vector<PairRecord> classification_failures;
    std::map<std::string, std::uint64_t> case_counts;
    std::vector<std::string> notes;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    double elapsed_ms = 0;

    bool has_findings() const { return violation_count != 0 || failure_count != 0; }
};

inline constexpr std::size_t report_sample_limit = 10;
inline constexpr std::size_t report_list_limit = 100;

VerificationReport verify_cd_bound(const SearchTask& task, const RunOptions& opts = {});
VerificationReport verify_eh_bound(const SearchTask& task, const RunOptions& opts = {});

/// Chowla's composite-modulus bound over Z/m: 0 in B, other members of B
/// coprime to m, |A+B| >= min(m, |A|+|B|-1).
VerificationReport verify_chowla(std::uint64_t m, const RunOptions& opts = {});

/// |AB| >= |A| + |B|/2 unless AB(B^-1 B) = AB, over the task's pairs.
VerificationReport verify_olson(const SearchTask& task, const RunOptions& opts = {});

/// Critical pairs in ascending enumeration order, each classified with the
/// taxonomy that applies to the group. `sink` (optional) sees every critical pair.
VerificationReport enumerate_critical_pairs(const SearchTask& task, BoundType bound, const RunOptions& opts = {},
                                            const std::function<void(const PairRecord&)>& sink = {});

/// Same-difference AP pairs in Z/n of lengths k and l: critical implies A = B.
VerificationReport verify_thm_5_1(std::uint64_t n, std::size_t k, std::size_t l, const RunOptions& opts = {});

/// Right progression A and left progression B with a shared ratio:
/// critical implies shared endpoints.
VerificationReport verify_thm_6_1(const GroupSpec& spec, std::size_t k, std::size_t l,
                                  const std::optional<GeometricSlice>& slice = std::nullopt,
                                  const RunOptions& opts = {});

struct DuPanTask {
    GroupSpec group = GroupSpec::cyclic(1);
    std::vector<std::vector<Elem>> candidates;
    std::uint64_t sample_count = 0;
    std::size_t sample_size = 4;
    std::uint64_t seed = 1;
};

/// |A .iota A| = 2|A|-3 with |A| < (p(G)+3)/2 implies A is commutative.
VerificationReport verify_du_pan_commutativity(const DuPanTask& task, const RunOptions& opts = {});

/// Over all k-subsets of Z/p: |A .+ A| = 2k-3 iff A is an arithmetic progression.
VerificationReport verify_inverse_dh(std::uint64_t p, std::size_t k, const RunOptions& opts = {});

/// The (Z/47 x Z/47) x| Z/23 critical pair reproduction.
VerificationReport reproduce_example_4_13();

/// Group descriptor of the reproduction group.
GroupSpec example_4_13_group();

} // namespace setadd
