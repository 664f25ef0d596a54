#pragma once

// JSON descriptors, set literals and report serialization.

#include "setadd/group.hpp"
#include "setadd/morphism.hpp"
#include "setadd/search.hpp"
#include "setadd/structure.hpp"
#include "setadd/subset.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace setadd {

using ojson = nlohmann::ordered_json;

/// {"cyclic": n} | {"direct": [spec, spec]} |
/// {"semidirect": {"normal": {"modulus": m, "rank": d}, "quotient": h, "matrix": [[...]]}} |
/// {"table": [[...]]}
GroupSpec group_spec_from_json(const nlohmann::json& j);
ojson to_json(const GroupSpec& spec);

/// {"identity": true} | {"multiplier": u} | {"matrix": [[...]], "target": [...]} | {"permutation": [...]}
AutomorphismSpec automorphism_spec_from_json(const nlohmann::json& j);
ojson to_json(const AutomorphismSpec& spec);

/// Flat index or a nested tuple following the construction tree:
/// direct -> [left, right], semidirect -> [[x_0, ..., x_{d-1}], z].
Elem element_from_json(const Group& g, const nlohmann::json& j);
ojson element_to_json(const Group& g, Elem a);

/// "0,1,2" | "[[0,0],1];[[2,0],1]" | "0x1f" | a JSON array of elements.
Subset parse_subset(const Group& g, std::string_view literal);
Subset subset_from_json(const Group& g, const nlohmann::json& j);

/// "3" or "3..5".
SizeRange parse_size_range(std::string_view text);

SearchTask task_from_json(const nlohmann::json& j);
ojson to_json(const SearchTask& task);
ojson to_json(const GeometricSlice& slice);
GeometricSlice slice_from_json(const nlohmann::json& j);

ojson to_json(const Group& g, const ProgressionDescriptor& d);
ojson to_json(const Group& g, const CriticalPairClassification& c, bool verified);

ojson to_json(const PairRecord& r);
ojson to_json(const VerificationReport& r);
/// Drops timing so reports can be compared byte for byte.
ojson deterministic_payload(const VerificationReport& r);

/// Hex bit-vector of an element list over a group of the given order.
std::string hex_of(const std::vector<Elem>& elems, std::uint64_t universe);

/// Columns A-bits-hex, B-bits-hex, |A|, |B|, |product|, case_label.
std::string critical_pairs_csv(const std::vector<PairRecord>& records);

} // namespace setadd
