#pragma once

#include "cullen/bounds.hpp"
#include "cullen/lifting.hpp"
#include "cullen/padic.hpp"
#include "cullen/search.hpp"

#include <json.hpp>

namespace cullen::cli {

using nlohmann::json;

// Integers go out as decimal strings; small counts and flags stay native.

json to_json(const Solution& sol, const SmoothnessBasis& basis);
json to_json(const CeilingResult& result);
json to_json(const ScanResult& result);
json to_json(const BoxMaximum& box);
json to_json(const Nu11Result& result);

json u64_list(const std::vector<std::uint64_t>& xs);
json big_list(const std::vector<BigInt>& xs);

/// Rebuilds the parts of a ceiling the verify checks read back from cache.
CeilingResult ceiling_from_json(const json& j);
ScanResult scan_from_json(const json& j);
BoxMaximum box_from_json(const json& j);
Nu11Result nu11_from_json(const json& j);

}  // namespace cullen::cli
