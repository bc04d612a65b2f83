#pragma once

#include "json.hpp"

#include "qre/classical.hpp"
#include "qre/resource.hpp"

namespace qre {

using Json = nlohmann::ordered_json;

/// Versioned, byte-stable JSON documents for golden tests and CLI output.
Json to_json(const SymExpr& e);
Json to_json(const GateCounts& g);
Json to_json(const ComputeGraph& g);
Json to_json(const CallGraph& g);
Json to_json(const FuzzReport& r);

}  // namespace qre
