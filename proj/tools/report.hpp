#pragma once

#include <map>
#include <string>

#include "qre/physical.hpp"
#include "qre/resource.hpp"
#include "qre/serialize.hpp"

namespace qre::cli {

struct CountOptions {
    AggregationPolicy policy;
    std::string policy_name = "four";
    bool symbolic = false;
    bool breakdown = false;
};

/// Gate-count report document. Numeric fields are reproducible functions of
/// the inputs; nothing time- or host-dependent enters the JSON.
Json count_report(const std::string& bloq_name,
                  const std::map<std::string, std::string>& params, const BloqPtr& bloq,
                  const CountOptions& opts);
std::string render_count_table(const Json& report);

/// Physical-resource report document.
Json physical_report(const std::map<std::string, std::string>& invocation,
                     const LogicalCounts& counts, const DesignResult& design);
std::string render_physical_table(const Json& report);

/// DOT rendering of the call graph, each node annotated with its subtree
/// gate tallies.
std::string callgraph_dot(const BloqPtr& root, int max_depth);

}  // namespace qre::cli
