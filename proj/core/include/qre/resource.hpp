#pragma once

#include <functional>

#include "qre/graph.hpp"

namespace qre {

using LeafPredicate = std::function<bool(const Bloq&)>;

/// Caller→callee multiplicity DAG recovered from declared callee lists or, in
/// their absence, full decompositions.
class CallGraph {
public:
    const BloqPtr& root() const { return root_; }
    const std::map<std::string, BloqPtr>& nodes() const { return nodes_; }
    /// Out-edges of a node: (callee key, multiplicity), deterministic order.
    const std::vector<std::pair<std::string, SymExpr>>& edges_of(const std::string& key) const;
    bool is_leaf(const std::string& key) const { return edges_.at(key).empty(); }
    std::vector<BloqPtr> leaves() const;

    /// Total multiplicity with which each node is reached from the root.
    std::map<std::string, SymExpr> reach_counts() const;

    /// Graphviz rendering; annotate maps a bloq to an extra label line.
    std::string to_dot(const std::function<std::string(const Bloq&)>& annotate = nullptr) const;

private:
    friend CallGraph build_call_graph(const BloqPtr&, const LeafPredicate&, int);
    BloqPtr root_;
    std::map<std::string, BloqPtr> nodes_;
    std::map<std::string, std::vector<std::pair<std::string, SymExpr>>> edges_;
};

/// The callee multiset of one bloq, by the same resolution order the
/// analyses use: declared callees first, else the full decomposition
/// (bookkeeping instances dropped), else empty for costed leaves.
std::vector<Callee> direct_callees(const Bloq& b);

CallGraph build_call_graph(const BloqPtr& root, const LeafPredicate& leaf = nullptr,
                           int max_depth = -1);

/// Factored gate counts of the whole call tree under `root`, memoized by
/// bloq identity. Symbolic multiplicities propagate symbolically.
GateCounts gate_counts(const BloqPtr& root);
/// Aggregated per the policy (rotations and Toffolis folded into T).
GateCounts gate_counts(const BloqPtr& root, const AggregationPolicy& policy);

/// Min-max qubit count under the sequential-execution model: callees run one
/// after another in builder topological order; a step costs the callee's own
/// peak plus every idle bystander qubit alive at that step.
SymExpr qubit_count(const BloqPtr& root);

/// Result of comparing declared callees against the full decomposition.
struct CrosscheckReport {
    bool has_both = false;
    bool pass = false;
    std::vector<std::string> diffs;
    std::string str() const;
};

CrosscheckReport crosscheck_callees(const Bloq& b);

/// True for the structural wiring bloqs (Split/Join/Allocate/Free) that
/// callee declarations conventionally omit.
bool is_bookkeeping(const Bloq& b);

}  // namespace qre
