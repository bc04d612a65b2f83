#include "qre/resource.hpp"

#include <algorithm>

#include "qre/bookkeeping.hpp"

namespace qre {

bool is_bookkeeping(const Bloq& b) {
    return dynamic_cast<const Split*>(&b) || dynamic_cast<const Join*>(&b) ||
           dynamic_cast<const Allocate*>(&b) || dynamic_cast<const Free*>(&b);
}

std::vector<Callee> direct_callees(const Bloq& b) {
    if (auto declared = b.callees()) {
        // merge duplicates by identity
        std::map<std::string, size_t> seen;
        std::vector<Callee> out;
        for (const auto& c : *declared) {
            std::string k = c.bloq->key();
            auto it = seen.find(k);
            if (it == seen.end()) {
                seen.emplace(k, out.size());
                out.push_back(c);
            } else {
                out[it->second].multiplicity = out[it->second].multiplicity + c.multiplicity;
            }
        }
        return out;
    }
    if (b.has_decomposition()) {
        std::vector<Callee> out;
        for (const auto& [k, bc] : decompose(b).instance_counts()) {
            if (is_bookkeeping(*bc.first)) continue;
            out.push_back(Callee{bc.first, SymExpr::integer(bc.second)});
        }
        return out;
    }
    return {};
}

// ---------------------------------------------------------------- call graph

const std::vector<std::pair<std::string, SymExpr>>& CallGraph::edges_of(
    const std::string& key) const {
    auto it = edges_.find(key);
    if (it == edges_.end()) throw Error("unknown call-graph node: " + key);
    return it->second;
}

std::vector<BloqPtr> CallGraph::leaves() const {
    std::vector<BloqPtr> out;
    for (const auto& [k, b] : nodes_)
        if (edges_.at(k).empty()) out.push_back(b);
    return out;
}

std::map<std::string, SymExpr> CallGraph::reach_counts() const {
    // Kahn order over the call DAG, accumulating multiplicities.
    std::map<std::string, int> indeg;
    for (const auto& [k, b] : nodes_) indeg[k] = 0;
    for (const auto& [k, es] : edges_)
        for (const auto& [ck, m] : es) ++indeg[ck];
    std::vector<std::string> ready;
    for (const auto& [k, d] : indeg)
        if (d == 0) ready.push_back(k);
    std::map<std::string, SymExpr> counts;
    counts[root_->key()] = SymExpr::integer(1);
    while (!ready.empty()) {
        std::sort(ready.begin(), ready.end(), std::greater<>());
        std::string k = ready.back();
        ready.pop_back();
        auto cit = counts.find(k);
        SymExpr mine = cit == counts.end() ? SymExpr::integer(0) : cit->second;
        for (const auto& [ck, m] : edges_.at(k)) {
            auto [it, inserted] = counts.emplace(ck, mine * m);
            if (!inserted) it->second = it->second + mine * m;
            if (--indeg[ck] == 0) ready.push_back(ck);
        }
    }
    return counts;
}

std::string CallGraph::to_dot(const std::function<std::string(const Bloq&)>& annotate) const {
    std::map<std::string, int> ids;
    for (const auto& [k, b] : nodes_) ids.emplace(k, static_cast<int>(ids.size()));
    std::string out = "digraph callgraph {\n  rankdir=TB;\n  node [shape=box];\n";
    for (const auto& [k, b] : nodes_) {
        std::string label = b->name();
        AttrMap attrs = b->attributes();
        if (!attrs.empty()) {
            label += "(";
            bool first = true;
            for (const auto& [a, v] : attrs) {
                if (!first) label += ", ";
                first = false;
                label += a + "=" + attr_str(v);
            }
            label += ")";
        }
        if (annotate) {
            std::string extra = annotate(*b);
            if (!extra.empty()) label += "\\n" + extra;
        }
        out += "  n" + std::to_string(ids.at(k)) + " [label=\"" + label + "\"];\n";
    }
    for (const auto& [k, es] : edges_)
        for (const auto& [ck, m] : es)
            out += "  n" + std::to_string(ids.at(k)) + " -> n" + std::to_string(ids.at(ck)) +
                   " [label=\"" + m.str() + "\"];\n";
    return out + "}\n";
}

namespace {

void build_cg(const BloqPtr& b, const LeafPredicate& leaf, int depth_left, CallGraph& g,
              std::map<std::string, std::vector<std::pair<std::string, SymExpr>>>& edges,
              std::map<std::string, BloqPtr>& nodes, std::set<std::string>& on_path) {
    std::string k = b->key();
    if (on_path.count(k)) throw CycleDetected("bloq reachable from itself: " + b->name());
    if (nodes.count(k)) return;
    nodes.emplace(k, b);
    edges[k];  // ensure entry
    bool stop = (leaf && leaf(*b)) || depth_left == 0;
    if (!stop && !b->callees() && !b->has_decomposition()) {
        if (b->leaf_gate_counts() || b->qubit_annotation()) stop = true;
        else
            throw MissingDecomposition(b->name() +
                                       " has neither callees nor a decomposition");
    }
    if (stop) return;
    on_path.insert(k);
    for (const auto& c : direct_callees(*b)) {
        edges[k].emplace_back(c.bloq->key(), c.multiplicity);
        build_cg(c.bloq, leaf, depth_left < 0 ? -1 : depth_left - 1, g, edges, nodes, on_path);
    }
    on_path.erase(k);
}

}  // namespace

CallGraph build_call_graph(const BloqPtr& root, const LeafPredicate& leaf, int max_depth) {
    CallGraph g;
    g.root_ = root;
    std::set<std::string> on_path;
    build_cg(root, leaf, max_depth, g, g.edges_, g.nodes_, on_path);
    return g;
}

// ---------------------------------------------------------------- gate counts

namespace {

GateCounts counts_rec(const BloqPtr& b, std::map<std::string, GateCounts>* memo,
                      std::set<std::string>& on_path) {
    std::string k = b->key();
    if (memo) {
        auto it = memo->find(k);
        if (it != memo->end()) return it->second;
    }
    if (on_path.count(k)) throw CycleDetected("bloq reachable from itself: " + b->name());
    GateCounts total;
    if (b->callees() || b->has_decomposition()) {
        on_path.insert(k);
        if (auto declared = b->callees()) {
            for (const auto& c : direct_callees(*b))
                total += counts_rec(c.bloq, memo, on_path).scaled(c.multiplicity);
        } else {
            for (const auto& [ck, bc] : decompose(*b).instance_counts())
                total += counts_rec(bc.first, memo, on_path)
                             .scaled(SymExpr::integer(bc.second));
        }
        on_path.erase(k);
    } else if (auto leaf = b->leaf_gate_counts()) {
        total = *leaf;
    } else {
        throw UncostedLeaf(b->name() + " has no gate identity, callees or decomposition");
    }
    if (memo) memo->emplace(k, total);
    return total;
}

}  // namespace

GateCounts gate_counts(const BloqPtr& root) {
    std::map<std::string, GateCounts> memo;
    std::set<std::string> on_path;
    return counts_rec(root, &memo, on_path);
}

GateCounts gate_counts(const BloqPtr& root, const AggregationPolicy& policy) {
    return gate_counts(root).aggregate(policy);
}

// ---------------------------------------------------------------- qubit count

namespace {

SymExpr qubits_rec(const BloqPtr& b, std::map<std::string, SymExpr>& memo) {
    std::string k = b->key();
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    SymExpr result = SymExpr::integer(0);
    if (auto ann = b->qubit_annotation()) {
        result = *ann;
    } else if (!b->has_decomposition()) {
        result = b->signature().total_qubits().simplify();
    } else {
        ComputeGraph g = decompose(*b);
        SymExpr alive = g.signature().total_left_qubits();
        SymExpr peak = alive;
        for (int ni : g.topo_order()) {
            const BloqPtr& inst = g.nodes()[static_cast<size_t>(ni)];
            Signature sig = inst->signature();
            SymExpr l = sig.total_left_qubits();
            SymExpr r = sig.total_right_qubits();
            SymExpr p = qubits_rec(inst, memo);
            peak = SymExpr::max(peak, alive - l + p);
            alive = alive - l + r;
        }
        result = SymExpr::max(peak, alive).simplify();
    }
    memo.emplace(k, result);
    return result;
}

}  // namespace

SymExpr qubit_count(const BloqPtr& root) {
    std::map<std::string, SymExpr> memo;
    return qubits_rec(root, memo);
}

// ---------------------------------------------------------------- crosscheck

std::string CrosscheckReport::str() const {
    if (!has_both) return "skipped: bloq does not define both callees and a decomposition";
    if (pass) return "pass";
    std::string s = "mismatch:";
    for (const auto& d : diffs) s += "\n  " + d;
    return s;
}

CrosscheckReport crosscheck_callees(const Bloq& b) {
    CrosscheckReport rep;
    if (!b.callees() || !b.has_decomposition()) return rep;
    rep.has_both = true;

    std::map<std::string, long long> derived;
    for (const auto& [k, bc] : decompose(b).instance_counts()) {
        if (is_bookkeeping(*bc.first)) continue;
        derived[k] += bc.second;
    }
    std::map<std::string, long long> declared;
    auto declared_list = b.callees();
    for (const auto& c : *declared_list) {
        auto m = c.multiplicity.simplify().as_integer();
        if (!m) {
            rep.diffs.push_back(c.bloq->name() + ": declared multiplicity is symbolic (" +
                                c.multiplicity.str() + "), cannot compare");
            continue;
        }
        declared[c.bloq->key()] += *m;
    }
    for (const auto& [k, n] : declared) {
        auto it = derived.find(k);
        long long found = it == derived.end() ? 0 : it->second;
        if (found != n)
            rep.diffs.push_back(k + ": declared " + std::to_string(n) + ", found " +
                                std::to_string(found));
    }
    for (const auto& [k, n] : derived)
        if (!declared.count(k))
            rep.diffs.push_back(k + ": declared 0, found " + std::to_string(n));
    rep.pass = rep.diffs.empty();
    return rep;
}

}  // namespace qre
