#pragma once

#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "qre/bloq.hpp"

namespace qre {

/// Connection point: (instance, register index, flat element index).
/// Instance -1 is the graph's left boundary (a source of wires), -2 the
/// right boundary (a sink). Whether a port acts as source or sink follows
/// from its position in a connect() call.
struct Port {
    static constexpr int kLeft = -1;
    static constexpr int kRight = -2;
    int node = kLeft;
    int reg = 0;
    int idx = 0;

    friend bool operator==(const Port& a, const Port& b) {
        return a.node == b.node && a.reg == b.reg && a.idx == b.idx;
    }
    friend bool operator<(const Port& a, const Port& b) {
        return std::tie(a.node, a.reg, a.idx) < std::tie(b.node, b.reg, b.idx);
    }
};

struct Wire {
    Port src;
    Port dst;
    QDType dtype;
};

/// Finalized dataflow DAG of bloq instances with linear (use-exactly-once)
/// typed wires. Immutable.
class ComputeGraph {
public:
    const Signature& signature() const { return signature_; }
    const std::vector<BloqPtr>& nodes() const { return nodes_; }
    const std::vector<Wire>& wires() const { return wires_; }
    /// Instance ids in a deterministic topological order (builder order
    /// refined by Kahn's algorithm with smallest-id-first tie breaking).
    const std::vector<int>& topo_order() const { return topo_; }

    /// Multiset of instantiated bloqs: canonical key -> (bloq, count).
    std::map<std::string, std::pair<BloqPtr, long long>> instance_counts() const;

    /// Wire arriving at the given input port / leaving the given output port.
    const Wire& wire_into(const Port& dst) const;
    const Wire& wire_from(const Port& src) const;

private:
    friend class GraphBuilder;
    Signature signature_;
    std::vector<BloqPtr> nodes_;
    std::vector<Wire> wires_;
    std::vector<int> topo_;
    std::map<Port, size_t> by_dst_;
    std::map<Port, size_t> by_src_;
};

/// Single-threaded builder enforcing linearity, type equality and acyclicity
/// as wires are added.
class GraphBuilder {
public:
    explicit GraphBuilder(Signature sig);

    /// Left-boundary source port for a signature register element.
    Port input(const std::string& name, int idx = 0);
    /// All element ports of a shaped left register, in flat order.
    std::vector<Port> inputs(const std::string& name);

    int add_instance(const BloqPtr& b);
    Port out_port(int node, const std::string& reg, int idx = 0) const;
    Port in_port(int node, const std::string& reg, int idx = 0) const;

    /// Record src → dst. Errors: PortReuse, DTypeMismatch, CycleError.
    void connect(const Port& src, const Port& dst);

    /// Instantiate b, wiring the named inputs; returns the right-side ports
    /// flattened in signature order.
    std::vector<Port> add(const BloqPtr& b, const std::map<std::string, std::vector<Port>>& ins);
    /// Scalar-register convenience overload.
    std::vector<Port> add(const BloqPtr& b, const std::map<std::string, Port>& ins);

    std::vector<Port> split(const Port& p);
    Port join(const std::vector<Port>& bits, const QDType& dtype);
    Port allocate(const QDType& dtype);
    void free(const Port& p);

    void set_output(const std::string& name, const Port& p, int idx = 0);

    const QDType& dtype_of(const Port& src_port) const;

    /// Verify linearity/coverage and freeze. Errors: DanglingWire,
    /// SignatureMismatch.
    ComputeGraph finalize();

private:
    const Signature& sig_of(int node) const;
    const Register& reg_of(const Port& p, bool as_source) const;
    bool reaches(int from, int to) const;

    Signature signature_;
    std::vector<BloqPtr> nodes_;
    std::vector<Signature> sigs_;  // cached per-instance signatures
    std::vector<Wire> wires_;
    std::set<Port> used_src_;
    std::set<Port> used_dst_;
    std::map<int, std::set<int>> succ_;
    bool finalized_ = false;
};

/// Build and finalize the full decomposition graph of a bloq.
ComputeGraph decompose(const Bloq& b);
inline ComputeGraph decompose(const BloqPtr& b) { return decompose(*b); }

}  // namespace qre
