#include "qre/graph.hpp"

#include <algorithm>

#include "qre/bookkeeping.hpp"

namespace qre {

std::map<std::string, std::pair<BloqPtr, long long>> ComputeGraph::instance_counts() const {
    std::map<std::string, std::pair<BloqPtr, long long>> out;
    for (const auto& b : nodes_) {
        auto [it, inserted] = out.emplace(b->key(), std::make_pair(b, 1LL));
        if (!inserted) ++it->second.second;
    }
    return out;
}

const Wire& ComputeGraph::wire_into(const Port& dst) const {
    auto it = by_dst_.find(dst);
    if (it == by_dst_.end()) throw Error("no wire into the requested port");
    return wires_[it->second];
}

const Wire& ComputeGraph::wire_from(const Port& src) const {
    auto it = by_src_.find(src);
    if (it == by_src_.end()) throw Error("no wire from the requested port");
    return wires_[it->second];
}

// ---------------------------------------------------------------- builder

namespace {
std::string port_str(const Port& p) {
    std::string n = p.node == Port::kLeft    ? "left"
                    : p.node == Port::kRight ? "right"
                                             : std::to_string(p.node);
    return "(" + n + ", reg " + std::to_string(p.reg) + ", idx " + std::to_string(p.idx) + ")";
}
}  // namespace

GraphBuilder::GraphBuilder(Signature sig) : signature_(std::move(sig)) {}

const Signature& GraphBuilder::sig_of(int node) const {
    if (node >= 0) return sigs_[static_cast<size_t>(node)];
    return signature_;
}

const Register& GraphBuilder::reg_of(const Port& p, bool as_source) const {
    const Signature& sig = sig_of(p.node);
    if (p.reg < 0 || static_cast<size_t>(p.reg) >= sig.size())
        throw Error("register index out of range at port " + port_str(p));
    const Register& r = sig[static_cast<size_t>(p.reg)];
    if (p.idx < 0 || p.idx >= r.num_elements())
        throw Error("element index out of range at port " + port_str(p));
    // Boundary sides are mirrored: the graph's left registers are wire
    // sources inside the graph; an instance's left registers are sinks.
    bool ok;
    if (p.node == Port::kLeft)
        ok = as_source && r.on_left();
    else if (p.node == Port::kRight)
        ok = !as_source && r.on_right();
    else
        ok = as_source ? r.on_right() : r.on_left();
    if (!ok)
        throw Error("port " + port_str(p) + " is not usable as a " +
                    (as_source ? "source" : "sink"));
    return r;
}

Port GraphBuilder::input(const std::string& name, int idx) {
    return Port{Port::kLeft, static_cast<int>(signature_.index_of(name)), idx};
}

std::vector<Port> GraphBuilder::inputs(const std::string& name) {
    int reg = static_cast<int>(signature_.index_of(name));
    long long n = signature_[static_cast<size_t>(reg)].num_elements();
    std::vector<Port> ps;
    for (long long i = 0; i < n; ++i) ps.push_back(Port{Port::kLeft, reg, static_cast<int>(i)});
    return ps;
}

int GraphBuilder::add_instance(const BloqPtr& b) {
    if (finalized_) throw Error("builder already finalized");
    nodes_.push_back(b);
    sigs_.push_back(b->signature());
    return static_cast<int>(nodes_.size()) - 1;
}

Port GraphBuilder::out_port(int node, const std::string& reg, int idx) const {
    return Port{node, static_cast<int>(sig_of(node).index_of(reg)), idx};
}

Port GraphBuilder::in_port(int node, const std::string& reg, int idx) const {
    return Port{node, static_cast<int>(sig_of(node).index_of(reg)), idx};
}

bool GraphBuilder::reaches(int from, int to) const {
    if (from == to) return true;
    std::vector<int> stack{from};
    std::set<int> seen{from};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        auto it = succ_.find(u);
        if (it == succ_.end()) continue;
        for (int v : it->second) {
            if (v == to) return true;
            if (seen.insert(v).second) stack.push_back(v);
        }
    }
    return false;
}

void GraphBuilder::connect(const Port& src, const Port& dst) {
    if (finalized_) throw Error("builder already finalized");
    const Register& rs = reg_of(src, /*as_source=*/true);
    const Register& rd = reg_of(dst, /*as_source=*/false);
    if (used_src_.count(src)) throw PortReuse("output port already consumed: " + port_str(src));
    if (used_dst_.count(dst)) throw PortReuse("input port already filled: " + port_str(dst));
    if (rs.dtype != rd.dtype)
        throw DTypeMismatch("cannot connect " + rs.dtype.str() + " to " + rd.dtype.str());
    if (src.node >= 0 && dst.node >= 0 && reaches(dst.node, src.node))
        throw CycleError("connection " + port_str(src) + " -> " + port_str(dst) +
                         " would create a cycle");
    wires_.push_back(Wire{src, dst, rs.dtype});
    used_src_.insert(src);
    used_dst_.insert(dst);
    if (src.node >= 0 && dst.node >= 0) succ_[src.node].insert(dst.node);
}

std::vector<Port> GraphBuilder::add(const BloqPtr& b,
                                    const std::map<std::string, std::vector<Port>>& ins) {
    int node = add_instance(b);
    const Signature& sig = sigs_[static_cast<size_t>(node)];
    size_t used = 0;
    for (size_t ri = 0; ri < sig.size(); ++ri) {
        const Register& r = sig[ri];
        if (!r.on_left()) continue;
        auto it = ins.find(r.name);
        if (it == ins.end()) throw Error(b->name() + ": missing input register " + r.name);
        ++used;
        if (static_cast<long long>(it->second.size()) != r.num_elements())
            throw Error(b->name() + ": register " + r.name + " expects " +
                        std::to_string(r.num_elements()) + " ports");
        for (size_t i = 0; i < it->second.size(); ++i)
            connect(it->second[i], Port{node, static_cast<int>(ri), static_cast<int>(i)});
    }
    if (used != ins.size()) throw Error(b->name() + ": unknown input register supplied");
    std::vector<Port> outs;
    for (size_t ri = 0; ri < sig.size(); ++ri) {
        const Register& r = sig[ri];
        if (!r.on_right()) continue;
        for (long long i = 0; i < r.num_elements(); ++i)
            outs.push_back(Port{node, static_cast<int>(ri), static_cast<int>(i)});
    }
    return outs;
}

std::vector<Port> GraphBuilder::add(const BloqPtr& b, const std::map<std::string, Port>& ins) {
    std::map<std::string, std::vector<Port>> m;
    for (const auto& [k, p] : ins) m.emplace(k, std::vector<Port>{p});
    return add(b, m);
}

const QDType& GraphBuilder::dtype_of(const Port& src_port) const {
    return reg_of(src_port, /*as_source=*/true).dtype;
}

std::vector<Port> GraphBuilder::split(const Port& p) {
    const QDType& d = dtype_of(p);
    auto n = d.concrete_bits();
    if (!n) throw Error("cannot split a symbolic-width register");
    if (d.kind() == DKind::Bit || *n == 1) throw AlreadyBit("register is already a single bit");
    return add(make_bloq<Split>(d), {{"reg", std::vector<Port>{p}}});
}

Port GraphBuilder::join(const std::vector<Port>& bits, const QDType& dtype) {
    auto n = dtype.concrete_bits();
    if (!n || static_cast<size_t>(*n) != bits.size())
        throw DTypeMismatch("join: bit count does not match target dtype width");
    return add(make_bloq<Join>(dtype), {{"bits", bits}})[0];
}

Port GraphBuilder::allocate(const QDType& dtype) {
    return add(make_bloq<Allocate>(dtype), std::map<std::string, std::vector<Port>>{})[0];
}

void GraphBuilder::free(const Port& p) {
    add(make_bloq<Free>(dtype_of(p)), {{"reg", std::vector<Port>{p}}});
}

void GraphBuilder::set_output(const std::string& name, const Port& p, int idx) {
    connect(p, Port{Port::kRight, static_cast<int>(signature_.index_of(name)), idx});
}

ComputeGraph GraphBuilder::finalize() {
    if (finalized_) throw Error("builder already finalized");
    // every instance port must be wired
    for (size_t ni = 0; ni < nodes_.size(); ++ni) {
        const Signature& sig = sigs_[ni];
        for (size_t ri = 0; ri < sig.size(); ++ri) {
            const Register& r = sig[ri];
            for (long long i = 0; i < r.num_elements(); ++i) {
                Port p{static_cast<int>(ni), static_cast<int>(ri), static_cast<int>(i)};
                if (r.on_left() && !used_dst_.count(p))
                    throw DanglingWire(nodes_[ni]->name() + " input " + r.name + " left unwired");
                if (r.on_right() && !used_src_.count(p))
                    throw DanglingWire(nodes_[ni]->name() + " output " + r.name +
                                       " left unconsumed");
            }
        }
    }
    // boundary coverage
    for (size_t ri = 0; ri < signature_.size(); ++ri) {
        const Register& r = signature_[ri];
        for (long long i = 0; i < r.num_elements(); ++i) {
            if (r.on_left() && !used_src_.count(Port{Port::kLeft, static_cast<int>(ri),
                                                     static_cast<int>(i)}))
                throw DanglingWire("graph input " + r.name + " never consumed");
            if (r.on_right() && !used_dst_.count(Port{Port::kRight, static_cast<int>(ri),
                                                      static_cast<int>(i)}))
                throw SignatureMismatch("graph output " + r.name + " never produced");
        }
    }
    // deterministic topological order (smallest instance id first)
    std::vector<int> indeg(nodes_.size(), 0);
    std::vector<std::vector<int>> adj(nodes_.size());
    for (const auto& w : wires_)
        if (w.src.node >= 0 && w.dst.node >= 0) {
            adj[static_cast<size_t>(w.src.node)].push_back(w.dst.node);
            ++indeg[static_cast<size_t>(w.dst.node)];
        }
    std::set<int> ready;
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (indeg[i] == 0) ready.insert(static_cast<int>(i));
    std::vector<int> topo;
    while (!ready.empty()) {
        int u = *ready.begin();
        ready.erase(ready.begin());
        topo.push_back(u);
        for (int v : adj[static_cast<size_t>(u)])
            if (--indeg[static_cast<size_t>(v)] == 0) ready.insert(v);
    }
    if (topo.size() != nodes_.size()) throw CycleError("instance graph contains a cycle");

    ComputeGraph g;
    g.signature_ = signature_;
    g.nodes_ = nodes_;
    g.wires_ = wires_;
    g.topo_ = std::move(topo);
    for (size_t i = 0; i < g.wires_.size(); ++i) {
        g.by_src_.emplace(g.wires_[i].src, i);
        g.by_dst_.emplace(g.wires_[i].dst, i);
    }
    finalized_ = true;
    return g;
}

ComputeGraph decompose(const Bloq& b) {
    if (!b.has_decomposition()) throw MissingDecomposition(b.name() + " has no decomposition");
    GraphBuilder bb(b.signature());
    b.build_decomposition(bb);
    return bb.finalize();
}

}  // namespace qre
