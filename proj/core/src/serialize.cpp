#include "qre/serialize.hpp"

namespace qre {

Json to_json(const SymExpr& e) {
    Json j;
    j["str"] = e.str();
    j["key"] = e.key();
    if (auto i = e.as_integer()) j["value"] = *i;
    return j;
}

Json to_json(const GateCounts& g) {
    Json j;
    j["t"] = to_json(g.t);
    j["toffoli"] = to_json(g.toffoli);
    j["clifford"] = to_json(g.clifford);
    j["measurement"] = to_json(g.measurement);
    Json rots = Json::array();
    for (const auto& [k, ec] : g.rotations) {
        Json r;
        r["epsilon"] = to_json(ec.first);
        r["count"] = to_json(ec.second);
        rots.push_back(r);
    }
    j["rotations"] = rots;
    return j;
}

namespace {
Json port_json(const Port& p) {
    Json j;
    j["node"] = p.node;
    j["reg"] = p.reg;
    j["idx"] = p.idx;
    return j;
}
}  // namespace

Json to_json(const ComputeGraph& g) {
    Json j;
    j["version"] = 1;
    Json sig = Json::array();
    for (const auto& r : g.signature().registers()) sig.push_back(r.key());
    j["signature"] = sig;
    Json nodes = Json::array();
    for (size_t i = 0; i < g.nodes().size(); ++i) {
        Json n;
        n["id"] = i;
        n["name"] = g.nodes()[i]->name();
        n["key"] = g.nodes()[i]->key();
        nodes.push_back(n);
    }
    j["nodes"] = nodes;
    Json wires = Json::array();
    for (const auto& w : g.wires()) {
        Json e;
        e["src"] = port_json(w.src);
        e["dst"] = port_json(w.dst);
        e["dtype"] = w.dtype.key();
        wires.push_back(e);
    }
    j["wires"] = wires;
    return j;
}

Json to_json(const CallGraph& g) {
    Json j;
    j["version"] = 1;
    j["root"] = g.root()->key();
    Json nodes = Json::array();
    for (const auto& [k, b] : g.nodes()) {
        Json n;
        n["key"] = k;
        n["name"] = b->name();
        nodes.push_back(n);
    }
    j["nodes"] = nodes;
    Json edges = Json::array();
    for (const auto& [k, b] : g.nodes()) {
        for (const auto& [ck, m] : g.edges_of(k)) {
            Json e;
            e["caller"] = k;
            e["callee"] = ck;
            e["multiplicity"] = to_json(m);
            edges.push_back(e);
        }
    }
    j["edges"] = edges;
    return j;
}

Json to_json(const FuzzReport& r) {
    Json j;
    j["trials"] = r.trials;
    j["pass"] = r.pass();
    Json ms = Json::array();
    for (const auto& m : r.mismatches) {
        Json e;
        e["seed"] = m.seed;
        e["input"] = m.input;
        e["expected"] = m.expected;
        e["got"] = m.got;
        ms.push_back(e);
    }
    j["mismatches"] = ms;
    return j;
}

}  // namespace qre
