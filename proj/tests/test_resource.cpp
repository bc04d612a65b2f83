#include "doctest.h"
#include "qre/gates.hpp"
#include "qre/resource.hpp"

using namespace qre;

namespace {

/// Leaf with declared symbolic X-gate tally.
struct NXGates final : Bloq {
    SymExpr n;
    explicit NXGates(SymExpr n_) : n(std::move(n_)) {}
    std::string name() const override { return "NXGates"; }
    AttrMap attributes() const override { return {{"n", n}}; }
    Signature signature() const override { return Signature{Register("q", QDType::bit())}; }
    std::optional<std::vector<Callee>> callees() const override {
        return std::vector<Callee>{{make_bloq<XGate>(), n}};
    }
};

/// Two-level demo: calls NXGates twice and a Toffoli three times.
struct TwoLevel final : Bloq {
    std::string name() const override { return "TwoLevel"; }
    Signature signature() const override { return Signature{Register("q", QDType::bit())}; }
    std::optional<std::vector<Callee>> callees() const override {
        return std::vector<Callee>{{make_bloq<NXGates>(SymExpr::symbol("n")), SymExpr::integer(2)},
                                   {make_bloq<Toffoli>(), SymExpr::integer(3)}};
    }
};

/// Declares callees and provides a matching decomposition.
struct CnotPair final : Bloq {
    bool corrupt_declared = false;
    std::string name() const override { return "CnotPair"; }
    AttrMap attributes() const override { return {{"corrupt", corrupt_declared}}; }
    Signature signature() const override {
        return Signature{Register("a", QDType::bit()), Register("b", QDType::bit())};
    }
    std::optional<std::vector<Callee>> callees() const override {
        return std::vector<Callee>{
            {make_bloq<CNot>(), SymExpr::integer(corrupt_declared ? 3 : 2)}};
    }
    bool has_decomposition() const override { return true; }
    void build_decomposition(GraphBuilder& bb) const override {
        Port a = bb.input("a"), b = bb.input("b");
        for (int i = 0; i < 2; ++i) {
            auto out =
                bb.add(make_bloq<CNot>(), std::map<std::string, Port>{{"ctrl", a}, {"target", b}});
            a = out[0];
            b = out[1];
        }
        bb.set_output("a", a);
        bb.set_output("b", b);
    }
};

struct SelfCall final : Bloq {
    std::string name() const override { return "SelfCall"; }
    Signature signature() const override { return Signature{Register("q", QDType::bit())}; }
    std::optional<std::vector<Callee>> callees() const override {
        return std::vector<Callee>{{make_bloq<SelfCall>(), SymExpr::integer(1)}};
    }
};

/// 2-qubit bloq whose decomposition borrows one ancilla for a Toffoli.
struct BorrowsAncilla final : Bloq {
    std::string name() const override { return "BorrowsAncilla"; }
    Signature signature() const override {
        return Signature{Register("a", QDType::bit()), Register("b", QDType::bit())};
    }
    bool has_decomposition() const override { return true; }
    void build_decomposition(GraphBuilder& bb) const override {
        Port anc = bb.allocate(QDType::bit());
        auto out = bb.add(make_bloq<Toffoli>(),
                          {{"ctrl", std::vector<Port>{bb.input("a"), bb.input("b")}},
                           {"target", std::vector<Port>{anc}}});
        bb.set_output("a", out[0]);
        bb.set_output("b", out[1]);
        bb.free(out[2]);
    }
};

/// Two disjoint 2-qubit callees on 4 wires.
struct ParallelPair final : Bloq {
    std::string name() const override { return "ParallelPair"; }
    Signature signature() const override {
        return Signature{Register("x", QDType::uint(2)), Register("y", QDType::uint(2))};
    }
    bool has_decomposition() const override { return true; }
    void build_decomposition(GraphBuilder& bb) const override {
        auto id2 = make_bloq<Identity>(QDType::uint(2));
        bb.set_output("x", bb.add(id2, std::map<std::string, Port>{{"reg", bb.input("x")}})[0]);
        bb.set_output("y", bb.add(id2, std::map<std::string, Port>{{"reg", bb.input("y")}})[0]);
    }
};

}  // namespace

TEST_CASE("gate counts through declared callees stay symbolic") {
    GateCounts gc = gate_counts(make_bloq<TwoLevel>());
    auto n = SymExpr::symbol("n");
    CHECK(gc.clifford == SymExpr::integer(2) * n);
    CHECK(gc.toffoli == SymExpr::integer(3));
    CHECK(gc.t.is_zero());
}

TEST_CASE("gate counts through a decomposition") {
    GateCounts gc = gate_counts(make_bloq<CnotPair>());
    CHECK(*gc.clifford.as_integer() == 2);
}

TEST_CASE("identity bloq counts nothing") {
    GateCounts gc = gate_counts(make_bloq<Identity>(QDType::uint(4)));
    CHECK(gc.is_zero());
}

TEST_CASE("uncosted leaf raises") {
    struct Opaque final : Bloq {
        std::string name() const override { return "Opaque"; }
        Signature signature() const override { return Signature{Register("q", QDType::bit())}; }
    };
    CHECK_THROWS_AS(gate_counts(make_bloq<Opaque>()), UncostedLeaf);
}

TEST_CASE("self-referential bloq is detected") {
    CHECK_THROWS_AS(gate_counts(make_bloq<SelfCall>()), CycleDetected);
    CHECK_THROWS_AS(build_call_graph(make_bloq<SelfCall>()), CycleDetected);
}

TEST_CASE("call graph structure and multiplicities") {
    CallGraph cg = build_call_graph(make_bloq<TwoLevel>());
    CHECK(cg.nodes().size() == 4);  // root, NXGates, Toffoli, X
    auto counts = cg.reach_counts();
    CHECK(counts.at(make_bloq<Toffoli>()->key()) == SymExpr::integer(3));
    CHECK(counts.at(make_bloq<XGate>()->key()) ==
          SymExpr::integer(2) * SymExpr::symbol("n"));
    SUBCASE("leaf predicate stops descent") {
        CallGraph shallow = build_call_graph(
            make_bloq<TwoLevel>(), [](const Bloq& b) { return b.name() == "NXGates"; });
        CHECK(shallow.nodes().size() == 3);  // NXGates kept as a leaf
        CHECK(shallow.is_leaf(make_bloq<NXGates>(SymExpr::symbol("n"))->key()));
    }
    SUBCASE("leaf predicate matching the root yields a single node") {
        CallGraph one =
            build_call_graph(make_bloq<TwoLevel>(), [](const Bloq&) { return true; });
        CHECK(one.nodes().size() == 1);
    }
    SUBCASE("dot export is stable and mentions every node") {
        std::string dot = cg.to_dot();
        CHECK(dot == cg.to_dot());
        CHECK(dot.find("TwoLevel") != std::string::npos);
        CHECK(dot.find("Toffoli") != std::string::npos);
    }
}

TEST_CASE("additivity: parent counts equal weighted child counts") {
    CallGraph cg = build_call_graph(make_bloq<TwoLevel>());
    GateCounts parent = gate_counts(make_bloq<TwoLevel>());
    GateCounts sum;
    for (const auto& [ck, m] : cg.edges_of(make_bloq<TwoLevel>()->key())) {
        sum += gate_counts(cg.nodes().at(ck)).scaled(m);
    }
    CHECK(parent.t == sum.t);
    CHECK(parent.toffoli == sum.toffoli);
    CHECK(parent.clifford == sum.clifford);
}

TEST_CASE("callee crosscheck") {
    auto ok = std::make_shared<CnotPair>();
    CHECK(crosscheck_callees(*ok).pass);
    auto bad = std::make_shared<CnotPair>();
    bad->corrupt_declared = true;
    auto rep = crosscheck_callees(*bad);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.diffs.size() == 1);
    CHECK(rep.diffs[0].find("declared 3, found 2") != std::string::npos);
    // bloq without both definitions is skipped
    CHECK_FALSE(crosscheck_callees(*make_bloq<Toffoli>()).has_both);
}

TEST_CASE("qubit counting") {
    CHECK(*qubit_count(make_bloq<Identity>(QDType::uint(4))).as_integer() == 4);
    CHECK(*qubit_count(make_bloq<BorrowsAncilla>()).as_integer() == 3);
    CHECK(*qubit_count(make_bloq<ParallelPair>()).as_integer() == 4);
    SUBCASE("symbolic widths trace through") {
        auto n = SymExpr::symbol("n");
        CHECK(qubit_count(make_bloq<Identity>(QDType::uint(n))) == n);
    }
    SUBCASE("monotone: parent at least as wide as any instantiated leaf") {
        auto q = qubit_count(make_bloq<BorrowsAncilla>());
        CHECK(*q.as_integer() >= 3);
    }
}

TEST_CASE("aggregation policies") {
    GateCounts gc = GateCounts::toffolis(SymExpr::integer(5)) +
                    GateCounts::rotation(SymExpr::real(1e-10), SymExpr::integer(2)) +
                    GateCounts::t_gates(SymExpr::integer(1));
    AggregationPolicy four;
    CHECK(*gc.total_t_with(four).as_integer() == 1 + 20 + 96);
    AggregationPolicy seven;
    seven.toffoli_to_t = AggregationPolicy::ToffoliToT::Seven;
    CHECK(*gc.total_t_with(seven).as_integer() == 1 + 35 + 96);
    AggregationPolicy keep;
    keep.toffoli_to_t = AggregationPolicy::ToffoliToT::KeepToffoli;
    GateCounts agg = gc.aggregate(keep);
    CHECK(*agg.t.as_integer() == 97);
    CHECK(*agg.toffoli.as_integer() == 5);
}
