#include <cmath>

#include "doctest.h"
#include "qre/physical.hpp"

using namespace qre;

namespace {

PhysicalCostModel ccz_model() {
    PhysicalCostModel m;
    m.qec = QECScheme::fowler_gidney();
    m.data_block = DataBlock{DataBlockKind::Simple, 25};
    m.factory = MagicStateFactory::ccz_factory(19);
    m.params = PhysicalParameters{1e-4, 1e-6};
    return m;
}

LogicalCounts toffoli_workload(long long qubits, long long toffoli) {
    LogicalCounts c;
    c.algorithm_qubits = qubits;
    c.toffoli = toffoli;
    return c;
}

}  // namespace

TEST_CASE("logical error rate model") {
    SUBCASE("closed-form evaluations") {
        CHECK(logical_error_rate(QECScheme::fowler_gidney(), 1e-3, 11) ==
              doctest::Approx(1e-7).epsilon(1e-9));
        CHECK(logical_error_rate(QECScheme::beverland(), 1e-4, 9) ==
              doctest::Approx(3e-12).epsilon(1e-9));
        for (long long d : {3LL, 7LL, 21LL})
            CHECK(logical_error_rate(QECScheme::fowler_gidney(), 0.01, d) ==
                  doctest::Approx(0.1));
    }
    SUBCASE("strictly decreasing below threshold") {
        double prev = 1.0;
        for (long long d = 3; d <= 51; d += 2) {
            double p = logical_error_rate(QECScheme::beverland(), 1e-3, d);
            CHECK(p < prev);
            prev = p;
        }
    }
    SUBCASE("distance validation") {
        CHECK_THROWS_AS(logical_error_rate(QECScheme::fowler_gidney(), 1e-3, 10), BadDistance);
        CHECK_THROWS_AS(logical_error_rate(QECScheme::fowler_gidney(), 1e-3, 0), BadDistance);
        CHECK_THROWS_AS(logical_error_rate(QECScheme::fowler_gidney(), 1e-3, -3), BadDistance);
        CHECK_THROWS_AS(logical_error_rate(QECScheme::fowler_gidney(), 0.0, 3), BadParams);
    }
}

TEST_CASE("data block tile accounting") {
    SUBCASE("flat 50% routing overhead") {
        DataBlock simple{DataBlockKind::Simple, 11};
        CHECK(simple.tiles(100) == 150);
        CHECK(simple.tiles(101) == 152);  // ceil(151.5)
        CHECK(simple.tiles(0) == 0);
        CHECK(simple.physical_qubits(100) == 150.0 * 2 * 11 * 11);
    }
    SUBCASE("layouts trade tiles against consumption speed") {
        long long n = 64;
        DataBlock compact{DataBlockKind::CompactLitinski, 11};
        DataBlock inter{DataBlockKind::IntermediateLitinski, 11};
        DataBlock fast{DataBlockKind::FastLitinski, 11};
        CHECK(compact.tiles(n) < inter.tiles(n));
        CHECK(inter.tiles(n) < fast.tiles(n));
        CHECK(compact.consumption_cycles_per_state() > inter.consumption_cycles_per_state());
        CHECK(inter.consumption_cycles_per_state() > fast.consumption_cycles_per_state());
        for (DataBlock b : {compact, inter, fast}) CHECK(b.tiles(n) >= n);
    }
}

TEST_CASE("magic state factory presets") {
    SUBCASE("cubic error suppression") {
        for (auto f : {MagicStateFactory::t_factory(15), MagicStateFactory::ccz_factory(15)}) {
            double ratio = f.distillation_error(1e-3) / f.distillation_error(1e-4);
            CHECK(std::abs(ratio - 1000.0) / 1000.0 < 0.01);
        }
    }
    SUBCASE("state demand per gate") {
        LogicalCounts c = toffoli_workload(10, 5);
        c.t = 6;
        CHECK(magic_states_needed(MagicStateFactory::t_factory(15), c) == 6 + 4 * 5);
        CHECK(magic_states_needed(MagicStateFactory::ccz_factory(15), c) == 5 + 3);
    }
}

TEST_CASE("physical cost estimation") {
    PhysicalCostModel m = ccz_model();
    LogicalCounts work = toffoli_workload(100, 100000000);

    SUBCASE("zero workload costs nothing") {
        PhysicalCost c = estimate(m, LogicalCounts{}, 0.5);
        CHECK(c.physical_qubits == 0);
        CHECK(c.cycles == 0);
        CHECK(c.wall_time_s == 0);
        CHECK(c.failure_prob == 0);
    }
    SUBCASE("accounting identities") {
        PhysicalCost c = estimate(m, work, 0.5);
        CHECK(c.wall_time_s == c.cycles * m.params.cycle_time_s);
        double expect_qubits =
            m.data_block.physical_qubits(100) + m.factory.count * m.factory.footprint();
        CHECK(c.physical_qubits == expect_qubits);
        // simple block never limits: cycles are pure factory throughput
        CHECK(c.cycles == doctest::Approx(magic_states_needed(m.factory, work) *
                                          m.factory.cycles_per_state() / m.factory.count));
    }
    SUBCASE("doubling the factories halves the cycles and adds one footprint") {
        PhysicalCost one = estimate(m, work, 0.5);
        PhysicalCostModel m2 = m;
        m2.factory.count = 2;
        PhysicalCost two = estimate(m2, work, 0.5);
        CHECK(two.cycles == doctest::Approx(one.cycles / 2.0));
        CHECK(two.physical_qubits == doctest::Approx(one.physical_qubits + m.factory.footprint()));
    }
    SUBCASE("failure monotone in both distances, qubits monotone too") {
        double prev_fail = 1e9;
        double prev_qubits = 0;
        for (long long d = 13; d <= 35; d += 2) {
            PhysicalCostModel md = m;
            md.data_block.d = d;
            PhysicalCost c = estimate(md, work, 0.999999);
            CHECK(c.failure_prob <= prev_fail);
            CHECK(c.physical_qubits >= prev_qubits);
            prev_fail = c.failure_prob;
            prev_qubits = c.physical_qubits;
        }
        prev_fail = 1e9;
        prev_qubits = 0;
        for (long long d = 13; d <= 35; d += 2) {
            PhysicalCostModel md = m;
            md.factory.d = d;
            PhysicalCost c = estimate(md, work, 0.999999);
            CHECK(c.failure_prob <= prev_fail);
            CHECK(c.physical_qubits >= prev_qubits);
            prev_fail = c.failure_prob;
            prev_qubits = c.physical_qubits;
        }
    }
    SUBCASE("budget enforcement") {
        PhysicalCostModel small = m;
        small.data_block.d = 3;
        small.factory.d = 3;
        CHECK_THROWS_AS(estimate(small, work, 1e-3), BudgetInfeasible);
        CHECK_THROWS_AS(estimate(m, work, 0.0), BadParams);
        CHECK_THROWS_AS(estimate(m, work, 1.5), BadParams);
    }
}

TEST_CASE("design solvers") {
    PhysicalCostModel m = ccz_model();
    LogicalCounts work = toffoli_workload(100, 100000000);
    const double budget = 1e-2;

    SUBCASE("thirds allocation is self-consistent") {
        DesignResult r = solve_design(DesignStrategy::ThirdsBudget, m, work, budget);
        // the chosen data distance is the smallest odd one meeting budget/3
        auto storage_at = [&](long long d) {
            PhysicalCostModel md = m;
            md.data_block.d = d;
            md.factory.d = r.d_factory;
            PhysicalCost c = estimate(md, work, 0.999999);
            double tiles = static_cast<double>(md.data_block.tiles(work.algorithm_qubits));
            return tiles * c.cycles * logical_error_rate(m.qec, m.params.p_phys, d);
        };
        CHECK(storage_at(r.d_data) <= budget / 3.0);
        if (r.d_data > 3) CHECK(storage_at(r.d_data - 2) > budget / 3.0);
        CHECK(r.cost.failure_prob <= budget);
    }
    SUBCASE("grid search is never worse in volume") {
        DesignResult thirds = solve_design(DesignStrategy::ThirdsBudget, m, work, budget);
        DesignResult grid = solve_design(DesignStrategy::GridSearchVolume, m, work, budget);
        double vol_thirds = thirds.cost.physical_qubits * thirds.cost.wall_time_s;
        double vol_grid = grid.cost.physical_qubits * grid.cost.wall_time_s;
        CHECK(vol_grid <= vol_thirds * (1.0 + 1e-12));
        CHECK(grid.cost.failure_prob <= budget);
    }
    SUBCASE("slack budget with a tiny workload lands at the minimum distance") {
        LogicalCounts tiny = toffoli_workload(2, 1);
        DesignResult r = solve_design(DesignStrategy::GridSearchVolume, m, tiny, 0.999);
        CHECK(r.d_data == 3);
        CHECK(r.d_factory == 3);
    }
    SUBCASE("hopeless budgets are reported") {
        PhysicalCostModel noisy = m;
        noisy.params.p_phys = 1e-3;  // per-state distillation error alone breaks the budget
        CHECK_THROWS_AS(solve_design(DesignStrategy::ThirdsBudget, noisy, work, 1e-6),
                        BudgetInfeasible);
        CHECK_THROWS_AS(solve_design(DesignStrategy::GridSearchVolume, noisy, work, 1e-6),
                        BudgetInfeasible);
    }
}

TEST_CASE("logical counts fold rotations before entering the model") {
    GateCounts g = GateCounts::toffolis(SymExpr::integer(50)) +
                   GateCounts::t_gates(SymExpr::integer(7)) +
                   GateCounts::rotation(SymExpr::real(1e-10), SymExpr::integer(3));
    AggregationPolicy keep;
    keep.toffoli_to_t = AggregationPolicy::ToffoliToT::KeepToffoli;
    LogicalCounts c = LogicalCounts::from(12, g, keep);
    CHECK(c.algorithm_qubits == 12);
    CHECK(c.toffoli == 50);
    CHECK(c.t > 7);  // the rotations arrive as synthesized T gates
    AggregationPolicy four;
    LogicalCounts folded = LogicalCounts::from(12, g, four);
    CHECK(folded.toffoli == 0);
    CHECK(folded.t == c.t + 4 * 50);
}
