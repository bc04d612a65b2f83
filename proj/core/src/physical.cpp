#include "qre/physical.hpp"

#include <algorithm>
#include <cmath>

namespace qre {

namespace {

void check_distance(long long d) {
    if (d < 1 || d % 2 == 0) throw BadDistance("code distance must be odd and positive");
}

void check_budget(double budget) {
    if (!(budget > 0.0 && budget < 1.0)) throw BadParams("error budget must lie in (0, 1)");
}

long long to_count(const SymExpr& e, const char* what) {
    double v = e.evaluate_double({});
    if (!(v >= 0.0)) throw BadParams(std::string(what) + " must be non-negative");
    return static_cast<long long>(std::llround(v));
}

/// estimate() without the budget check, shared with the solvers.
PhysicalCost evaluate_model(const PhysicalCostModel& model, const LogicalCounts& counts) {
    check_distance(model.data_block.d);
    check_distance(model.factory.d);
    if (counts.is_zero()) return PhysicalCost{};

    const double states = magic_states_needed(model.factory, counts);
    const double data_cycles =
        states * model.data_block.consumption_cycles_per_state();
    const double factory_cycles = model.factory.count > 0
                                      ? states * model.factory.cycles_per_state() /
                                            static_cast<double>(model.factory.count)
                                      : 0.0;
    const double cycles = std::max(data_cycles, factory_cycles);

    const double tiles = static_cast<double>(model.data_block.tiles(counts.algorithm_qubits));
    PhysicalCost out;
    out.cycles = cycles;
    out.wall_time_s = cycles * model.params.cycle_time_s;
    out.physical_qubits = model.data_block.physical_qubits(counts.algorithm_qubits) +
                          static_cast<double>(model.factory.count) * model.factory.footprint();

    const double p_data = logical_error_rate(model.qec, model.params.p_phys, model.data_block.d);
    const double p_fact = logical_error_rate(model.qec, model.params.p_phys, model.factory.d);
    const double per_state_error =
        model.factory.distillation_error(model.params.p_phys) +
        static_cast<double>(model.factory.tiles) * model.factory.cycles_per_state() * p_fact;
    out.failure_prob = tiles * cycles * p_data + states * per_state_error;
    return out;
}

}  // namespace

double logical_error_rate(const QECScheme& scheme, double p_p, long long d) {
    check_distance(d);
    if (!(p_p > 0.0)) throw BadParams("physical error rate must be positive");
    return scheme.A * std::pow(p_p / scheme.p_star, static_cast<double>(d + 1) / 2.0);
}

long long DataBlock::tiles(long long algorithm_qubits) const {
    if (algorithm_qubits < 0) throw BadParams("algorithm qubit count must be non-negative");
    long long n = algorithm_qubits;
    switch (kind) {
        case DataBlockKind::Simple:
            return (3 * n + 1) / 2;  // ceil(1.5 n): flat 50% routing overhead
        case DataBlockKind::CompactLitinski:
            return (3 * n + 1) / 2 + 3;
        case DataBlockKind::IntermediateLitinski:
            return 2 * n + 4;
        case DataBlockKind::FastLitinski:
            return 2 * n + static_cast<long long>(std::ceil(std::sqrt(8.0 * n))) + 1;
    }
    throw BadParams("unknown data block kind");
}

double DataBlock::consumption_cycles_per_state() const {
    switch (kind) {
        case DataBlockKind::Simple: return 0.0;  // consumption never limits
        case DataBlockKind::CompactLitinski: return 9.0 * static_cast<double>(d);
        case DataBlockKind::IntermediateLitinski: return 5.0 * static_cast<double>(d);
        case DataBlockKind::FastLitinski: return 1.0 * static_cast<double>(d);
    }
    throw BadParams("unknown data block kind");
}

double DataBlock::physical_qubits(long long algorithm_qubits) const {
    return static_cast<double>(tiles(algorithm_qubits)) * 2.0 * d * d;
}

MagicStateFactory MagicStateFactory::t_factory(long long d, long long count) {
    MagicStateFactory f;
    f.name = "15-to-1";
    f.tiles = 11;
    f.cycles_per_state_c = 121.0;
    f.distill_prefactor = 35.0;
    f.ccz = false;
    f.d = d;
    f.count = count;
    return f;
}

MagicStateFactory MagicStateFactory::ccz_factory(long long d, long long count) {
    MagicStateFactory f;
    f.name = "CCZ";
    f.tiles = 26;
    f.cycles_per_state_c = 66.0;
    f.distill_prefactor = 28.0;
    f.ccz = true;
    f.d = d;
    f.count = count;
    return f;
}

LogicalCounts LogicalCounts::from(long long algorithm_qubits, const GateCounts& counts,
                                  const AggregationPolicy& policy) {
    if (algorithm_qubits < 0) throw BadParams("algorithm qubit count must be non-negative");
    GateCounts agg = counts.aggregate(policy);
    LogicalCounts out;
    out.algorithm_qubits = algorithm_qubits;
    out.t = to_count(agg.t, "T count");
    out.toffoli = to_count(agg.toffoli, "Toffoli count");
    out.clifford = to_count(agg.clifford, "Clifford count");
    out.measurement = to_count(agg.measurement, "measurement count");
    return out;
}

bool LogicalCounts::is_zero() const {
    return algorithm_qubits == 0 && t == 0 && toffoli == 0 && clifford == 0 && measurement == 0;
}

double magic_states_needed(const MagicStateFactory& factory, const LogicalCounts& counts) {
    if (factory.ccz)
        return static_cast<double>(counts.toffoli) + std::ceil(counts.t / 2.0);
    return static_cast<double>(counts.t) + 4.0 * static_cast<double>(counts.toffoli);
}

PhysicalCost estimate(const PhysicalCostModel& model, const LogicalCounts& counts,
                      double error_budget) {
    check_budget(error_budget);
    PhysicalCost cost = evaluate_model(model, counts);
    if (cost.failure_prob > error_budget)
        throw BudgetInfeasible("failure probability exceeds the error budget");
    return cost;
}

DesignResult solve_design(DesignStrategy strategy, const PhysicalCostModel& model_template,
                          const LogicalCounts& counts, double error_budget) {
    check_budget(error_budget);
    const double states = magic_states_needed(model_template.factory, counts);

    if (strategy == DesignStrategy::ThirdsBudget) {
        PhysicalCostModel m = model_template;
        // magic-state third: smallest factory distance whose per-state error
        // keeps the whole supply within budget/3
        long long df = 0;
        for (long long d = 3; d <= kMaxCodeDistance; d += 2) {
            double p_fact = logical_error_rate(m.qec, m.params.p_phys, d);
            double per_state = m.factory.distillation_error(m.params.p_phys) +
                               static_cast<double>(m.factory.tiles) *
                                   m.factory.cycles_per_state() * p_fact;
            if (states * per_state <= error_budget / 3.0) {
                df = d;
                break;
            }
        }
        if (df == 0 && states > 0)
            throw BudgetInfeasible("no factory distance meets a third of the budget");
        if (df == 0) df = 3;
        m.factory.d = df;
        // data third: smallest data distance whose storage error over the
        // resulting runtime fits in budget/3
        for (long long d = 3; d <= kMaxCodeDistance; d += 2) {
            m.data_block.d = d;
            PhysicalCost cost = evaluate_model(m, counts);
            double tiles = static_cast<double>(m.data_block.tiles(counts.algorithm_qubits));
            double storage =
                tiles * cost.cycles * logical_error_rate(m.qec, m.params.p_phys, d);
            if (storage <= error_budget / 3.0)
                return DesignResult{d, df, m.factory.count, cost};
        }
        throw BudgetInfeasible("no data distance meets a third of the budget");
    }

    // GridSearchVolume: exhaustive scan minimizing qubits x time
    DesignResult best;
    double best_volume = 0.0;
    bool found = false;
    std::vector<long long> factory_counts{1, 2, 4, 8, 16};
    if (std::find(factory_counts.begin(), factory_counts.end(), model_template.factory.count) ==
        factory_counts.end())
        factory_counts.push_back(model_template.factory.count);
    for (long long dd = 3; dd <= kMaxCodeDistance; dd += 2) {
        for (long long df = 3; df <= kMaxCodeDistance; df += 2) {
            for (long long c : factory_counts) {
                PhysicalCostModel m = model_template;
                m.data_block.d = dd;
                m.factory.d = df;
                m.factory.count = c;
                PhysicalCost cost = evaluate_model(m, counts);
                if (cost.failure_prob > error_budget) continue;
                double volume = cost.physical_qubits * cost.wall_time_s;
                if (!found || volume < best_volume ||
                    (volume == best_volume && cost.physical_qubits < best.cost.physical_qubits)) {
                    best = DesignResult{dd, df, c, cost};
                    best_volume = volume;
                    found = true;
                }
            }
        }
    }
    if (!found) throw BudgetInfeasible("no design point meets the error budget");
    return best;
}

}  // namespace qre
