#pragma once

#include <string>

#include "qre/gate_counts.hpp"
#include "qre/errors.hpp"

namespace qre {

// --- error-correction scheme -------------------------------------------------

/// Surface-code error suppression fit: p_l(d) = A (p_p / p_star)^((d+1)/2).
struct QECScheme {
    double A = 0.1;
    double p_star = 0.01;

    static QECScheme fowler_gidney() { return {0.1, 0.01}; }
    static QECScheme beverland() { return {0.03, 0.01}; }
};

/// Logical error rate per tile per cycle at code distance d.
double logical_error_rate(const QECScheme& scheme, double p_p, long long d);

// --- data blocks -------------------------------------------------------------

enum class DataBlockKind { Simple, CompactLitinski, IntermediateLitinski, FastLitinski };

/// Layout of the tiles storing and routing the algorithm qubits. Each tile is
/// one distance-d logical patch of 2 d^2 physical qubits. `Simple` adds a flat
/// 50% routing overhead and assumes unbounded magic-state consumption speed;
/// the three lattice-surgery layouts trade tiles against the cycles needed to
/// consume each magic state.
struct DataBlock {
    DataBlockKind kind = DataBlockKind::Simple;
    long long d = 11;

    long long tiles(long long algorithm_qubits) const;
    /// Cycles to route one magic state into the block (0 = never limiting).
    double consumption_cycles_per_state() const;
    double physical_qubits(long long algorithm_qubits) const;
};

// --- magic-state factories ---------------------------------------------------

/// A distillation unit occupying `tiles` patches at its own code distance.
/// Output error per state is distill_prefactor * p_p^3 (one round of
/// cubic-suppression distillation) plus the topological error accumulated
/// over its footprint while producing the state. The footprint and cycle
/// constants are editable presets, not ground truth.
struct MagicStateFactory {
    std::string name = "15-to-1";
    long long tiles = 11;
    double cycles_per_state_c = 121.0;  // absolute cycles per output state
    double distill_prefactor = 35.0;
    bool ccz = false;                   // true: outputs CCZ states, else T states
    long long d = 11;
    long long count = 1;                // parallel copies

    double footprint() const { return static_cast<double>(tiles) * 2.0 * d * d; }
    double cycles_per_state() const { return cycles_per_state_c; }
    double distillation_error(double p_p) const { return distill_prefactor * p_p * p_p * p_p; }

    static MagicStateFactory t_factory(long long d, long long count = 1);
    static MagicStateFactory ccz_factory(long long d, long long count = 1);
};

// --- hardware parameters -----------------------------------------------------

struct PhysicalParameters {
    double p_phys = 1e-3;
    double cycle_time_s = 1e-6;

    static PhysicalParameters superconducting_realistic() { return {1e-3, 1e-6}; }
    static PhysicalParameters superconducting_optimistic() { return {1e-4, 4e-7}; }
    static PhysicalParameters ion_realistic() { return {1e-4, 1e-3}; }
    static PhysicalParameters ion_optimistic() { return {1e-5, 1e-4}; }
};

// --- logical workload --------------------------------------------------------

/// Concrete logical workload entering the physical model. Rotations must be
/// folded into T gates beforehand (see `from`); Cliffords and measurements
/// are carried along but treated as free in cycle accounting.
struct LogicalCounts {
    long long algorithm_qubits = 0;
    long long t = 0;
    long long toffoli = 0;
    long long clifford = 0;
    long long measurement = 0;

    /// Aggregates the tally under the policy and extracts concrete numbers.
    static LogicalCounts from(long long algorithm_qubits, const GateCounts& counts,
                              const AggregationPolicy& policy = {});
    bool is_zero() const;
};

// --- cost model --------------------------------------------------------------

struct PhysicalCostModel {
    QECScheme qec;
    DataBlock data_block;
    MagicStateFactory factory;
    PhysicalParameters params;
};

struct PhysicalCost {
    double physical_qubits = 0;
    double cycles = 0;
    double wall_time_s = 0;
    double failure_prob = 0;
};

/// Magic states the factory must supply for the workload (T-state factories
/// enact a Toffoli from four T states; CCZ factories consume one state per
/// Toffoli and one per two T gates).
double magic_states_needed(const MagicStateFactory& factory, const LogicalCounts& counts);

/// Maps the workload through the model. Cycles are the larger of the data
/// block's consumption limit and the factories' production limit; failure is
/// the data-storage error plus the magic-state error. Throws BudgetInfeasible
/// if the resulting failure probability exceeds the budget.
PhysicalCost estimate(const PhysicalCostModel& model, const LogicalCounts& counts,
                      double error_budget);

// --- design solvers ----------------------------------------------------------

enum class DesignStrategy { GridSearchVolume, ThirdsBudget };

struct DesignResult {
    long long d_data = 0;
    long long d_factory = 0;
    long long factory_count = 1;
    PhysicalCost cost;
};

inline constexpr long long kMaxCodeDistance = 51;

/// Chooses code distances (and, for the grid search, the factory count)
/// within the model template. GridSearchVolume minimizes physical qubits x
/// wall time subject to the budget; ThirdsBudget gives one third of the
/// budget each to magic states and to data storage (the remaining third is
/// reserved for the upstream rotation synthesis) and solves each distance
/// independently.
DesignResult solve_design(DesignStrategy strategy, const PhysicalCostModel& model_template,
                          const LogicalCounts& counts, double error_budget);

}  // namespace qre
