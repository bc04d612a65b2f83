#pragma once

#include <functional>
#include <map>
#include <string>

#include "qre/symbolic.hpp"

namespace qre {

/// T-count of directly synthesizing one small-angle Z rotation to precision
/// epsilon with standard repeat-until-success sequences.
SymExpr rotation_t_cost(const SymExpr& epsilon);

/// How factored gate counts collapse into a single T tally.
struct AggregationPolicy {
    enum class ToffoliToT { Four, Seven, KeepToffoli };
    ToffoliToT toffoli_to_t = ToffoliToT::Four;
    std::function<SymExpr(const SymExpr& epsilon)> rotation_to_t = rotation_t_cost;

    long long toffoli_t_factor() const {
        return toffoli_to_t == ToffoliToT::Seven ? 7 : 4;
    }
};

/// Factored logical gate tally. Rotations are kept as a multiset keyed by
/// their precision so distinct epsilons are never silently merged.
struct GateCounts {
    SymExpr t = SymExpr::integer(0);
    SymExpr toffoli = SymExpr::integer(0);
    SymExpr clifford = SymExpr::integer(0);
    SymExpr measurement = SymExpr::integer(0);
    std::map<std::string, std::pair<SymExpr, SymExpr>> rotations;  // eps key -> (eps, count)

    static GateCounts zero() { return {}; }
    static GateCounts t_gates(SymExpr n);
    static GateCounts toffolis(SymExpr n);
    static GateCounts cliffords(SymExpr n);
    static GateCounts measurements(SymExpr n);
    static GateCounts rotation(SymExpr epsilon, SymExpr count = SymExpr::integer(1));

    GateCounts& operator+=(const GateCounts& o);
    friend GateCounts operator+(GateCounts a, const GateCounts& b) { return a += b; }
    /// Every field multiplied by m.
    GateCounts scaled(const SymExpr& m) const;

    /// Collapse rotations (and Toffolis, per policy) into the T field.
    GateCounts aggregate(const AggregationPolicy& policy) const;
    /// Aggregated T count; Toffolis remain separate under KeepToffoli.
    SymExpr total_t_with(const AggregationPolicy& policy) const;

    SymExpr total_rotations() const;
    bool is_zero() const;
    std::string str() const;
};

}  // namespace qre
