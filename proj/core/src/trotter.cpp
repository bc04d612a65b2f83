#include "qre/trotter.hpp"

#include "qre/gates.hpp"
#include "qre/resource.hpp"

namespace qre {

namespace {

SymExpr toffolis_per_step(const SymExpr& l) {
    return SymExpr::integer(6) * SymExpr::floor(l * l / SymExpr::integer(2));
}

}  // namespace

TrotterStep::TrotterStep(SymExpr l, SymExpr eps) : l_(std::move(l)), eps_(std::move(eps)) {}

Signature TrotterStep::signature() const {
    return Signature{Register("system", QDType::uint(SymExpr::integer(2) * l_ * l_))};
}

SymExpr TrotterStep::rotations_per_step(const SymExpr& l) {
    return SymExpr::integer(2) * l * l + SymExpr::integer(6) * SymExpr::floor(l * l / SymExpr::integer(2));
}

std::optional<std::vector<Callee>> TrotterStep::callees() const {
    return std::vector<Callee>{
        {make_bloq<ZPow>(SymExpr::symbol("theta"), eps_), rotations_per_step(l_)},
        {make_bloq<Toffoli>(), toffolis_per_step(l_)}};
}

TrotterQPE::TrotterQPE(TrotterQPESymbols syms) : syms_(std::move(syms)) {
    // evolution-time steps per unit: (Delta_TS / xi)^(-1/p)
    SymExpr per_unit = SymExpr::pow(syms_.delta_ts / syms_.xi,
                                    SymExpr::integer(-1) / syms_.p);
    steps_ = SymExpr::real(0.76) * SymExpr::pi() / syms_.delta_pe * per_unit;
    eps_ = syms_.delta_ht / (TrotterStep::rotations_per_step(syms_.L) * per_unit);
}

AttrMap TrotterQPE::attributes() const {
    return {{"L", syms_.L},
            {"p", syms_.p},
            {"xi", syms_.xi},
            {"dts", syms_.delta_ts},
            {"dpe", syms_.delta_pe},
            {"dht", syms_.delta_ht}};
}

Signature TrotterQPE::signature() const {
    return Signature{
        Register("system", QDType::uint(SymExpr::integer(2) * syms_.L * syms_.L))};
}

std::optional<std::vector<Callee>> TrotterQPE::callees() const {
    return std::vector<Callee>{{make_bloq<TrotterStep>(syms_.L, eps_), steps_}};
}

TrotterCostReport trotter_qpe_t_cost(TrotterQPESymbols syms) {
    auto bloq = make_bloq<TrotterQPE>(std::move(syms));
    AggregationPolicy policy;  // Toffolis fold into T at a factor of four
    GateCounts counts = gate_counts(bloq, policy);
    return TrotterCostReport{bloq, counts.t};
}

}  // namespace qre
