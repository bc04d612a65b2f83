#pragma once

#include "qre/bloq.hpp"

namespace qre {

/// Fully symbolic cost demo: product-formula time evolution of the L x L
/// lattice model inside textbook phase estimation. Three error knobs stay
/// symbolic — the product-formula error Delta_TS, the phase-estimation error
/// Delta_PE, and the rotation-synthesis error Delta_HT — together with the
/// lattice size L, the expansion order p, and the error constant xi.
struct TrotterQPESymbols {
    SymExpr L = SymExpr::symbol("L");
    SymExpr p = SymExpr::symbol("p");
    SymExpr xi = SymExpr::symbol("xi");
    SymExpr delta_ts = SymExpr::symbol("Delta_TS");
    SymExpr delta_pe = SymExpr::symbol("Delta_PE");
    SymExpr delta_ht = SymExpr::symbol("Delta_HT");
};

/// One product-formula step: 2L^2 + 6 floor(L^2/2) single-qubit Z rotations
/// (hopping and interaction layers) plus 6 floor(L^2/2) Toffolis, all at a
/// shared synthesis precision.
class TrotterStep final : public Bloq {
public:
    TrotterStep(SymExpr l, SymExpr eps);
    std::string name() const override { return "TrotterStep"; }
    AttrMap attributes() const override { return {{"L", l_}, {"eps", eps_}}; }
    Signature signature() const override;
    std::optional<std::vector<Callee>> callees() const override;

    /// Rotations per step: 2L^2 + 6 floor(L^2/2).
    static SymExpr rotations_per_step(const SymExpr& l);

private:
    SymExpr l_, eps_;
};

/// Phase estimation repeating the step 0.76 pi / Delta_PE x (Delta_TS/xi)^(-1/p)
/// times; the synthesis budget Delta_HT is split evenly over the rotations of
/// one evolution unit.
class TrotterQPE final : public Bloq {
public:
    explicit TrotterQPE(TrotterQPESymbols syms = {});
    std::string name() const override { return "TrotterQPE"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<std::vector<Callee>> callees() const override;

    const SymExpr& steps() const { return steps_; }
    const SymExpr& rotation_eps() const { return eps_; }

private:
    TrotterQPESymbols syms_;
    SymExpr steps_, eps_;
};

struct TrotterCostReport {
    BloqPtr bloq;
    SymExpr t_cost;  // total T count, rotations synthesized, Toffolis at 4 T
};

TrotterCostReport trotter_qpe_t_cost(TrotterQPESymbols syms = {});

}  // namespace qre
