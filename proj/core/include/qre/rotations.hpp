#pragma once

#include "qre/arith.hpp"

namespace qre {

/// A single-qubit Z-axis rotation request, in either convention.
/// Rz(theta) = exp(-i Z theta / 2); ZPow(t) = diag(1, e^{i pi t}).
struct RotationSpec {
    enum class Convention { Rz, ZPow };
    Convention convention = Convention::ZPow;
    SymExpr angle = SymExpr::integer(0);
    SymExpr epsilon = SymExpr::real(1e-10);
};

/// T-count of repeat-until-success Clifford+T synthesis of one Z rotation.
GateCounts zpow_direct_cost(const SymExpr& epsilon);

struct ProgrammedAncillaCost {
    GateCounts gates;
    long long resource_states = 0;
};

/// Gate-teleportation strategy: n pre-prepared single-qubit resource states,
/// each synthesized directly to precision epsilon/n.
ProgrammedAncillaCost zpow_programmed_ancilla_cost(const SymExpr& epsilon, long long rounds = 2);

/// Rounds needed for overall teleportation success probability p.
long long rounds_for_success_probability(double p);

/// One constant addition into a phase-gradient register of b_grad qubits.
GateCounts zpow_phase_gradient_cost(long long b_grad);

/// Gradient register size giving rotation precision epsilon.
long long phase_gradient_bitsize(double epsilon);

/// The catalytic Fourier state (1/sqrt(2^b)) sum_k e^{-2 pi i k / 2^b} |k>.
/// Reusable across rotations; its one-time preparation is not tallied.
class PhaseGradientState final : public Bloq {
public:
    explicit PhaseGradientState(long long b);
    std::string name() const override { return "PhaseGradientState"; }
    AttrMap attributes() const override { return {{"b", b_}}; }
    Signature signature() const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override { return GateCounts::zero(); }

private:
    long long b_;
};

/// ZPow(t) via gate teleportation from programmed resource states. The
/// tensor is the ideal rotation (post-success); the cost is the resource
/// state synthesis bill.
class ZPowProgrammedAncilla final : public Bloq {
public:
    ZPowProgrammedAncilla(SymExpr t, SymExpr eps, long long rounds = 2);
    std::string name() const override { return "ZPowProgAncilla"; }
    AttrMap attributes() const override {
        return {{"t", t_}, {"eps", eps_}, {"rounds", rounds_}};
    }
    Signature signature() const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    SymExpr t_, eps_;
    long long rounds_;
};

/// ZPow(t) by phase kickback: add round(t * 2^{b-1}) into a phase-gradient
/// register travelling alongside the target qubit.
class ZPowViaPhaseGradient final : public Bloq {
public:
    ZPowViaPhaseGradient(double t, long long b_grad);
    static ZPowViaPhaseGradient from_precision(double t, double epsilon);
    std::string name() const override { return "ZPowViaPhaseGrad"; }
    AttrMap attributes() const override {
        return {{"t", SymExpr::real(t_)}, {"b_grad", b_}};
    }
    Signature signature() const override;
    bool has_decomposition() const override { return true; }
    void build_decomposition(GraphBuilder& bb) const override;
    std::optional<std::vector<Callee>> callees() const override;
    long long addend() const;

private:
    double t_;
    long long b_;
};

enum class QvrVariant { ZPow, PhaseGradient };

/// Cost of phasing an n-bit register by e^{2 pi i x}, x read as a fraction.
/// ZPow variant: n single-qubit rotations, each at epsilon/n. PhaseGradient
/// variant: one quantum-quantum addition into a gradient register.
GateCounts qvr_cost(QvrVariant variant, long long n, const SymExpr& epsilon);

/// Per-bit rotation implementation of the quantum variable rotation.
class QvrZPow final : public Bloq {
public:
    QvrZPow(long long n, SymExpr eps);
    std::string name() const override { return "QvrZPow"; }
    AttrMap attributes() const override { return {{"n", n_}, {"eps", eps_}}; }
    Signature signature() const override;
    bool has_decomposition() const override { return true; }
    void build_decomposition(GraphBuilder& bb) const override;
    std::optional<std::vector<Callee>> callees() const override;

private:
    long long n_;
    SymExpr eps_;
};

}  // namespace qre
