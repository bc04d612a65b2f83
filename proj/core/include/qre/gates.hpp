#pragma once

#include "qre/bloq.hpp"

namespace qre {

/// Shared base for fixed-arity primitive gates defined by a constant tensor.
class SimpleGate : public Bloq {
public:
    Signature signature() const override;

protected:
    explicit SimpleGate(int qubits) : qubits_(qubits) {}
    int qubits_;
};

class XGate final : public SimpleGate {
public:
    XGate() : SimpleGate(1) {}
    std::string name() const override { return "X"; }
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::cliffords(SymExpr::integer(1));
    }
};

class YGate final : public SimpleGate {
public:
    YGate() : SimpleGate(1) {}
    std::string name() const override { return "Y"; }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::cliffords(SymExpr::integer(1));
    }
};

class ZGate final : public SimpleGate {
public:
    ZGate() : SimpleGate(1) {}
    std::string name() const override { return "Z"; }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::cliffords(SymExpr::integer(1));
    }
};

class HGate final : public SimpleGate {
public:
    HGate() : SimpleGate(1) {}
    std::string name() const override { return "H"; }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::cliffords(SymExpr::integer(1));
    }
};

class SGate final : public SimpleGate {
public:
    SGate() : SimpleGate(1) {}
    std::string name() const override { return "S"; }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::cliffords(SymExpr::integer(1));
    }
};

class TGate final : public SimpleGate {
public:
    explicit TGate(bool adjoint = false) : SimpleGate(1), adjoint_(adjoint) {}
    std::string name() const override { return adjoint_ ? "T†" : "T"; }
    AttrMap attributes() const override { return {{"adjoint", adjoint_}}; }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::t_gates(SymExpr::integer(1));
    }

private:
    bool adjoint_;
};

class CNot final : public Bloq {
public:
    std::string name() const override { return "CNOT"; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::cliffords(SymExpr::integer(1));
    }
};

class CZGate final : public SimpleGate {
public:
    CZGate() : SimpleGate(2) {}
    std::string name() const override { return "CZ"; }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::cliffords(SymExpr::integer(1));
    }
};

class SwapGate final : public Bloq {
public:
    std::string name() const override { return "Swap"; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::cliffords(SymExpr::integer(1));
    }
};

class Toffoli final : public Bloq {
public:
    std::string name() const override { return "Toffoli"; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::toffolis(SymExpr::integer(1));
    }
};

/// Controlled swap of two single-qubit targets (Fredkin).
class CSwap final : public Bloq {
public:
    std::string name() const override { return "CSwap"; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::toffolis(SymExpr::integer(1));
    }
};

/// Compute-only logical AND into a fresh ancilla. Counted as one Toffoli;
/// the adjoint is uncomputed by measurement and costs none.
class And final : public Bloq {
public:
    std::string name() const override { return "And"; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::toffolis(SymExpr::integer(1));
    }
};

class AndAdjoint final : public Bloq {
public:
    std::string name() const override { return "And†"; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::measurements(SymExpr::integer(1)) +
               GateCounts::cliffords(SymExpr::integer(1));
    }
};

/// Z^t up to global phase: diag(1, e^{i pi t}), synthesized to precision eps.
class ZPow final : public SimpleGate {
public:
    ZPow(SymExpr t, SymExpr eps) : SimpleGate(1), t_(std::move(t)), eps_(std::move(eps)) {}
    ZPow(double t, double eps) : ZPow(SymExpr::real(t), SymExpr::real(eps)) {}
    std::string name() const override { return "ZPow"; }
    AttrMap attributes() const override { return {{"t", t_}, {"eps", eps_}}; }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::rotation(eps_);
    }
    const SymExpr& exponent() const { return t_; }
    const SymExpr& epsilon() const { return eps_; }

private:
    SymExpr t_, eps_;
};

/// exp(-i Z theta / 2) to precision eps.
class Rz final : public SimpleGate {
public:
    Rz(SymExpr theta, SymExpr eps)
        : SimpleGate(1), theta_(std::move(theta)), eps_(std::move(eps)) {}
    Rz(double theta, double eps) : Rz(SymExpr::real(theta), SymExpr::real(eps)) {}
    std::string name() const override { return "Rz"; }
    AttrMap attributes() const override { return {{"theta", theta_}, {"eps", eps_}}; }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::rotation(eps_);
    }
    const SymExpr& theta() const { return theta_; }
    const SymExpr& epsilon() const { return eps_; }

private:
    SymExpr theta_, eps_;
};

/// Destructive Z-basis measurement (outcome discarded at the IR level).
class Measure final : public Bloq {
public:
    std::string name() const override { return "Measure"; }
    Signature signature() const override {
        return Signature{Register("q", QDType::bit(), {}, Side::LeftOnly)};
    }
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::measurements(SymExpr::integer(1));
    }
};

/// Scalar phase factor e^{i phi}; no registers.
class GlobalPhase final : public Bloq {
public:
    explicit GlobalPhase(double phi) : phi_(phi) {}
    std::string name() const override { return "GPhase"; }
    Signature signature() const override { return Signature{}; }
    AttrMap attributes() const override { return {{"phi", SymExpr::real(phi_)}}; }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override { return GateCounts::zero(); }

private:
    double phi_;
};

/// No-op placeholder on a typed register.
class Identity final : public Bloq {
public:
    explicit Identity(QDType dtype) : dtype_(std::move(dtype)) {}
    std::string name() const override { return "I"; }
    Signature signature() const override { return Signature{Register("reg", dtype_)}; }
    AttrMap attributes() const override { return {{"dtype", dtype_.key()}}; }
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override {
        return ins;
    }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override { return GateCounts::zero(); }

private:
    QDType dtype_;
};

/// Opaque leaf with a declared symbolic Clifford tally, for parametric demos.
class ArbitraryCliffords final : public Bloq {
public:
    explicit ArbitraryCliffords(SymExpr n) : n_(std::move(n)) {}
    std::string name() const override { return "AnyCliffords"; }
    Signature signature() const override { return Signature{Register("q", QDType::bit())}; }
    AttrMap attributes() const override { return {{"n", n_}}; }
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::cliffords(n_);
    }

private:
    SymExpr n_;
};

}  // namespace qre
