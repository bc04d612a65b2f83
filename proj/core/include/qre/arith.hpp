#pragma once

#include "qre/gates.hpp"

namespace qre {

/// x ^= K for a classical constant K.
class XorK final : public Bloq {
public:
    XorK(long long n, long long k);
    std::string name() const override { return "XorK"; }
    AttrMap attributes() const override { return {{"n", n_}, {"k", k_}}; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;
    long long bits() const { return n_; }
    long long constant() const { return k_; }

private:
    long long n_, k_;
};

/// In-place ripple-carry addition b += a (mod 2^n) with one carry ancilla.
class Adder final : public Bloq {
public:
    explicit Adder(long long n);
    std::string name() const override { return "Adder"; }
    AttrMap attributes() const override { return {{"n", n_}}; }
    Signature signature() const override;
    bool has_decomposition() const override { return true; }
    void build_decomposition(GraphBuilder& bb) const override;
    std::optional<std::vector<Callee>> callees() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;

private:
    long long n_;
};

/// x += K (mod 2^n) when the control is set. The constant can be folded into
/// the carry network, so this costs the same as an uncontrolled constant add.
class CAddK final : public Bloq {
public:
    CAddK(long long n, long long k);
    std::string name() const override { return "CAddK"; }
    AttrMap attributes() const override { return {{"n", n_}, {"k", k_}}; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    long long n_, k_;
};

/// flag ^= (a < b), via a borrow-chain comparison.
class LessThan final : public Bloq {
public:
    explicit LessThan(long long n);
    std::string name() const override { return "LessThan"; }
    AttrMap attributes() const override { return {{"n", n_}}; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    long long n_;
};

/// flag ^= (x < K) for a classical constant K.
class LessThanConstant final : public Bloq {
public:
    LessThanConstant(long long n, long long k);
    std::string name() const override { return "LessThanK"; }
    AttrMap attributes() const override { return {{"n", n_}, {"k", k_}}; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    long long n_, k_;
};

/// n-bit controlled swap, one Fredkin per bit pair.
class CSwapN final : public Bloq {
public:
    explicit CSwapN(long long n);
    std::string name() const override { return "CSwapN"; }
    AttrMap attributes() const override { return {{"n", n_}}; }
    Signature signature() const override;
    bool has_decomposition() const override { return true; }
    void build_decomposition(GraphBuilder& bb) const override;
    std::optional<std::vector<Callee>> callees() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;

private:
    long long n_;
};

/// target ^= AND of k controls, implemented with a ladder of logical-AND
/// compute/uncompute pairs.
class MultiCToffoli final : public Bloq {
public:
    explicit MultiCToffoli(long long k);
    std::string name() const override { return "MultiCToffoli"; }
    AttrMap attributes() const override { return {{"k", k_}}; }
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    long long k_;
};

/// Single-control wrapper around an arbitrary bloq with thru-only registers.
/// Cost is tallied as the inner bloq's cost: the wrapper is meant for use
/// inside selection networks, where the control arrives on a dedicated
/// ancilla whose cost is carried by the surrounding AND tree.
class Controlled final : public Bloq {
public:
    explicit Controlled(BloqPtr inner);
    std::string name() const override { return "C[" + inner_->name() + "]"; }
    AttrMap attributes() const override { return {{"inner", inner_->key()}}; }
    Signature signature() const override;
    std::optional<std::vector<Callee>> callees() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    const BloqPtr& inner() const { return inner_; }

private:
    BloqPtr inner_;
};

}  // namespace qre
