#pragma once

#include "qre/bloq.hpp"

namespace qre {

/// Fan a multi-qubit register out into individual bits (MSB first).
class Split final : public Bloq {
public:
    explicit Split(QDType dtype);
    std::string name() const override { return "Split"; }
    Signature signature() const override;
    AttrMap attributes() const override { return {{"dtype", dtype_.key()}}; }
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override { return GateCounts::zero(); }
    const QDType& dtype() const { return dtype_; }

private:
    QDType dtype_;
};

/// Inverse of Split: reassemble bits (MSB first) into one register.
class Join final : public Bloq {
public:
    explicit Join(QDType dtype);
    std::string name() const override { return "Join"; }
    Signature signature() const override;
    AttrMap attributes() const override { return {{"dtype", dtype_.key()}}; }
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override { return GateCounts::zero(); }
    const QDType& dtype() const { return dtype_; }

private:
    QDType dtype_;
};

/// Bring a zero-initialized register into scope (RightOnly register).
class Allocate final : public Bloq {
public:
    explicit Allocate(QDType dtype) : dtype_(std::move(dtype)) {}
    std::string name() const override { return "Allocate"; }
    Signature signature() const override {
        return Signature{Register("reg", dtype_, {}, Side::RightOnly)};
    }
    AttrMap attributes() const override { return {{"dtype", dtype_.key()}}; }
    std::optional<ClassicalMap> apply_classical(const ClassicalMap&) const override {
        return ClassicalMap{{"reg", ClassicalValue::of(dtype_, 0)}};
    }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override { return GateCounts::zero(); }
    const QDType& dtype() const { return dtype_; }

private:
    QDType dtype_;
};

/// Discard a register known to be |0⟩ (LeftOnly register).
class Free final : public Bloq {
public:
    explicit Free(QDType dtype) : dtype_(std::move(dtype)) {}
    std::string name() const override { return "Free"; }
    Signature signature() const override {
        return Signature{Register("reg", dtype_, {}, Side::LeftOnly)};
    }
    AttrMap attributes() const override { return {{"dtype", dtype_.key()}}; }
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override { return GateCounts::zero(); }
    const QDType& dtype() const { return dtype_; }

private:
    QDType dtype_;
};

}  // namespace qre
