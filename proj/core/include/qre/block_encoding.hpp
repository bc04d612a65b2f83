#pragma once

#include <complex>
#include <vector>

#include "qre/tensor.hpp"

namespace qre {

/// A unitary B together with parameters asserting that the top-left block of
/// B (with the `ancillas` most-significant qubits projected onto |0⟩) equals
/// A/alpha up to `epsilon` for some encoded matrix A.
struct BlockEncoding {
    BloqPtr inner;
    SymExpr alpha = SymExpr::integer(1);
    SymExpr ancillas = SymExpr::integer(0);
    SymExpr epsilon = SymExpr::integer(0);
    SymExpr system_bitsize = SymExpr::integer(1);
    /// Trusted B^2 = I assertion for instances too large to verify densely.
    bool reflection_declared = false;
};

/// True when the parameters are concrete and the inner unitary is small
/// enough to contract densely.
bool be_simulable(const BlockEncoding& be);
/// Dense unitary of the inner bloq.
CMat be_matrix(const BlockEncoding& be);
/// ⟨0|^a B |0⟩^a: the encoded matrix divided by alpha.
CMat be_extract(const BlockEncoding& be);
/// Spectral-norm defect ‖target − alpha·⟨0|^a B|0⟩^a‖ against the matrix the
/// encoding is supposed to carry.
double be_defect(const BlockEncoding& be, const CMat& target);

/// Any unitary is a (1, 0, 0)-encoding of itself. Requires thru-only
/// registers.
BlockEncoding be_unitary(BloqPtr u);

// --- sparse-access encodings ---------------------------------------------

/// Location of the nonzero entries: either the top-left `param`×`param`
/// block, or a symmetric band |i−j| ≤ `param` around the main diagonal.
struct RowColumnOracle {
    enum class Kind { TopLeft, SymmetricBanded };
    Kind kind = Kind::TopLeft;
    long long dim = 0;  // full matrix dimension (power of 2)
    long long param = 0;
};

/// Values of the nonzero entries: a single uniform value, or an explicit
/// dense array whose entries are loaded from a lookup table.
struct EntryOracle {
    enum class Kind { Uniform, Explicit };
    Kind kind = Kind::Uniform;
    long long dim = 0;
    std::complex<double> value = 0.0;
    Eigen::MatrixXcd entries;  // Explicit only; |entry| ≤ 1 required
};

/// (m, s+1, eps)-encoding of an m-sparse matrix with |entries| ≤ 1, where s
/// is the system qubit count. Entry values are quantized to the grid the
/// entry-loading table can hold at precision eps.
BlockEncoding be_sparse_matrix(const RowColumnOracle& rows, const RowColumnOracle& cols,
                               const EntryOracle& entry, long long sparsity, double epsilon);

// --- composite encodings --------------------------------------------------

enum class BEKind { TensorProduct, Product, Phase, LinearCombination, Chebyshev };

/// Inner unitary of a composed encoding. The dense form (when simulable) is
/// a fresh unitary dilation of the composed block; the callee list charges
/// one call to each part's unitary.
class CompositeBE final : public Bloq {
public:
    CompositeBE(BEKind kind, std::vector<BlockEncoding> parts, std::vector<double> lambdas,
                double phi, SymExpr alpha, SymExpr ancillas, SymExpr system_bitsize);
    std::string name() const override;
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<std::vector<Callee>> callees() const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

    BEKind kind() const { return kind_; }
    const std::vector<BlockEncoding>& parts() const { return parts_; }
    const std::vector<double>& lambdas() const { return lambdas_; }
    double phase() const { return phi_; }
    /// The composed block matrix (before dilation), densely evaluated.
    CMat block() const;

private:
    BEKind kind_;
    std::vector<BlockEncoding> parts_;
    std::vector<double> lambdas_;
    double phi_;
    SymExpr alpha_, anc_, sys_;
};

/// ⊗_i A_i: (Πα_i, Σa_i, Σα_iε_i).
BlockEncoding be_tensor_product(std::vector<BlockEncoding> parts);
/// Π_i A_i: (Πα_i, n−1+max a_i, Σα_iε_i).
BlockEncoding be_product(std::vector<BlockEncoding> parts);
/// e^{iφ}A_1: parameters unchanged.
BlockEncoding be_phase(BlockEncoding part, double phi);
/// Σ_i λ_i A_i with real weights: (Σ|λ_i|α_i, ⌈log2 n⌉+max a_i,
/// (Σ|λ_i|)·max ε_i). Nested linear combinations are flattened into one
/// weighted sum before the parameters are derived.
BlockEncoding be_linear_combination(std::vector<BlockEncoding> parts,
                                    std::vector<double> lambdas);
/// T_j(A_1) via the qubitization walk; requires α_1 = 1.
BlockEncoding be_chebyshev(const BlockEncoding& part, long long j);

// --- LCU of Pauli strings -------------------------------------------------

/// One weighted Pauli string, e.g. {−0.5, "XZ"} for −0.5·X⊗Z.
struct PauliTerm {
    double coefficient;
    std::string paulis;  // characters from {I, X, Y, Z}
};

/// Prepare/select encoding of Σ_i λ_i P_i with a Householder prepare. The
/// result squares to the identity, making it a valid walk-operator input.
BlockEncoding be_lcu_paulis(const std::vector<PauliTerm>& terms);

// --- qubitization ---------------------------------------------------------

/// Phase flip on everything except the all-zero state of one register:
/// 2|0⟩⟨0| − I.
class ReflectAboutZero final : public Bloq {
public:
    explicit ReflectAboutZero(SymExpr bits);
    std::string name() const override { return "ReflectZero"; }
    AttrMap attributes() const override { return {{"n", bits_}}; }
    Signature signature() const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    SymExpr bits_;
};

/// Walk operator W = R·B for a reflection encoding B (B² = I), where R
/// reflects about the ancilla zero state. Eigenphases of W are ±arccos of
/// the eigenvalues of A/α.
class QubitizationWalk final : public Bloq {
public:
    explicit QubitizationWalk(BlockEncoding be);
    std::string name() const override { return "Walk"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<std::vector<Callee>> callees() const override;
    std::optional<CMat> leaf_tensor() const override;
    const BlockEncoding& encoding() const { return be_; }

private:
    BlockEncoding be_;
};

/// Walk operator for a reflection encoding; throws NotReflection when B² ≠ I
/// (verified densely when possible, otherwise per the declared flag).
BloqPtr qubitization_walk(const BlockEncoding& be);

/// j-th Chebyshev polynomial of the encoded matrix: ⟨0|W^j|0⟩ = T_j(A/α),
/// costing j walk calls. j = 0 yields an identity encoding.
BlockEncoding chebyshev_via_walk(const BlockEncoding& be, long long j);

/// W^j as a bloq, with a callee list of j walk applications.
class ChebyshevWalk final : public Bloq {
public:
    ChebyshevWalk(BlockEncoding be, long long j);
    std::string name() const override { return "ChebyshevWalk"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<std::vector<Callee>> callees() const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    BlockEncoding be_;
    long long j_;
};

/// Unitary completion with the given contraction in its top-left block,
/// using one effective ancilla qubit out of `ancilla_qubits` ≥ 1. Singular
/// values may exceed 1 by at most `clip`; larger overshoots throw
/// NormExceeded.
CMat dilation_unitary(const CMat& block, long long ancilla_qubits, double clip = 1e-7);

}  // namespace qre
