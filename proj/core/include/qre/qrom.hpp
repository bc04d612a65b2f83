#pragma once

#include "qre/arith.hpp"

namespace qre {

/// Toffoli bill of iterating a controlled for-loop over L branches using a
/// balanced AND tree with ceil(log2 L) clean ancillas.
GateCounts unary_iteration_cost(const SymExpr& L);

/// Sparse variant: only `nonzero` of the 2^S branches act; cost is the
/// smaller of the dense tree and per-branch comparisons.
GateCounts unary_iteration_cost_sparse(long long nonzero, long long selection_bits);

/// Applies x_j ^= k_j simultaneously on several same-shaped registers; the
/// per-index payload of a lookup-table multiplexer.
class XorTuple final : public Bloq {
public:
    XorTuple(long long b, std::vector<long long> ks);
    std::string name() const override { return "XorTuple"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;
    const std::vector<long long>& constants() const { return ks_; }

private:
    long long b_;
    std::vector<long long> ks_;
};

/// Multiplexer over a 1D array of same-signature sub-bloqs: applies
/// bloqs[sel] to the shared target registers. Decomposes into a balanced
/// AND-tree walk; subtrees whose payloads are all identical collapse to a
/// single (possibly unconditional) application.
class ApplyLthBloq final : public Bloq {
public:
    explicit ApplyLthBloq(std::vector<BloqPtr> bloqs);
    std::string name() const override { return "ApplyLthBloq"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    bool has_decomposition() const override { return true; }
    void build_decomposition(GraphBuilder& bb) const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    long long selection_bits() const { return sel_bits_; }
    const std::vector<BloqPtr>& branches() const { return bloqs_; }

private:
    std::vector<BloqPtr> bloqs_;
    long long sel_bits_;
};

/// Returns the multiplexer, or the single branch itself when there is
/// nothing to select over.
BloqPtr apply_lth_bloq(std::vector<BloqPtr> bloqs);

enum class QROMVariant { Plain, SelectSwap, QROAMClean, QROAMCleanAdjoint };

struct QROMSpec {
    std::vector<std::vector<long long>> datasets;
    long long target_bitsize = 0;
    QROMVariant variant = QROMVariant::Plain;
    SymExpr block_exponent = SymExpr::integer(0);
};

struct QROMCostReport {
    GateCounts counts;
    SymExpr clean_ancilla = SymExpr::integer(0);
    SymExpr dirty_ancilla = SymExpr::integer(0);
    /// Leading-order Clifford tally; not exact (lower-order terms dropped).
    SymExpr cliffords_leading = SymExpr::integer(0);
    bool cliffords_approximate = true;
};

/// Toffoli/ancilla bill of a table lookup over N entries of b bits with
/// block exponent k, per variant.
QROMCostReport qrom_cost(const QROMSpec& spec);
QROMCostReport qrom_cost(QROMVariant variant, const SymExpr& N, const SymExpr& b,
                         const SymExpr& k);

/// Integer k in [0, ceil(log2 N)] minimizing the variant's Toffoli count.
long long optimal_block_exponent(long long N, long long b, QROMVariant variant);

/// Quantum lookup table: target_j ^= dataset_j[selection]. The plain
/// variant carries a full unary-iteration decomposition (with the
/// variable-spacing optimization); the blocked variants are cost-formula
/// leaves with the same classical action.
class QROM final : public Bloq {
public:
    QROM(std::vector<std::vector<long long>> datasets, long long target_bitsize,
         QROMVariant variant = QROMVariant::Plain, long long block_exponent = 0);
    std::string name() const override;
    AttrMap attributes() const override;
    Signature signature() const override;
    bool has_decomposition() const override { return variant_ == QROMVariant::Plain; }
    void build_decomposition(GraphBuilder& bb) const override;
    std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const override;
    std::optional<GateCounts> leaf_gate_counts() const override;
    long long entries() const { return static_cast<long long>(datasets_[0].size()); }
    long long selection_bits() const { return sel_bits_; }

private:
    std::vector<std::vector<long long>> datasets_;
    long long b_;
    QROMVariant variant_;
    long long k_;
    long long sel_bits_;
};

}  // namespace qre
