#pragma once

#include "qre/qrom.hpp"

namespace qre {

/// Alias table over weights quantized to a grid of 2^mu tickets per column.
/// Column i keeps its own index when sigma < keep[i], else falls back to
/// alt[i]. Full columns are stored as keep = 0 with alt = i, which yields
/// the same outcome for every sigma.
struct AliasTable {
    long long mu = 0;
    std::vector<long long> keep;
    std::vector<long long> alt;
};

/// Vose construction with largest-remainder quantization; all ties broken
/// by ascending index so the table is a pure function of its inputs.
AliasTable build_alias_table(const std::vector<double>& weights, long long mu);

/// Exact distribution sampled by the table under uniform (index, sigma).
std::vector<double> alias_sampled_distribution(const AliasTable& t);

enum class StatePrepKind { ViaRotations, AliasSampling, SparseViaRotations, SparseAlias,
                           Uniform };

/// Gate bill of preparing an N-element state to precision epsilon. Sparse
/// kinds replace N by the sparsity in the dominant terms.
GateCounts state_prep_cost(StatePrepKind kind, long long N, double epsilon,
                           long long sparsity = -1);

/// Purified density-matrix preparation: uniform index + threshold lookup +
/// comparison + conditional swap. The tensor is the exact purification of
/// the quantized distribution, with the comparison registers as garbage.
class StatePreparationAliasSampling final : public Bloq {
public:
    StatePreparationAliasSampling(std::vector<double> weights, long long mu);
    std::string name() const override { return "StatePrepAliasSampling"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;
    const AliasTable& table() const { return table_; }
    long long selection_bits() const { return sel_bits_; }

private:
    std::vector<double> weights_;
    long long mu_, sel_bits_;
    AliasTable table_;
};

/// Uniform superposition over the first N basis states. Powers of two are
/// pure Hadamard layers; other N use one round of amplitude amplification.
class PrepareUniformSuperposition final : public Bloq {
public:
    explicit PrepareUniformSuperposition(long long n, double epsilon = 1e-10);
    std::string name() const override { return "PrepUniform"; }
    AttrMap attributes() const override {
        return {{"N", n_}, {"eps", SymExpr::real(eps_)}};
    }
    Signature signature() const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    long long n_;
    double eps_;
};

}  // namespace qre
