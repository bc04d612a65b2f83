#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qre/classical_value.hpp"
#include "qre/gate_counts.hpp"
#include "qre/registers.hpp"

namespace qre {

class GraphBuilder;
class Bloq;
using BloqPtr = std::shared_ptr<const Bloq>;
using CMat = Eigen::MatrixXcd;

/// Classical parameter attached to a bloq; restricted to hashable kinds so
/// bloq equality stays decidable for memoized analyses.
using AttrValue = std::variant<long long, Rational, bool, std::string, SymExpr>;
using AttrMap = std::map<std::string, AttrValue>;

std::string attr_str(const AttrValue& v);

/// One call-graph edge: callee plus (possibly symbolic) multiplicity.
struct Callee {
    BloqPtr bloq;
    SymExpr multiplicity;
};

/// Immutable named quantum operation. Identity (for equality, hashing and
/// memoization) is name + attributes + signature; everything else — the
/// decomposition, callee list, classical action, tensor, cost annotations —
/// is derived behavior.
class Bloq : public std::enable_shared_from_this<Bloq> {
public:
    virtual ~Bloq() = default;

    virtual std::string name() const = 0;
    virtual Signature signature() const = 0;
    virtual AttrMap attributes() const { return {}; }

    virtual bool has_decomposition() const { return false; }
    /// Populate the builder (pre-seeded with this bloq's left registers).
    virtual void build_decomposition(GraphBuilder& bb) const;

    /// Declared callee list, if any; independent of the full decomposition.
    virtual std::optional<std::vector<Callee>> callees() const { return std::nullopt; }

    /// Direct classical action; nullopt defers to the decomposition.
    virtual std::optional<ClassicalMap> apply_classical(const ClassicalMap& ins) const {
        return std::nullopt;
    }

    /// Dense tensor of shape (2^right_qubits, 2^left_qubits) for leaves.
    virtual std::optional<CMat> leaf_tensor() const { return std::nullopt; }

    /// Primitive gate identity for counting, if this bloq is a costed leaf.
    virtual std::optional<GateCounts> leaf_gate_counts() const { return std::nullopt; }

    /// Explicit qubit-count annotation overriding decomposition tracing.
    virtual std::optional<SymExpr> qubit_annotation() const { return std::nullopt; }

    std::string key() const;

    friend bool operator==(const Bloq& a, const Bloq& b) { return a.key() == b.key(); }
};

/// Order/compare helper for using bloqs as map keys.
struct BloqKeyLess {
    bool operator()(const BloqPtr& a, const BloqPtr& b) const { return a->key() < b->key(); }
};

template <typename T, typename... Args>
BloqPtr make_bloq(Args&&... args) {
    return std::make_shared<const T>(std::forward<Args>(args)...);
}

}  // namespace qre
