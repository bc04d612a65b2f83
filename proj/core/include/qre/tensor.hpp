#pragma once

#include "qre/graph.hpp"

namespace qre {

struct TensorOptions {
    /// Cap on simultaneously live qubits during contraction. Bloqs with a
    /// directly defined leaf tensor bypass the cap.
    int max_qubits = 14;
};

/// Dense tensor of a bloq: shape (2^right_qubits, 2^left_qubits), qubit
/// order following the signature with MSB-first registers. Leaf tensors are
/// used directly; otherwise the full decomposition is contracted in
/// topological order, with Allocate injecting |0⟩ columns and Free
/// projecting onto ⟨0| rows.
CMat tensor_of(const Bloq& b, const TensorOptions& opts = {});
inline CMat tensor_of(const BloqPtr& b, const TensorOptions& opts = {}) {
    return tensor_of(*b, opts);
}

/// Matrix of a bloq's classical action: a 1 at (f(x), x) for every left-
/// boundary basis state x. Useful as the leaf tensor of reversible
/// arithmetic bloqs.
CMat classical_tensor(const Bloq& b, int max_qubits = 18);

/// ⟨0|^a ⊗ I · t · |0⟩^a ⊗ I for the `a` most-significant qubits (the
/// convention is that ancilla registers come first in the signature).
CMat block_extract(const CMat& t, long long ancilla_qubits);

/// Largest |A - e^{iφ}B| entry after optimal global-phase alignment.
double max_abs_diff_up_to_phase(const CMat& a, const CMat& b);

/// U†U = I deviation (max abs entry).
double unitarity_defect(const CMat& u);

/// Largest singular value.
double spectral_norm(const CMat& m);

}  // namespace qre
