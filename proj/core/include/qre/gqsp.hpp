#pragma once

#include <complex>
#include <vector>

#include "qre/serialize.hpp"
#include "qre/tensor.hpp"

namespace qre {

using Coeffs = std::vector<std::complex<double>>;

/// A pair of Laurent-free polynomials P, Q (coefficients in ascending degree)
/// satisfying |P(e^{iθ})|² + |Q(e^{iθ})|² = 1 on the unit circle.
struct GQSPPoly {
    Coeffs p, q;

    long long degree() const;
    /// Checks the unit-circle identity within 1e-6 over 1024 samples and
    /// |P| ≤ 1 + 1e-9; throws NormExceeded on violation.
    void validate() const;
};

enum class ComplementMethod { RootFactorization, FFT };

/// Evaluate Σ c_k z^k.
std::complex<double> poly_eval(const Coeffs& c, std::complex<double> z);

/// Q with |P|² + |Q|² = 1 on the unit circle. RootFactorization (default)
/// factorizes 1 − |P|² over its roots and handles zeros on the circle; the
/// FFT method solves the same problem by spectral factorization and needs
/// 1 − |P|² strictly positive. Throws NormExceeded when |P| > 1.
Coeffs complementary_polynomial(const Coeffs& p,
                                ComplementMethod method = ComplementMethod::RootFactorization);

/// Build and validate the (P, Q) pair.
GQSPPoly gqsp_poly(const Coeffs& p, ComplementMethod method = ComplementMethod::RootFactorization);

/// SU(2) interferometer rotations realizing the pair: the circuit
/// R_d · C_U · R_{d−1} ⋯ C_U · R_0 has P(U) as its ⟨0|·|0⟩ signal block.
/// Throws AngleSolveFailure when the peel-off degenerates.
std::vector<Eigen::Matrix2cd> gqsp_rotations(const GQSPPoly& poly);

/// Dense unitary of the interferometer for a given system unitary, with the
/// signal qubit as the most significant wire.
CMat gqsp_matrix(const CMat& u, const std::vector<Eigen::Matrix2cd>& rotations);

/// One arbitrary single-qubit rotation synthesized as three Z-axis
/// rotations, each at a third of the total precision budget.
class SU2Rotation final : public Bloq {
public:
    SU2Rotation(Eigen::Matrix2cd m, double eps);
    std::string name() const override { return "SU2"; }
    AttrMap attributes() const override;
    Signature signature() const override {
        return Signature{Register("q", QDType::bit())};
    }
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    Eigen::Matrix2cd m_;
    double eps_;
};

/// Signal-processed unitary: applies the polynomial P to a thru-register
/// unitary U, using degree(P) controlled-U calls and degree(P)+1 SU(2)
/// rotations on the signal qubit.
class GQSP final : public Bloq {
public:
    GQSP(BloqPtr u, GQSPPoly poly, double eps);
    std::string name() const override { return "GQSP"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<std::vector<Callee>> callees() const override;
    std::optional<CMat> leaf_tensor() const override;
    const GQSPPoly& poly() const { return poly_; }

private:
    BloqPtr u_;
    GQSPPoly poly_;
    double eps_;
    std::vector<Eigen::Matrix2cd> rotations_;
};

struct GQSPCostReport {
    long long controlled_u = 0;
    long long su2_rotations = 0;
    long long z_rotations = 0;
    GateCounts rotation_counts;
};

/// Cost rule for a degree-d polynomial at overall rotation precision eps.
GQSPCostReport gqsp_cost(long long degree, double eps);

/// Coefficient lists serialize as arrays of [re, im] pairs.
Json coeffs_to_json(const Coeffs& c);
Coeffs coeffs_from_json(const Json& j);

}  // namespace qre
