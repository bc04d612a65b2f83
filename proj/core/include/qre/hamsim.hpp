#pragma once

#include "qre/block_encoding.hpp"
#include "qre/gqsp.hpp"

namespace qre {

/// Half-degree d of the truncated Bessel expansion of e^{−iτcosθ}: smallest
/// d whose tail Σ_{k>d}|J_k(τ)| stays within the precision budget. Throws
/// DegreeOverflow beyond `cap`.
long long hamsim_degree(double alpha_t, double epsilon, long long cap = 4096);

/// Coefficients c_{−d}..c_{d} with c_k = (−i)^{|k|} J_{|k|}(τ), so that
/// Σ_k c_k e^{ikθ} ≈ e^{−iτcosθ}.
Coeffs jacobi_anger_coefficients(double alpha_t, long long d);

/// Signal-processed walk operator implementing e^{−iHt}: GQSP with the
/// shifted Bessel polynomial, followed by unshifting applications of the
/// inverse walk.
class HamSimGQSP final : public Bloq {
public:
    HamSimGQSP(BlockEncoding be, double t, double epsilon, long long degree_cap);
    std::string name() const override { return "HamSimGQSP"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<std::vector<Callee>> callees() const override;
    std::optional<CMat> leaf_tensor() const override;
    /// Half-degree of the Bessel truncation; the signal polynomial has
    /// degree twice this.
    long long half_degree() const { return d_; }

private:
    BlockEncoding be_;
    BloqPtr walk_;
    GQSPPoly poly_;
    double t_, eps_;
    long long d_;
};

/// (1, a+1, ε)-encoding of e^{−iHt} given an exact (α, a, 0) reflection
/// encoding of H.
BlockEncoding hamsim_gqsp(const BlockEncoding& be, double t, double epsilon,
                          long long degree_cap = 4096);

}  // namespace qre
