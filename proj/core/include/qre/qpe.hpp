#pragma once

#include "qre/tensor.hpp"

namespace qre {

/// Control-register preparation for phase estimation. Kaiser windows carry a
/// shape parameter; the other kinds ignore it.
struct WindowSpec {
    enum class Kind { Rectangular, Sine, Kaiser };
    Kind kind = Kind::Rectangular;
    long long m = 1;            // control-register bitsize
    double kaiser_alpha = 1.0;  // Kaiser shape parameter
};

/// Normalized window amplitudes over the 2^m basis states.
Eigen::VectorXd window_amplitudes(const WindowSpec& w);

/// Modified Bessel function I_0 by its power series (1e-15 stopping).
double bessel_i0(double x);

/// State-preparation bloq for a window; RightOnly register of m qubits.
class WindowState final : public Bloq {
public:
    explicit WindowState(WindowSpec spec);
    std::string name() const override { return "WindowState"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<CMat> leaf_tensor() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;
    const WindowSpec& spec() const { return spec_; }

private:
    WindowSpec spec_;
};

/// Inverse quantum Fourier transform cost leaf: m(m−1)/2 controlled
/// rotations for the textbook circuit, or ~m·log2(m) for the approximate
/// variant.
class QFTInverse final : public Bloq {
public:
    QFTInverse(long long m, double rot_eps, bool approximate);
    std::string name() const override { return "QFTInverse"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<GateCounts> leaf_gate_counts() const override;

private:
    long long m_;
    double eps_;
    bool approx_;
};

struct QPEOptions {
    /// Powers C-U^{2^i} cost one controlled application each (e.g. modular
    /// multiplication) instead of 2^i repetitions.
    bool fast_forwardable = false;
    bool approximate_qft = false;
    double rotation_eps = 1e-10;
};

/// Assembled phase-estimation bloq: window prep, the ladder of controlled
/// powers, and the inverse transform.
class PhaseEstimation final : public Bloq {
public:
    PhaseEstimation(BloqPtr u, WindowSpec window, QPEOptions opts);
    std::string name() const override { return "PhaseEstimation"; }
    AttrMap attributes() const override;
    Signature signature() const override;
    std::optional<std::vector<Callee>> callees() const override;
    /// 2^m − 1 in general; m when fast-forwardable.
    SymExpr controlled_u_applications() const;

private:
    BloqPtr u_;
    WindowSpec window_;
    QPEOptions opts_;
};

struct QPEAssembly {
    BloqPtr bloq;
    SymExpr controlled_u_applications;
};

QPEAssembly qpe_assemble(BloqPtr u, const WindowSpec& window, const QPEOptions& opts = {});

// --- bitsize formulas -----------------------------------------------------

struct ConfidenceInterval {
    double eps;    // half-width of the interval
    double delta;  // tolerated probability outside it
};
struct HolevoVarianceTarget {
    double eps;  // target standard deviation
};

/// Control bits needed to push the error probability outside the interval
/// below delta, per window kind. Kaiser carries an additive slack for its
/// unspecified lower-order term.
long long qpe_bits_for(WindowSpec::Kind kind, const ConfidenceInterval& ci,
                       long long kaiser_slack = 0);
/// Control bits needed for a Holevo standard deviation of eps.
long long qpe_bits_for(WindowSpec::Kind kind, const HolevoVarianceTarget& target);

/// Holevo variance of the optimal m-bit protocol: tan²(π/(2^m+1)).
double holevo_variance(long long m);

// --- empirical window quality ---------------------------------------------

/// Holevo variance of the phase-error distribution, averaged over uniformly
/// random true phases (exact per-phase outcome distribution, Monte-Carlo
/// only over the phase draw).
double empirical_holevo_variance(const WindowSpec& w, long long num_phases, unsigned seed);

/// Pr[|phase error| > eps] averaged over a fixed uniform grid of true
/// phases.
double empirical_tail_probability(const WindowSpec& w, double eps, long long num_phases);

}  // namespace qre
