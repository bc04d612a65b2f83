#include "qre/rotations.hpp"

#include <cmath>
#include <complex>

#include "qre/graph.hpp"

namespace qre {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Reject concrete precisions outside (0, 1); symbolic ones pass through.
bool is_concrete(const SymExpr& e) {
    std::set<std::string> syms;
    e.free_symbols(syms);
    return syms.empty();
}

void check_epsilon(const SymExpr& eps) {
    if (!is_concrete(eps)) return;
    double v = eps.evaluate_double({});
    if (!(v > 0.0 && v < 1.0)) throw BadEpsilon("rotation precision must lie in (0, 1)");
}

}  // namespace

GateCounts zpow_direct_cost(const SymExpr& epsilon) {
    check_epsilon(epsilon);
    return GateCounts::t_gates(rotation_t_cost(epsilon));
}

ProgrammedAncillaCost zpow_programmed_ancilla_cost(const SymExpr& epsilon, long long rounds) {
    if (rounds < 1) throw BadParams("at least one teleportation round is required");
    check_epsilon(epsilon);
    SymExpr n = SymExpr::integer(rounds);
    ProgrammedAncillaCost out;
    out.resource_states = rounds;
    out.gates = GateCounts::t_gates(n * rotation_t_cost(epsilon / n));
    return out;
}

long long rounds_for_success_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) throw BadParams("success probability must lie in (0, 1)");
    return static_cast<long long>(std::ceil(std::log2(1.0 / p)));
}

GateCounts zpow_phase_gradient_cost(long long b_grad) {
    if (b_grad < 3) throw BadSize("phase-gradient register needs at least 3 qubits");
    return GateCounts::toffolis(SymExpr::integer(b_grad - 2));
}

long long phase_gradient_bitsize(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw BadEpsilon("precision must lie in (0, 1)");
    return static_cast<long long>(std::ceil(std::log2(2.0 * kPi / epsilon)));
}

// ---------------------------------------------------------------------------
// PhaseGradientState

PhaseGradientState::PhaseGradientState(long long b) : b_(b) {
    if (b < 1 || b > 62) throw BadSize("gradient size must be in [1, 62]");
}

Signature PhaseGradientState::signature() const {
    return Signature{Register("phi", QDType::uint(b_), {}, Side::RightOnly)};
}

std::optional<CMat> PhaseGradientState::leaf_tensor() const {
    if (b_ > 14) return std::nullopt;
    long long dim = 1LL << b_;
    CMat m(dim, 1);
    double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (long long k = 0; k < dim; ++k)
        m(k, 0) = norm * std::exp(std::complex<double>(0.0, -2.0 * kPi * k / dim));
    return m;
}

// ---------------------------------------------------------------------------
// ZPowProgrammedAncilla

ZPowProgrammedAncilla::ZPowProgrammedAncilla(SymExpr t, SymExpr eps, long long rounds)
    : t_(std::move(t)), eps_(std::move(eps)), rounds_(rounds) {
    if (rounds < 1) throw BadParams("at least one teleportation round is required");
}

Signature ZPowProgrammedAncilla::signature() const {
    return Signature{Register("q", QDType::bit())};
}

std::optional<CMat> ZPowProgrammedAncilla::leaf_tensor() const {
    if (!is_concrete(t_)) return std::nullopt;
    double t = t_.evaluate_double({});
    CMat m = CMat::Identity(2, 2);
    m(1, 1) = std::exp(std::complex<double>(0.0, kPi * t));
    return m;
}

std::optional<GateCounts> ZPowProgrammedAncilla::leaf_gate_counts() const {
    return zpow_programmed_ancilla_cost(eps_, rounds_).gates;
}

// ---------------------------------------------------------------------------
// ZPowViaPhaseGradient

ZPowViaPhaseGradient::ZPowViaPhaseGradient(double t, long long b_grad) : t_(t), b_(b_grad) {
    if (b_grad < 3 || b_grad > 62) throw BadSize("gradient size must be in [3, 62]");
}

ZPowViaPhaseGradient ZPowViaPhaseGradient::from_precision(double t, double epsilon) {
    return ZPowViaPhaseGradient(t, phase_gradient_bitsize(epsilon));
}

Signature ZPowViaPhaseGradient::signature() const {
    return Signature{Register("q", QDType::bit()), Register("phi", QDType::uint(b_))};
}

long long ZPowViaPhaseGradient::addend() const {
    long long dim = 1LL << b_;
    long long v = static_cast<long long>(std::llround(t_ * static_cast<double>(dim / 2)));
    return ((v % dim) + dim) % dim;
}

std::optional<std::vector<Callee>> ZPowViaPhaseGradient::callees() const {
    return std::vector<Callee>{{make_bloq<CAddK>(b_, addend()), SymExpr::integer(1)}};
}

void ZPowViaPhaseGradient::build_decomposition(GraphBuilder& bb) const {
    auto out = bb.add(make_bloq<CAddK>(b_, addend()),
                      std::map<std::string, Port>{{"ctrl", bb.input("q")}, {"x", bb.input("phi")}});
    bb.set_output("q", out[0]);
    bb.set_output("phi", out[1]);
}

// ---------------------------------------------------------------------------
// Quantum variable rotation

GateCounts qvr_cost(QvrVariant variant, long long n, const SymExpr& epsilon) {
    if (n < 1) throw BadSize("variable rotation needs at least one qubit");
    check_epsilon(epsilon);
    if (variant == QvrVariant::ZPow)
        return GateCounts::rotation(epsilon / SymExpr::integer(n), SymExpr::integer(n));
    SymExpr b_grad = SymExpr::ceil(SymExpr::log2(
        SymExpr::integer(2) * SymExpr::pi() * SymExpr::integer(n) / epsilon));
    return GateCounts::toffolis(b_grad - SymExpr::integer(2));
}

QvrZPow::QvrZPow(long long n, SymExpr eps) : n_(n), eps_(std::move(eps)) {
    if (n < 1) throw BadSize("variable rotation needs at least one qubit");
}

Signature QvrZPow::signature() const { return Signature{Register("x", QDType::uint(n_))}; }

std::optional<std::vector<Callee>> QvrZPow::callees() const {
    std::vector<Callee> cs;
    SymExpr eps_each = eps_ / SymExpr::integer(n_);
    for (long long j = 0; j < n_; ++j)
        cs.push_back({make_bloq<ZPow>(SymExpr::pow(SymExpr::integer(2), SymExpr::integer(-j)),
                                      eps_each),
                      SymExpr::integer(1)});
    return cs;
}

void QvrZPow::build_decomposition(GraphBuilder& bb) const {
    std::vector<Port> bits =
        n_ > 1 ? bb.split(bb.input("x")) : std::vector<Port>{bb.input("x")};
    SymExpr eps_each = eps_ / SymExpr::integer(n_);
    for (long long j = 0; j < n_; ++j) {
        // bit j (MSB-first) carries fractional weight 2^{-(j+1)}: ZPow(2^-j)
        auto out = bb.add(
            make_bloq<ZPow>(SymExpr::pow(SymExpr::integer(2), SymExpr::integer(-j)), eps_each),
            std::map<std::string, Port>{{"q", bits[static_cast<size_t>(j)]}});
        bits[static_cast<size_t>(j)] = out[0];
    }
    bb.set_output("x", n_ > 1 ? bb.join(bits, QDType::uint(n_)) : bits[0]);
}

}  // namespace qre
