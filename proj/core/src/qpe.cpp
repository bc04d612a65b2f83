#include "qre/qpe.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/FFT>

#include "qre/arith.hpp"

namespace qre {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

void check_window(const WindowSpec& w) {
    if (w.m < 1) throw BadWindow("control bitsize must be at least 1");
    if (w.kind == WindowSpec::Kind::Kaiser && !(w.kaiser_alpha >= 0.0))
        throw BadWindow("Kaiser shape parameter must be non-negative");
}

const char* kind_name(WindowSpec::Kind k) {
    switch (k) {
        case WindowSpec::Kind::Rectangular: return "rectangular";
        case WindowSpec::Kind::Sine: return "sine";
        case WindowSpec::Kind::Kaiser: return "kaiser";
    }
    return "?";
}

/// Outcome distribution of one phase-estimation run at true phase phi.
std::vector<double> outcome_distribution(const Eigen::VectorXd& w, double phi) {
    long long n = w.size();
    std::vector<Complex> v(static_cast<size_t>(n));
    for (long long x = 0; x < n; ++x)
        v[static_cast<size_t>(x)] =
            w(x) * std::exp(Complex(0.0, 2.0 * kPi * static_cast<double>(x) * phi));
    Eigen::FFT<double> fft;
    std::vector<Complex> a;
    fft.fwd(a, v);
    std::vector<double> p(static_cast<size_t>(n));
    for (long long k = 0; k < n; ++k)
        p[static_cast<size_t>(k)] = std::norm(a[static_cast<size_t>(k)]) / static_cast<double>(n);
    return p;
}

}  // namespace

double bessel_i0(double x) {
    double half = x / 2.0;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= (half / k) * (half / k);
        sum += term;
        if (term < 1e-15 * sum) break;
    }
    return sum;
}

Eigen::VectorXd window_amplitudes(const WindowSpec& w) {
    check_window(w);
    if (w.m > 26) throw TooLarge("window amplitudes limited to 26 control qubits");
    long long n = 1LL << w.m;
    Eigen::VectorXd v(n);
    switch (w.kind) {
        case WindowSpec::Kind::Rectangular:
            v.setConstant(1.0);
            break;
        case WindowSpec::Kind::Sine:
            for (long long x = 0; x < n; ++x)
                v(x) = std::sin(kPi * static_cast<double>(x + 1) / static_cast<double>(n + 1));
            break;
        case WindowSpec::Kind::Kaiser: {
            double denom = bessel_i0(kPi * w.kaiser_alpha);
            for (long long x = 0; x < n; ++x) {
                double u = (static_cast<double>(x) - static_cast<double>(n) / 2.0) /
                           (static_cast<double>(n) / 2.0);
                v(x) = bessel_i0(kPi * w.kaiser_alpha * std::sqrt(std::max(0.0, 1.0 - u * u))) /
                       denom;
            }
            break;
        }
    }
    return v / v.norm();
}

WindowState::WindowState(WindowSpec spec) : spec_(spec) { check_window(spec_); }

AttrMap WindowState::attributes() const {
    return {{"kind", std::string(kind_name(spec_.kind))},
            {"m", spec_.m},
            {"alpha", SymExpr::real(spec_.kaiser_alpha)}};
}

Signature WindowState::signature() const {
    return Signature{Register("qpe_reg", QDType::uint(spec_.m), {}, Side::RightOnly)};
}

std::optional<CMat> WindowState::leaf_tensor() const {
    if (spec_.m > 20) return std::nullopt;
    Eigen::VectorXd v = window_amplitudes(spec_);
    CMat col(v.size(), 1);
    for (long long i = 0; i < v.size(); ++i) col(i, 0) = v(i);
    return col;
}

std::optional<GateCounts> WindowState::leaf_gate_counts() const {
    long long m = spec_.m;
    switch (spec_.kind) {
        case WindowSpec::Kind::Rectangular:
            return GateCounts::cliffords(SymExpr::integer(m));  // Hadamard on every qubit
        case WindowSpec::Kind::Sine:
            // One amplitude-amplification round on top of a uniform layer.
            return GateCounts::toffolis(SymExpr::integer(3 * std::max(m - 1, 1LL))) +
                   GateCounts::rotation(SymExpr::real(1e-10), SymExpr::integer(2)) +
                   GateCounts::cliffords(SymExpr::integer(2 * m));
        case WindowSpec::Kind::Kaiser:
            // Generic amplitude loading, one rotation per control qubit.
            return GateCounts::rotation(SymExpr::real(1e-10), SymExpr::integer(m)) +
                   GateCounts::cliffords(SymExpr::integer(2 * m));
    }
    return GateCounts::zero();
}

QFTInverse::QFTInverse(long long m, double rot_eps, bool approximate)
    : m_(m), eps_(rot_eps), approx_(approximate) {
    if (m < 1) throw BadParams("transform needs at least one qubit");
    if (!(rot_eps > 0.0 && rot_eps < 1.0)) throw BadEpsilon("precision must lie in (0, 1)");
}

AttrMap QFTInverse::attributes() const {
    return {{"m", m_}, {"eps", SymExpr::real(eps_)}, {"approx", approx_}};
}

Signature QFTInverse::signature() const {
    return Signature{Register("reg", QDType::uint(m_))};
}

std::optional<GateCounts> QFTInverse::leaf_gate_counts() const {
    long long rotations;
    if (approx_) {
        long long logm = 0;
        while ((1LL << logm) < m_) ++logm;
        rotations = m_ * std::max(logm, 1LL);
    } else {
        rotations = m_ * (m_ - 1) / 2;
    }
    GateCounts g = GateCounts::cliffords(SymExpr::integer(m_ + m_ / 2));
    if (rotations > 0)
        g += GateCounts::rotation(SymExpr::real(eps_), SymExpr::integer(rotations));
    return g;
}

PhaseEstimation::PhaseEstimation(BloqPtr u, WindowSpec window, QPEOptions opts)
    : u_(std::move(u)), window_(window), opts_(opts) {
    if (!u_) throw Error("null bloq");
    check_window(window_);
    Signature usig = u_->signature();
    for (const Register& r : usig.registers())
        if (r.side != Side::Thru)
            throw SignatureMismatch("phase estimation needs a thru-register unitary");
}

AttrMap PhaseEstimation::attributes() const {
    return {{"u", u_->key()},
            {"kind", std::string(kind_name(window_.kind))},
            {"m", window_.m},
            {"ff", opts_.fast_forwardable}};
}

Signature PhaseEstimation::signature() const {
    std::vector<Register> regs{
        Register("qpe_reg", QDType::uint(window_.m), {}, Side::RightOnly)};
    Signature usig = u_->signature();
    for (const Register& r : usig.registers()) regs.push_back(r);
    return Signature{std::move(regs)};
}

SymExpr PhaseEstimation::controlled_u_applications() const {
    if (opts_.fast_forwardable) return SymExpr::integer(window_.m);
    if (window_.m <= 62) return SymExpr::integer((1LL << window_.m) - 1);
    return SymExpr::pow(SymExpr::integer(2), SymExpr::integer(window_.m)) - SymExpr::integer(1);
}

std::optional<std::vector<Callee>> PhaseEstimation::callees() const {
    return std::vector<Callee>{
        {make_bloq<WindowState>(window_), SymExpr::integer(1)},
        {make_bloq<Controlled>(u_), controlled_u_applications()},
        {make_bloq<QFTInverse>(window_.m, opts_.rotation_eps, opts_.approximate_qft),
         SymExpr::integer(1)}};
}

QPEAssembly qpe_assemble(BloqPtr u, const WindowSpec& window, const QPEOptions& opts) {
    auto bloq = make_bloq<PhaseEstimation>(std::move(u), window, opts);
    SymExpr apps = static_cast<const PhaseEstimation&>(*bloq).controlled_u_applications();
    return QPEAssembly{bloq, apps};
}

// ---------------------------------------------------------------------------
// bitsize formulas

namespace {
void check_fraction(double v, const char* what) {
    if (!(v > 0.0 && v < 1.0)) throw BadParams(std::string(what) + " must lie in (0, 1)");
}
}  // namespace

long long qpe_bits_for(WindowSpec::Kind kind, const ConfidenceInterval& ci,
                       long long kaiser_slack) {
    check_fraction(ci.eps, "interval half-width");
    check_fraction(ci.delta, "failure probability");
    double bits;
    switch (kind) {
        case WindowSpec::Kind::Rectangular:
            bits = std::log2(1.0 / ci.eps) + std::log2(2.0 + 2.0 / ci.delta);
            break;
        case WindowSpec::Kind::Sine:
            bits = std::log2(1.0 / ci.eps) +
                   std::log2(std::pow(kPi, 2.0 / 3.0) /
                                 (std::pow(48.0, 1.0 / 3.0) * std::cbrt(ci.delta)) +
                             2.0);
            break;
        case WindowSpec::Kind::Kaiser:
            bits = std::log2(std::log(1.0 / ci.delta) / ci.eps);
            return static_cast<long long>(std::ceil(bits)) + kaiser_slack;
        default:
            throw BadParams("unknown window kind");
    }
    return static_cast<long long>(std::ceil(bits));
}

long long qpe_bits_for(WindowSpec::Kind kind, const HolevoVarianceTarget& target) {
    check_fraction(target.eps, "target deviation");
    switch (kind) {
        case WindowSpec::Kind::Rectangular:
            return static_cast<long long>(std::ceil(2.0 * std::log2(kPi / target.eps)));
        case WindowSpec::Kind::Sine:
            return static_cast<long long>(std::ceil(std::log2(kPi / target.eps)));
        case WindowSpec::Kind::Kaiser:
            throw BadParams("no variance bitsize rule is defined for the Kaiser window");
    }
    throw BadParams("unknown window kind");
}

double holevo_variance(long long m) {
    if (m < 1) throw BadParams("control bitsize must be at least 1");
    double t = std::tan(kPi / (std::pow(2.0, static_cast<double>(m)) + 1.0));
    return t * t;
}

// ---------------------------------------------------------------------------
// empirical window quality

double empirical_holevo_variance(const WindowSpec& w, long long num_phases, unsigned seed) {
    if (num_phases < 1) throw BadParams("need at least one sampled phase");
    Eigen::VectorXd amps = window_amplitudes(w);
    long long n = amps.size();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Complex acc = 0.0;
    for (long long i = 0; i < num_phases; ++i) {
        double phi = unif(rng);
        std::vector<double> p = outcome_distribution(amps, phi);
        for (long long k = 0; k < n; ++k)
            acc += p[static_cast<size_t>(k)] *
                   std::exp(Complex(0.0, 2.0 * kPi * (static_cast<double>(k) / n - phi)));
    }
    double mean = std::abs(acc) / static_cast<double>(num_phases);
    return 1.0 / (mean * mean) - 1.0;
}

double empirical_tail_probability(const WindowSpec& w, double eps, long long num_phases) {
    if (num_phases < 1) throw BadParams("need at least one grid phase");
    check_fraction(eps, "error threshold");
    Eigen::VectorXd amps = window_amplitudes(w);
    long long n = amps.size();
    double total = 0.0;
    for (long long i = 0; i < num_phases; ++i) {
        double phi = (static_cast<double>(i) + 0.5) / static_cast<double>(num_phases);
        std::vector<double> p = outcome_distribution(amps, phi);
        for (long long k = 0; k < n; ++k) {
            double diff = std::abs(static_cast<double>(k) / n - phi);
            diff = std::min(diff, 1.0 - diff);  // wrapped phase distance
            if (diff > eps) total += p[static_cast<size_t>(k)];
        }
    }
    return total / static_cast<double>(num_phases);
}

}  // namespace qre
