#include "qre/hamsim.hpp"

#include <cmath>
#include <sstream>

namespace qre {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

double bessel_tail(double tau, long long d) {
    // Σ_{k>d} |J_k(τ)| over both expansion sides; the terms decay
    // superexponentially once k exceeds τ.
    double tail = 0.0;
    for (long long k = d + 1; k <= d + 200; ++k) {
        double term = std::abs(std::cyl_bessel_j(static_cast<double>(k), std::abs(tau)));
        tail += term;
        if (term < 1e-18 && k > d + 5) break;
    }
    return 2.0 * tail;
}

}  // namespace

long long hamsim_degree(double alpha_t, double epsilon, long long cap) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw BadEpsilon("precision must lie in (0, 1)");
    double tau = std::abs(alpha_t);
    for (long long d = 0; d <= cap; ++d)
        if (bessel_tail(tau, d) <= epsilon / 4.0) return d;
    throw DegreeOverflow("Bessel truncation degree exceeds the configured cap");
}

Coeffs jacobi_anger_coefficients(double alpha_t, long long d) {
    const Complex minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    Coeffs c(static_cast<size_t>(2 * d + 1));
    for (long long k = -d; k <= d; ++k) {
        long long m = std::llabs(k);
        double j = std::cyl_bessel_j(static_cast<double>(m), std::abs(alpha_t));
        if (alpha_t < 0.0 && m % 2 == 1) j = -j;  // J_m is odd in its argument for odd m
        c[static_cast<size_t>(k + d)] = minus_i_pow[m % 4] * j;
    }
    return c;
}

HamSimGQSP::HamSimGQSP(BlockEncoding be, double t, double epsilon, long long degree_cap)
    : be_(std::move(be)), t_(t), eps_(epsilon) {
    if (!be_.epsilon.is_zero())
        throw BadParams("simulation by signal processing expects an exact encoding");
    walk_ = qubitization_walk(be_);
    if (!be_.alpha.is_const()) throw BadParams("the normalization factor must be numeric");
    double tau = be_.alpha.evaluate({}).as_double() * t_;
    d_ = hamsim_degree(tau, eps_, degree_cap);

    if (d_ == 0) {
        poly_ = GQSPPoly{{1.0}, {0.0}};
        return;
    }
    Coeffs p = jacobi_anger_coefficients(tau, d_);
    // Rein the truncated series strictly inside the unit disc so a
    // complementary polynomial exists; the shrinkage stays within budget.
    double mx = 0.0;
    for (int i = 0; i < 2048; ++i) {
        double th = 2.0 * kPi * i / 2048.0;
        mx = std::max(mx, std::abs(poly_eval(p, Complex(std::cos(th), std::sin(th)))));
    }
    double limit = 1.0 - eps_ / 4.0;
    if (mx > limit)
        for (Complex& c : p) c *= limit / mx;
    poly_ = gqsp_poly(p, ComplementMethod::FFT);
}

AttrMap HamSimGQSP::attributes() const {
    return {{"inner", be_.inner->key()},
            {"t", SymExpr::real(t_)},
            {"eps", SymExpr::real(eps_)}};
}

Signature HamSimGQSP::signature() const {
    std::vector<Register> regs{Register("signal", QDType::bit())};
    Signature wsig = walk_->signature();
    for (const Register& r : wsig.registers()) regs.push_back(r);
    return Signature{std::move(regs)};
}

std::optional<std::vector<Callee>> HamSimGQSP::callees() const {
    std::vector<Callee> cs{{make_bloq<GQSP>(walk_, poly_, eps_), SymExpr::integer(1)}};
    // Unshifting inverse-walk applications; the adjoint costs the same as
    // the walk itself.
    if (d_ > 0) cs.push_back({walk_, SymExpr::integer(d_)});
    return cs;
}

std::optional<CMat> HamSimGQSP::leaf_tensor() const {
    auto n = walk_->signature().total_qubits().as_integer();
    if (!n || *n + 1 > 12) return std::nullopt;
    CMat w = tensor_of(*walk_);
    auto g = GQSP(walk_, poly_, eps_).leaf_tensor();
    if (!g) return std::nullopt;
    CMat wd_adj = CMat::Identity(w.rows(), w.cols());
    for (long long i = 0; i < d_; ++i) wd_adj = wd_adj * w.adjoint();
    CMat lifted = CMat::Zero(2 * w.rows(), 2 * w.cols());
    lifted.block(0, 0, w.rows(), w.cols()) = wd_adj;
    lifted.block(w.rows(), w.cols(), w.rows(), w.cols()) = wd_adj;
    return lifted * *g;
}

BlockEncoding hamsim_gqsp(const BlockEncoding& be, double t, double epsilon,
                          long long degree_cap) {
    BlockEncoding out;
    out.alpha = SymExpr::integer(1);
    out.ancillas = be.ancillas + SymExpr::integer(1);
    out.epsilon = SymExpr::real(epsilon);
    out.system_bitsize = be.system_bitsize;
    out.inner = make_bloq<HamSimGQSP>(be, t, epsilon, degree_cap);
    return out;
}

}  // namespace qre
