#include "qre/gqsp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "qre/arith.hpp"

namespace qre {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

Coeffs trimmed(Coeffs c) {
    while (c.size() > 1 && std::abs(c.back()) < 1e-12) c.pop_back();
    if (c.empty()) c.push_back(0.0);
    return c;
}

double max_abs_on_circle(const Coeffs& c, int samples = 1024) {
    double mx = 0.0;
    for (int i = 0; i < samples; ++i) {
        double th = 2.0 * kPi * i / samples;
        mx = std::max(mx, std::abs(poly_eval(c, Complex(std::cos(th), std::sin(th)))));
    }
    return mx;
}

/// Roots of Σ c_k z^k (c normalized, leading coefficient nonzero) via the
/// companion-matrix eigenproblem.
std::vector<Complex> poly_roots(const Coeffs& c) {
    long long d = static_cast<long long>(c.size()) - 1;
    if (d < 1) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (long long i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (long long i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<size_t>(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> roots(static_cast<size_t>(d));
    for (long long i = 0; i < d; ++i) roots[static_cast<size_t>(i)] = es.eigenvalues()(i);
    return roots;
}

Coeffs multiply_root(Coeffs q, Complex r) {
    // q(z) * (z - r)
    Coeffs out(q.size() + 1, 0.0);
    for (size_t i = 0; i < q.size(); ++i) {
        out[i + 1] += q[i];
        out[i] -= r * q[i];
    }
    return out;
}

Coeffs root_factorization(const Coeffs& p) {
    Coeffs pt = trimmed(p);
    long long d = static_cast<long long>(pt.size()) - 1;

    // f(z) = z^d (1 - P(z) conj(P)(1/z)), a degree-2d polynomial whose roots
    // come in pairs (r, 1/conj(r)); zeros on the circle have even
    // multiplicity.
    Coeffs f(static_cast<size_t>(2 * d + 1), 0.0);
    for (long long k = -d; k <= d; ++k) {
        Complex c = k == 0 ? 1.0 : 0.0;
        for (long long j = std::max(0LL, k); j <= std::min(d, d + k); ++j)
            c -= pt[static_cast<size_t>(j)] * std::conj(pt[static_cast<size_t>(j - k)]);
        f[static_cast<size_t>(k + d)] = c;
    }
    double fmax = 0.0;
    for (const Complex& v : f) fmax = std::max(fmax, std::abs(v));
    if (fmax < 1e-12) return {0.0};  // |P| = 1 on the whole circle

    // Roots at the origin (low-order zero coefficients) count as interior.
    size_t origin = 0;
    while (origin < f.size() - 1 && std::abs(f[origin]) < 1e-12 * fmax) ++origin;
    Coeffs reduced(f.begin() + static_cast<long long>(origin), f.end());
    reduced = trimmed(reduced);

    std::vector<Complex> roots = poly_roots(reduced);
    std::vector<Complex> chosen(origin, Complex(0.0));
    std::vector<Complex> circle;
    for (const Complex& r : roots) {
        double m = std::abs(r);
        if (m < 1.0 - 1e-6)
            chosen.push_back(r);
        else if (m <= 1.0 + 1e-6)
            circle.push_back(r);
    }
    // Pair up the on-circle roots: cluster by proximity and keep half of
    // each cluster.
    std::vector<bool> used(circle.size(), false);
    for (size_t i = 0; i < circle.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> cluster;
        for (size_t j = i; j < circle.size(); ++j)
            if (!used[j] && std::abs(circle[j] - circle[i]) < 1e-3) {
                used[j] = true;
                cluster.push_back(j);
            }
        for (size_t k = 0; k < cluster.size() / 2; ++k) chosen.push_back(circle[cluster[k]]);
    }

    Coeffs q{1.0};
    for (const Complex& r : chosen) q = multiply_root(std::move(q), r);

    // Fix the overall scale against sqrt(1 - |P|^2) on a grid.
    std::vector<double> ratios;
    for (int i = 0; i < 1024; ++i) {
        double th = 2.0 * kPi * (i + 0.37) / 1024.0;
        Complex z(std::cos(th), std::sin(th));
        double target = std::sqrt(std::max(0.0, 1.0 - std::norm(poly_eval(pt, z))));
        double mag = std::abs(poly_eval(q, z));
        if (mag > 1e-9) ratios.push_back(target / mag);
    }
    if (ratios.empty()) return {0.0};
    std::nth_element(ratios.begin(), ratios.begin() + static_cast<long long>(ratios.size() / 2),
                     ratios.end());
    double scale = ratios[ratios.size() / 2];
    for (Complex& c : q) c *= scale;
    return q;
}

Coeffs fft_complement(const Coeffs& p) {
    Coeffs pt = trimmed(p);
    long long d = static_cast<long long>(pt.size()) - 1;
    size_t grid = 4096;
    while (grid < 32 * static_cast<size_t>(d + 1)) grid *= 2;

    std::vector<Complex> logs(grid);
    for (size_t j = 0; j < grid; ++j) {
        double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
        double g = 1.0 - std::norm(poly_eval(pt, Complex(std::cos(th), std::sin(th))));
        if (g < 1e-13)
            throw NormExceeded(
                "|P| reaches 1 on the unit circle; use the root-factorization method");
        logs[j] = 0.5 * std::log(g);
    }
    Eigen::FFT<double> fft;
    std::vector<Complex> spec;
    fft.fwd(spec, logs);
    // One-sided (analytic) completion so that exp() of it is a polynomial in
    // z with no negative powers.
    for (size_t k = 1; k < grid / 2; ++k) spec[k] *= 2.0;
    for (size_t k = grid / 2 + 1; k < grid; ++k) spec[k] = 0.0;
    std::vector<Complex> h;
    fft.inv(h, spec);
    std::vector<Complex> qgrid(grid);
    for (size_t j = 0; j < grid; ++j) qgrid[j] = std::exp(h[j]);
    std::vector<Complex> qspec;
    fft.fwd(qspec, qgrid);
    Coeffs q(static_cast<size_t>(d + 1));
    for (long long k = 0; k <= d; ++k)
        q[static_cast<size_t>(k)] = qspec[static_cast<size_t>(k)] / static_cast<double>(grid);
    return q;
}

/// Laurent coefficients of 1 − P P̄(1/z̄) − Q Q̄(1/z̄) for k = 0..d.
Coeffs norm_residual(const Coeffs& p, const Coeffs& q, long long d) {
    Coeffs e(static_cast<size_t>(d + 1), 0.0);
    for (long long k = 0; k <= d; ++k) {
        Complex s = k == 0 ? 1.0 : 0.0;
        for (long long j = k; j <= d; ++j) {
            if (j < static_cast<long long>(p.size()) &&
                j - k < static_cast<long long>(p.size()))
                s -= p[static_cast<size_t>(j)] * std::conj(p[static_cast<size_t>(j - k)]);
            if (j < static_cast<long long>(q.size()) &&
                j - k < static_cast<long long>(q.size()))
                s -= q[static_cast<size_t>(j)] * std::conj(q[static_cast<size_t>(j - k)]);
        }
        e[static_cast<size_t>(k)] = s;
    }
    return e;
}

/// Newton refinement of the complement: drive the coefficient-space identity
/// |P|^2 + |Q|^2 = 1 down to machine precision. The rotation peel-off
/// amplifies any violation of this identity through small leading
/// coefficients, so a merely grid-accurate Q is not good enough.
Coeffs refine_complement(const Coeffs& p, Coeffs q) {
    long long d = std::max(p.size(), q.size()) - 1;
    double qmax = 0.0;
    for (const Complex& v : q) qmax = std::max(qmax, std::abs(v));
    if (qmax < 1e-8) return q;  // P is (nearly) unimodular; nothing to refine
    q.resize(static_cast<size_t>(d + 1), 0.0);

    for (int iter = 0; iter < 12; ++iter) {
        Coeffs e = norm_residual(p, q, d);
        double emax = 0.0;
        for (const Complex& v : e) emax = std::max(emax, std::abs(v));
        if (emax < 1e-15) break;

        // Linearize: dQ Q̄* + Q dQ̄* = E in Laurent coefficients, solved in
        // the 2(d+1) real unknowns (Re dq_j, Im dq_j) by least squares (the
        // global phase of Q is the one null direction).
        long long rows = 2 * d + 1, cols = 2 * (d + 1);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
        for (long long k = 0; k <= d; ++k) {
            long long rr = k == 0 ? 0 : 2 * k - 1;  // Re-part row
            long long ri = 2 * k;                   // Im-part row (k >= 1)
            for (long long j = k; j <= d; ++j) {
                Complex c1 = std::conj(q[static_cast<size_t>(j - k)]);
                a(rr, 2 * j) += c1.real();
                a(rr, 2 * j + 1) -= c1.imag();
                if (k > 0) {
                    a(ri, 2 * j) += c1.imag();
                    a(ri, 2 * j + 1) += c1.real();
                }
            }
            for (long long m = 0; m + k <= d; ++m) {
                Complex c2 = q[static_cast<size_t>(m + k)];
                a(rr, 2 * m) += c2.real();
                a(rr, 2 * m + 1) += c2.imag();
                if (k > 0) {
                    a(ri, 2 * m) += c2.imag();
                    a(ri, 2 * m + 1) -= c2.real();
                }
            }
            rhs(rr) = e[static_cast<size_t>(k)].real();
            if (k > 0) rhs(ri) = e[static_cast<size_t>(k)].imag();
        }
        Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs);
        for (long long j = 0; j <= d; ++j)
            q[static_cast<size_t>(j)] += Complex(x(2 * j), x(2 * j + 1));
    }
    return q;
}

}  // namespace

Complex poly_eval(const Coeffs& c, Complex z) {
    Complex acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

long long GQSPPoly::degree() const {
    return static_cast<long long>(
        std::max(trimmed(p).size(), trimmed(q).size())) - 1;
}

void GQSPPoly::validate() const {
    for (int i = 0; i < 1024; ++i) {
        double th = 2.0 * kPi * i / 1024.0;
        Complex z(std::cos(th), std::sin(th));
        double pp = std::norm(poly_eval(p, z));
        double qq = std::norm(poly_eval(q, z));
        if (pp > 1.0 + 2e-9)
            throw NormExceeded("|P| exceeds 1 on the unit circle");
        if (std::abs(pp + qq - 1.0) > 1e-6)
            throw NormExceeded("|P|^2 + |Q|^2 deviates from 1 on the unit circle");
    }
}

Coeffs complementary_polynomial(const Coeffs& p, ComplementMethod method) {
    if (max_abs_on_circle(p) > 1.0 + 1e-9)
        throw NormExceeded("|P| exceeds 1 on the unit circle");
    Coeffs pt = trimmed(p);
    if (pt.size() == 1 && std::abs(pt[0]) < 1e-12) return {1.0};  // P = 0
    Coeffs q = method == ComplementMethod::RootFactorization ? root_factorization(pt)
                                                             : fft_complement(pt);
    q = refine_complement(pt, std::move(q));
    // Orientation freedom: z^d conj(Q)(1/z̄) is an equally valid complement
    // (roots reflected through the unit circle). Pick the one with the larger
    // leading coefficient — the rotation peel-off pivots on the leading pair,
    // and a tiny pivot amplifies rounding noise catastrophically.
    q.resize(pt.size(), 0.0);
    if (std::abs(q.back()) < std::abs(q.front())) {
        Coeffs rev(q.size());
        for (size_t k = 0; k < q.size(); ++k) rev[k] = std::conj(q[q.size() - 1 - k]);
        q = std::move(rev);
    }
    GQSPPoly pair{pt, q};
    pair.validate();
    return q;
}

GQSPPoly gqsp_poly(const Coeffs& p, ComplementMethod method) {
    GQSPPoly poly{trimmed(p), complementary_polynomial(p, method)};
    poly.validate();
    return poly;
}

std::vector<Eigen::Matrix2cd> gqsp_rotations(const GQSPPoly& poly) {
    Coeffs p = trimmed(poly.p), q = poly.q;
    long long d = poly.degree();
    p.resize(static_cast<size_t>(d + 1), 0.0);
    q.resize(static_cast<size_t>(d + 1), 0.0);

    std::vector<Eigen::Matrix2cd> rots(static_cast<size_t>(d + 1));
    for (long long k = d; k >= 1; --k) {
        Complex pk = p[static_cast<size_t>(k)], qk = q[static_cast<size_t>(k)];
        double r = std::hypot(std::abs(pk), std::abs(qk));
        if (r < 1e-12) throw AngleSolveFailure("vanishing leading coefficients in the peel-off");
        Complex a = pk / r, b = qk / r;
        Eigen::Matrix2cd rot;
        rot << a, -std::conj(b), b, std::conj(a);
        rots[static_cast<size_t>(k)] = rot;

        // Apply the inverse rotation; the first component must be divisible
        // by z and the second must drop one degree.
        Coeffs np(static_cast<size_t>(k + 1), 0.0), nq(static_cast<size_t>(k), 0.0);
        for (long long i = 0; i <= k; ++i) {
            Complex pi = p[static_cast<size_t>(i)], qi = q[static_cast<size_t>(i)];
            Complex first = std::conj(a) * pi + std::conj(b) * qi;
            Complex second = -b * pi + a * qi;
            np[static_cast<size_t>(i)] = first;
            if (i < k) nq[static_cast<size_t>(i)] = second;
        }
        if (std::abs(np[0]) > 1e-7)
            throw AngleSolveFailure("residual constant term in the peel-off");
        p.assign(np.begin() + 1, np.end());
        q = std::move(nq);
        p.resize(static_cast<size_t>(k), 0.0);
        q.resize(static_cast<size_t>(k), 0.0);
    }
    double n0 = std::norm(p[0]) + std::norm(q[0]);
    if (std::abs(n0 - 1.0) > 1e-6)
        throw AngleSolveFailure("base rotation is not unitary");
    Eigen::Matrix2cd base;
    base << p[0], -std::conj(q[0]), q[0], std::conj(p[0]);
    rots[0] = base / std::sqrt(n0);
    return rots;
}

CMat gqsp_matrix(const CMat& u, const std::vector<Eigen::Matrix2cd>& rotations) {
    long long n = u.rows();
    CMat cu = CMat::Identity(2 * n, 2 * n);
    cu.block(0, 0, n, n) = u;  // signal |0⟩ (most significant) applies U

    auto lift = [n](const Eigen::Matrix2cd& r) {
        CMat out = CMat::Zero(2 * n, 2 * n);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out.block(i * n, j * n, n, n) = r(i, j) * CMat::Identity(n, n);
        return out;
    };

    CMat w = lift(rotations[0]);
    for (size_t k = 1; k < rotations.size(); ++k) w = lift(rotations[k]) * cu * w;
    return w;
}

// ---------------------------------------------------------------------------
// bloqs

SU2Rotation::SU2Rotation(Eigen::Matrix2cd m, double eps) : m_(std::move(m)), eps_(eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw BadEpsilon("precision must lie in (0, 1)");
}

AttrMap SU2Rotation::attributes() const {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) os << m_(i, j).real() << "," << m_(i, j).imag() << ";";
    return {{"matrix", os.str()}, {"eps", SymExpr::real(eps_)}};
}

std::optional<CMat> SU2Rotation::leaf_tensor() const { return CMat(m_); }

std::optional<GateCounts> SU2Rotation::leaf_gate_counts() const {
    return GateCounts::rotation(SymExpr::real(eps_ / 3.0), SymExpr::integer(3));
}

GQSP::GQSP(BloqPtr u, GQSPPoly poly, double eps)
    : u_(std::move(u)), poly_(std::move(poly)), eps_(eps) {
    if (!u_) throw Error("null bloq");
    Signature usig = u_->signature();
    for (const Register& r : usig.registers())
        if (r.side != Side::Thru)
            throw SignatureMismatch("signal processing needs a thru-register unitary");
    if (!(eps > 0.0 && eps < 1.0)) throw BadEpsilon("precision must lie in (0, 1)");
    poly_.validate();
    rotations_ = gqsp_rotations(poly_);
}

AttrMap GQSP::attributes() const {
    std::ostringstream os;
    os.precision(17);
    for (const Complex& c : poly_.p) os << c.real() << "," << c.imag() << ";";
    return {{"u", u_->key()}, {"p", os.str()}, {"eps", SymExpr::real(eps_)}};
}

Signature GQSP::signature() const {
    std::vector<Register> regs{Register("signal", QDType::bit())};
    Signature usig = u_->signature();
    for (const Register& r : usig.registers()) regs.push_back(r);
    return Signature{std::move(regs)};
}

std::optional<std::vector<Callee>> GQSP::callees() const {
    std::vector<Callee> cs;
    long long d = poly_.degree();
    if (d > 0) cs.push_back({make_bloq<Controlled>(u_), SymExpr::integer(d)});
    for (const auto& r : rotations_)
        cs.push_back({make_bloq<SU2Rotation>(r, eps_), SymExpr::integer(1)});
    return cs;
}

std::optional<CMat> GQSP::leaf_tensor() const {
    auto n = u_->signature().total_qubits().as_integer();
    if (!n || *n + 1 > 14) return std::nullopt;
    return gqsp_matrix(tensor_of(*u_), rotations_);
}

GQSPCostReport gqsp_cost(long long degree, double eps) {
    if (degree < 0) throw BadParams("degree must be non-negative");
    GQSPCostReport r;
    r.controlled_u = degree;
    r.su2_rotations = degree + 1;
    r.z_rotations = 3 * (degree + 1);
    r.rotation_counts =
        GateCounts::rotation(SymExpr::real(eps / 3.0), SymExpr::integer(r.z_rotations));
    return r;
}

Json coeffs_to_json(const Coeffs& c) {
    Json arr = Json::array();
    for (const Complex& v : c) arr.push_back(Json::array({v.real(), v.imag()}));
    return arr;
}

Coeffs coeffs_from_json(const Json& j) {
    Coeffs c;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw Error("coefficient entries must be [re, im] pairs");
        c.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return c;
}

}  // namespace qre
