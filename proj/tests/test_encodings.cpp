#include <cmath>
#include <complex>

#include "doctest.h"
#include "qre/block_encoding.hpp"
#include "qre/gates.hpp"
#include "qre/gqsp.hpp"
#include "qre/hamsim.hpp"
#include "qre/qpe.hpp"
#include "qre/resource.hpp"

using namespace qre;

namespace {

using Complex = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long long i = 0; i < a.rows(); ++i)
        for (long long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMat pauli(char c) {
    CMat m(2, 2);
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

CMat pauli_terms_matrix(const std::vector<PauliTerm>& terms) {
    long long n = 1LL << terms[0].paulis.size();
    CMat h = CMat::Zero(n, n);
    for (const auto& t : terms) {
        CMat p = CMat::Identity(1, 1);
        for (char c : t.paulis) p = kron(p, pauli(c));
        h += t.coefficient * p;
    }
    return h;
}

CMat hermitian_exp(const CMat& h, double t) {
    // e^{-iHt} for hermitian H via eigendecomposition
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (long long i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double phase_aligned_norm(const CMat& a, const CMat& b) {
    Complex inner = (a.conjugate().cwiseProduct(b)).sum();
    Complex phase = std::abs(inner) < 1e-300 ? Complex(1.0) : inner / std::abs(inner);
    return spectral_norm(a * phase - b);
}

/// Fixed diagonal 2-qubit unitary with four distinct phases.
class DiagU final : public Bloq {
public:
    std::string name() const override { return "DiagU"; }
    Signature signature() const override {
        return Signature{Register("reg", QDType::uint(2))};
    }
    std::optional<CMat> leaf_tensor() const override {
        CMat m = CMat::Zero(4, 4);
        m(0, 0) = 1.0;
        m(1, 1) = Complex(0.0, 1.0);
        m(2, 2) = std::exp(Complex(0.0, 0.7));
        m(3, 3) = -1.0;
        return m;
    }
    std::optional<GateCounts> leaf_gate_counts() const override {
        return GateCounts::rotation(SymExpr::real(1e-10), SymExpr::integer(3));
    }
};

BlockEncoding symbolic_encoding(const std::string& tag) {
    BlockEncoding be;
    be.inner = make_bloq<XGate>();
    be.alpha = SymExpr::symbol("alpha_" + tag);
    be.ancillas = SymExpr::symbol("a_" + tag);
    be.epsilon = SymExpr::symbol("eps_" + tag);
    be.system_bitsize = SymExpr::integer(1);
    return be;
}

}  // namespace

TEST_CASE("wrapping a unitary yields a (1, 0, 0) encoding") {
    BlockEncoding be = be_unitary(make_bloq<XGate>());
    CHECK(be.alpha.is_one());
    CHECK(be.ancillas.is_zero());
    CHECK(be.epsilon.is_zero());
    CHECK(be.system_bitsize == SymExpr::integer(1));

    CMat x = tensor_of(*make_bloq<XGate>());
    CHECK(be_defect(be, x) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((be_extract(be) - x).cwiseAbs().maxCoeff() < 1e-14);

    BlockEncoding again = be_unitary(be.inner);
    CHECK(again.alpha == be.alpha);
    CHECK(again.ancillas == be.ancillas);
    CHECK(again.epsilon == be.epsilon);
}

TEST_CASE("sparse-access encodings carry the matrix over the declared precision") {
    SUBCASE("explicit 2x2 entries") {
        Eigen::MatrixXcd a(2, 2);
        a << 0.0, 0.25, 1.0 / 3.0, 0.467;
        RowColumnOracle topleft{RowColumnOracle::Kind::TopLeft, 2, 2};
        EntryOracle entry{EntryOracle::Kind::Explicit, 2, 0.0, a};
        BlockEncoding be = be_sparse_matrix(topleft, topleft, entry, 2, 1e-3);

        CHECK(be.alpha == SymExpr::integer(2));
        CHECK(be.ancillas == SymExpr::integer(2));  // system bits + 1
        CMat extract = be_extract(be);
        CHECK((extract - CMat(a / 2.0)).cwiseAbs().maxCoeff() < 1e-3);
        CHECK(be_defect(be, CMat(a)) < 1e-3 + 1e-8);
        CHECK(unitarity_defect(be_matrix(be)) < 1e-10);
    }
    SUBCASE("uniform zero entries produce a zero block") {
        RowColumnOracle topleft{RowColumnOracle::Kind::TopLeft, 2, 2};
        EntryOracle zero{EntryOracle::Kind::Uniform, 2, 0.0, {}};
        BlockEncoding be = be_sparse_matrix(topleft, topleft, zero, 2, 1e-4);
        CHECK(be_extract(be).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("width-1 band of ones at dimension 4 is the identity over m") {
        RowColumnOracle band{RowColumnOracle::Kind::SymmetricBanded, 4, 0};
        EntryOracle ones{EntryOracle::Kind::Uniform, 4, 1.0, {}};
        BlockEncoding be = be_sparse_matrix(band, band, ones, 1, 1e-4);
        CHECK(be.alpha == SymExpr::integer(1));
        CHECK((be_extract(be) - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("shape validation") {
        RowColumnOracle topleft{RowColumnOracle::Kind::TopLeft, 2, 2};
        RowColumnOracle other{RowColumnOracle::Kind::TopLeft, 4, 2};
        EntryOracle zero{EntryOracle::Kind::Uniform, 2, 0.0, {}};
        CHECK_THROWS_AS(be_sparse_matrix(topleft, other, zero, 2, 1e-3), OracleShapeMismatch);
        CHECK_THROWS_AS(be_sparse_matrix(topleft, topleft, zero, 1, 1e-3), OracleShapeMismatch);
    }
}

TEST_CASE("composition propagates (alpha, a, eps) parameters symbolically") {
    BlockEncoding a = symbolic_encoding("1");
    BlockEncoding b = symbolic_encoding("2");

    SUBCASE("tensor product") {
        BlockEncoding tp = be_tensor_product({a, b});
        CHECK(tp.alpha == a.alpha * b.alpha);
        CHECK(tp.ancillas == a.ancillas + b.ancillas);
        CHECK(tp.epsilon == a.alpha * a.epsilon + b.alpha * b.epsilon);
        CHECK(tp.system_bitsize == SymExpr::integer(2));
    }
    SUBCASE("product") {
        BlockEncoding pr = be_product({a, b});
        CHECK(pr.alpha == a.alpha * b.alpha);
        CHECK(pr.ancillas == SymExpr::integer(1) + SymExpr::max(a.ancillas, b.ancillas));
        CHECK(pr.epsilon == a.alpha * a.epsilon + b.alpha * b.epsilon);
    }
    SUBCASE("phase leaves parameters unchanged") {
        BlockEncoding ph = be_phase(a, 0.0);
        CHECK(ph.alpha == a.alpha);
        CHECK(ph.ancillas == a.ancillas);
        CHECK(ph.epsilon == a.epsilon);
    }
    SUBCASE("linear combination") {
        BlockEncoding lc = be_linear_combination({a, b}, {2.0, -1.0});
        CHECK(lc.alpha == SymExpr::integer(2) * a.alpha + b.alpha);
        CHECK(lc.ancillas == SymExpr::integer(1) + SymExpr::max(a.ancillas, b.ancillas));
        CHECK(lc.epsilon ==
              SymExpr::integer(3) * SymExpr::max(a.epsilon, b.epsilon));
    }
    SUBCASE("second Chebyshev polynomial as a weighted sum") {
        // T2(A) = 2*A*A - I with a symbolic normalization on A
        BlockEncoding ident = be_unitary(make_bloq<XGate>());
        BlockEncoding prod = be_product({a, a});
        BlockEncoding lc = be_linear_combination({prod, ident}, {2.0, -1.0});
        SymExpr expected = SymExpr::integer(2) * a.alpha * a.alpha + SymExpr::integer(1);
        CHECK(lc.alpha == expected);
    }
    SUBCASE("tensor product of exact unitary encodings stays (1, 0, 0)") {
        BlockEncoding u1 = be_unitary(make_bloq<XGate>());
        BlockEncoding u2 = be_unitary(make_bloq<ZGate>());
        BlockEncoding tp = be_tensor_product({u1, u2});
        CHECK(tp.alpha.is_one());
        CHECK(tp.ancillas.is_zero());
        CHECK(tp.epsilon.is_zero());
    }
    SUBCASE("nested linear combinations flatten to one weighted sum") {
        BlockEncoding inner = be_linear_combination({a, b}, {1.0, 2.0});
        BlockEncoding c = symbolic_encoding("3");
        BlockEncoding nested = be_linear_combination({inner, c}, {3.0, 1.0});
        BlockEncoding flat = be_linear_combination({a, b, c}, {3.0, 6.0, 1.0});
        CHECK(nested.alpha == flat.alpha);
        CHECK(nested.ancillas == flat.ancillas);
        CHECK(nested.epsilon == flat.epsilon);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(be_tensor_product({}), EmptyParts);
        CHECK_THROWS_AS(be_linear_combination({}, {}), EmptyParts);
        BlockEncoding two = symbolic_encoding("4");
        two.alpha = SymExpr::integer(2);
        CHECK_THROWS_AS(be_chebyshev(two, 2), AlphaNotOne);
    }
}

TEST_CASE("composed encodings carry the composed matrix in their tensors") {
    std::vector<PauliTerm> terms{{0.5, "Z"}, {0.5, "X"}};
    BlockEncoding a = be_lcu_paulis(terms);
    CMat m = pauli_terms_matrix(terms);  // alpha = 1 so the block is H itself

    SUBCASE("the LCU encoding itself") {
        CHECK(a.alpha.is_one());
        CHECK(a.ancillas == SymExpr::integer(1));
        CHECK(unitarity_defect(be_matrix(a)) < 1e-10);
        CHECK(be_defect(a, m) < 1e-9);
    }
    SUBCASE("product squares the block") {
        BlockEncoding prod = be_product({a, a});
        CHECK((be_extract(prod) - CMat(m * m)).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(unitarity_defect(be_matrix(prod)) < 1e-8);
    }
    SUBCASE("linear combination realizes 2A^2 - I over its normalization") {
        BlockEncoding prod = be_product({a, a});
        BlockEncoding ident = be_unitary(make_bloq<Identity>(QDType::bit()));
        BlockEncoding lc = be_linear_combination({prod, ident}, {2.0, -1.0});
        double alpha = lc.alpha.evaluate({}).as_double();
        CHECK(alpha == doctest::Approx(3.0));
        CMat expected = (2.0 * m * m - CMat::Identity(2, 2)) / alpha;
        CHECK((be_extract(lc) - expected).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(be_defect(lc, CMat(2.0 * m * m - CMat::Identity(2, 2))) < 1e-8);
    }
    SUBCASE("tensor product of two LCU encodings") {
        BlockEncoding tp = be_tensor_product({a, a});
        CHECK((be_extract(tp) - kron(m, m)).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("phase rotates the block") {
        BlockEncoding ph = be_phase(a, 1.25);
        CMat expected = std::exp(Complex(0.0, 1.25)) * m;
        CHECK((be_extract(ph) - expected).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("qubitization walk eigenphases encode the spectrum") {
    SUBCASE("trivially encoded Z") {
        BlockEncoding be = be_unitary(make_bloq<ZGate>());
        BloqPtr walk = qubitization_walk(be);
        CMat w = tensor_of(*walk);
        // no ancilla: the walk is the reflection itself, phases 0 and pi
        Eigen::ComplexEigenSolver<CMat> es(w);
        std::vector<double> phases;
        for (long long i = 0; i < 2; ++i) phases.push_back(std::arg(es.eigenvalues()(i)));
        std::sort(phases.begin(), phases.end(), [](double x, double y) {
            return std::abs(x) < std::abs(y);
        });
        CHECK(std::abs(phases[0] - std::acos(1.0)) < 1e-9);
        CHECK(std::abs(std::abs(phases[1]) - std::acos(-1.0)) < 1e-9);
    }
    SUBCASE("toy transverse-field Ising LCU") {
        std::vector<PauliTerm> terms{{1.0, "ZZ"}, {0.4, "XI"}, {0.4, "IX"}};
        BlockEncoding be = be_lcu_paulis(terms);
        double alpha = be.alpha.evaluate({}).as_double();
        CHECK(alpha == doctest::Approx(1.8));

        BloqPtr walk = qubitization_walk(be);
        CMat w = tensor_of(*walk);
        CHECK(unitarity_defect(w) < 1e-10);

        Eigen::SelfAdjointEigenSolver<CMat> eh(pauli_terms_matrix(terms));
        Eigen::ComplexEigenSolver<CMat> ew(w);
        // every eigenvalue of H/alpha must appear among cos(walk phases)
        for (long long i = 0; i < eh.eigenvalues().size(); ++i) {
            double target = eh.eigenvalues()(i) / alpha;
            double best = 1e9;
            for (long long j = 0; j < ew.eigenvalues().size(); ++j)
                best = std::min(best, std::abs(std::cos(std::arg(ew.eigenvalues()(j))) - target));
            CHECK(best < 1e-8);
        }

        // W^2 doubles every eigenphase
        Eigen::ComplexEigenSolver<CMat> ew2(CMat(w * w));
        for (long long j = 0; j < ew.eigenvalues().size(); ++j) {
            Complex doubled = ew.eigenvalues()(j) * ew.eigenvalues()(j);
            double best = 1e9;
            for (long long k = 0; k < ew2.eigenvalues().size(); ++k)
                best = std::min(best, std::abs(ew2.eigenvalues()(k) - doubled));
            CHECK(best < 1e-7);
        }
    }
    SUBCASE("non-reflections are rejected") {
        CHECK_THROWS_AS(qubitization_walk(be_unitary(make_bloq<TGate>())), NotReflection);
    }
}

TEST_CASE("walk powers realize Chebyshev polynomials of the block") {
    std::vector<PauliTerm> terms{{1.0, "ZZ"}, {0.4, "XI"}, {0.4, "IX"}};
    BlockEncoding be = be_lcu_paulis(terms);
    double alpha = be.alpha.evaluate({}).as_double();
    CMat m = pauli_terms_matrix(terms) / alpha;

    SUBCASE("j = 0 is the identity encoding") {
        BlockEncoding c0 = chebyshev_via_walk(be, 0);
        CHECK(c0.alpha.is_one());
        CHECK((be_extract(c0) - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("j = 1 reproduces the block") {
        BlockEncoding c1 = chebyshev_via_walk(be, 1);
        CHECK((be_extract(c1) - m).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("j = 3 applies 4x^3 - 3x and costs three walks") {
        BlockEncoding c3 = chebyshev_via_walk(be, 3);
        CMat expected = 4.0 * m * m * m - 3.0 * m;
        CHECK((be_extract(c3) - expected).cwiseAbs().maxCoeff() < 1e-6);

        auto cs = c3.inner->callees();
        REQUIRE(cs.has_value());
        REQUIRE(cs->size() == 1);
        CHECK((*cs)[0].multiplicity == SymExpr::integer(3));
        CHECK((*cs)[0].bloq->name() == "Walk");
    }
    SUBCASE("the compose rule checks the normalization") {
        std::vector<PauliTerm> unit{{0.5, "Z"}, {0.5, "X"}};
        BlockEncoding be1 = be_lcu_paulis(unit);  // alpha = 1 as required
        CMat m1 = pauli_terms_matrix(unit);
        BlockEncoding c2 = be_chebyshev(be1, 2);
        CMat expected = 2.0 * m1 * m1 - CMat::Identity(2, 2);
        CHECK((be_extract(c2) - expected).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("complementary polynomials close the unit-circle identity") {
    SUBCASE("P = (x^2 + 1)/2 pairs with (x^2 - 1)/2 up to phase") {
        Coeffs p{0.5, 0.0, 0.5};
        Coeffs q = complementary_polynomial(p);
        REQUIRE(q.size() == 3);
        CHECK(std::abs(q[0]) == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(std::abs(q[1]) < 1e-7);
        CHECK(std::abs(q[2]) == doctest::Approx(0.5).epsilon(1e-6));
        // opposite signs of the two nonzero coefficients, up to global phase
        CHECK(std::abs(q[0] + q[2]) < 1e-7);
    }
    SUBCASE("P = 1 pairs with zero") {
        Coeffs q = complementary_polynomial({1.0});
        for (const Complex& c : q) CHECK(std::abs(c) < 1e-9);
    }
    SUBCASE("P = 0 pairs with a unimodular constant") {
        Coeffs q = complementary_polynomial({0.0});
        REQUIRE(q.size() == 1);
        CHECK(std::abs(q[0]) == doctest::Approx(1.0));
    }
    SUBCASE("FFT-based factorization on a strictly contractive P") {
        Coeffs p{0.3, 0.2, 0.1};
        GQSPPoly pair = gqsp_poly(p, ComplementMethod::FFT);
        pair.validate();
        // and it must agree with the root method up to phase in magnitude
        Coeffs qr = complementary_polynomial(p, ComplementMethod::RootFactorization);
        GQSPPoly pair2{p, qr};
        pair2.validate();
    }
    SUBCASE("the FFT method rejects |P| touching 1") {
        CHECK_THROWS_AS(complementary_polynomial({0.5, 0.0, 0.5}, ComplementMethod::FFT),
                        NormExceeded);
    }
    SUBCASE("|P| above 1 is rejected outright") {
        CHECK_THROWS_AS(complementary_polynomial({1.2}), NormExceeded);
    }
}

TEST_CASE("signal processing applies the polynomial to the unitary") {
    BloqPtr u = make_bloq<DiagU>();
    CMat um = tensor_of(*u);

    SUBCASE("degree-2 P = (x^2 + 1)/2") {
        GQSPPoly poly = gqsp_poly({0.5, 0.0, 0.5});
        GQSP g(u, poly, 1e-8);
        CMat full = *g.leaf_tensor();
        CHECK(unitarity_defect(full) < 1e-10);
        CMat block = block_extract(full, 1);
        CMat expected = (um * um + CMat::Identity(4, 4)) / 2.0;
        CHECK((block - expected).cwiseAbs().maxCoeff() < 1e-7);
    }
    SUBCASE("P = x gives a plain controlled-U sandwich") {
        GQSPPoly poly{{0.0, 1.0}, {0.0}};
        GQSP g(u, poly, 1e-8);
        CMat block = block_extract(*g.leaf_tensor(), 1);
        CHECK((block - um).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("cost rule for degree 20") {
        GQSPCostReport r = gqsp_cost(20, 1e-8);
        CHECK(r.controlled_u == 20);
        CHECK(r.su2_rotations == 21);
        CHECK(r.z_rotations == 63);
        REQUIRE(r.rotation_counts.rotations.size() == 1);
        auto& [eps, count] = r.rotation_counts.rotations.begin()->second;
        CHECK(eps.evaluate({}).as_double() == doctest::Approx(1e-8 / 3.0));
        CHECK(count == SymExpr::integer(63));
    }
    SUBCASE("callee list bills d controlled-U and d+1 rotation leaves") {
        GQSPPoly poly = gqsp_poly({0.5, 0.0, 0.5});
        GQSP g(u, poly, 1e-6);
        auto cs = g.callees();
        REQUIRE(cs.has_value());
        long long ctrl = 0, su2 = 0;
        for (const auto& c : *cs) {
            if (c.bloq->name() == "SU2") su2 += *c.multiplicity.as_integer();
            else ctrl += *c.multiplicity.as_integer();
        }
        CHECK(ctrl == 2);
        CHECK(su2 == 3);
    }
    SUBCASE("inconsistent pairs fail the angle solve") {
        GQSPPoly bad{{0.5}, {0.0, 0.5}};
        CHECK_THROWS_AS(gqsp_rotations(bad), AngleSolveFailure);
    }
    SUBCASE("coefficients roundtrip through JSON pairs") {
        Coeffs c{{0.5, -0.25}, {0.0, 1.0}};
        Json j = coeffs_to_json(c);
        CHECK(j.dump() == "[[0.5,-0.25],[0.0,1.0]]");
        Coeffs back = coeffs_from_json(j);
        REQUIRE(back.size() == 2);
        CHECK(back[0] == c[0]);
        CHECK(back[1] == c[1]);
    }
}

TEST_CASE("Hamiltonian evolution by signal-processed walks") {
    std::vector<PauliTerm> terms{{0.5, "ZZ"}, {0.3, "XI"}, {0.2, "IX"}};
    CMat h = pauli_terms_matrix(terms);

    SUBCASE("t = 0 gives the identity at degree 0") {
        BlockEncoding be = be_lcu_paulis(terms);
        BlockEncoding sim = hamsim_gqsp(be, 0.0, 1e-8);
        const auto& bloq = static_cast<const HamSimGQSP&>(*sim.inner);
        CHECK(bloq.half_degree() == 0);
        CHECK((be_extract(sim) - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("alpha*t = 2 at 1e-6 matches the dense exponential") {
        BlockEncoding be = be_lcu_paulis(terms);  // alpha = 1
        double t = 2.0;
        BlockEncoding sim = hamsim_gqsp(be, t, 1e-6);
        CHECK(sim.alpha.is_one());
        CHECK(sim.ancillas == SymExpr::integer(3));
        CMat expected = hermitian_exp(h, t);
        CHECK(phase_aligned_norm(be_extract(sim), expected) < 2e-6);
    }
    SUBCASE("truncation degree grows with alpha*t and is capped") {
        long long d = hamsim_degree(5.0, 1e-5);
        CHECK(d >= 5);
        CHECK_THROWS_AS(hamsim_degree(5.0, 1e-5, 3), DegreeOverflow);
    }
    SUBCASE("cost delegates to the signal-processed walk") {
        BlockEncoding be = be_lcu_paulis(terms);
        BlockEncoding sim = hamsim_gqsp(be, 2.0, 1e-4);
        const auto& bloq = static_cast<const HamSimGQSP&>(*sim.inner);
        auto cs = bloq.callees();
        REQUIRE(cs.has_value());
        REQUIRE(cs->size() == 2);
        CHECK((*cs)[0].bloq->name() == "GQSP");
        CHECK((*cs)[1].bloq->name() == "Walk");
        CHECK(*(*cs)[1].multiplicity.as_integer() == bloq.half_degree());
    }
}

TEST_CASE("window states for phase estimation") {
    SUBCASE("sine amplitudes at m = 2") {
        Eigen::VectorXd v = window_amplitudes({WindowSpec::Kind::Sine, 2});
        double norm = 0.0;
        for (int x = 0; x < 4; ++x) norm += std::pow(std::sin(kPi * (x + 1) / 5.0), 2);
        for (int x = 0; x < 4; ++x)
            CHECK(v(x) == doctest::Approx(std::sin(kPi * (x + 1) / 5.0) / std::sqrt(norm)));
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    }
    SUBCASE("rectangular amplitudes are uniform") {
        Eigen::VectorXd v = window_amplitudes({WindowSpec::Kind::Rectangular, 3});
        for (int x = 0; x < 8; ++x) CHECK(v(x) == doctest::Approx(1.0 / std::sqrt(8.0)));
    }
    SUBCASE("Kaiser amplitudes are normalized and bell-shaped") {
        WindowSpec w{WindowSpec::Kind::Kaiser, 4, 2.0};
        Eigen::VectorXd v = window_amplitudes(w);
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
        CHECK(v(8) > v(1));  // center dominates the edge
        // series evaluation matches the library Bessel function
        CHECK(bessel_i0(2.5) == doctest::Approx(std::cyl_bessel_i(0.0, 2.5)).epsilon(1e-12));
    }
    SUBCASE("window bloq exposes the amplitude column") {
        WindowState ws({WindowSpec::Kind::Sine, 2});
        CMat col = *ws.leaf_tensor();
        CHECK(col.rows() == 4);
        CHECK(col.cols() == 1);
        CHECK(std::abs(col.col(0).norm() - 1.0) < 1e-12);
    }
    SUBCASE("invalid specs are rejected") {
        CHECK_THROWS_AS(window_amplitudes({WindowSpec::Kind::Sine, 0}), BadWindow);
        CHECK_THROWS_AS(window_amplitudes({WindowSpec::Kind::Kaiser, 3, -1.0}), BadWindow);
    }
}

TEST_CASE("phase-estimation assembly counts controlled applications") {
    SUBCASE("generic unitary at m = 3 needs 2^3 - 1 applications") {
        QPEAssembly a = qpe_assemble(make_bloq<DiagU>(), {WindowSpec::Kind::Rectangular, 3});
        CHECK(a.controlled_u_applications == SymExpr::integer(7));
        GateCounts g = gate_counts(a.bloq);
        CHECK(g.total_rotations().evaluate({}).as_double() > 0.0);
    }
    SUBCASE("fast-forwardable powers collapse to m applications") {
        QPEOptions opts;
        opts.fast_forwardable = true;
        QPEAssembly a =
            qpe_assemble(make_bloq<DiagU>(), {WindowSpec::Kind::Rectangular, 2048}, opts);
        CHECK(a.controlled_u_applications == SymExpr::integer(2048));
    }
    SUBCASE("approximate transform uses fewer rotations") {
        QPEOptions textbook, approx;
        approx.approximate_qft = true;
        WindowSpec w{WindowSpec::Kind::Rectangular, 10};
        QFTInverse t(10, 1e-10, false), ap(10, 1e-10, true);
        double rt = t.leaf_gate_counts()->total_rotations().evaluate({}).as_double();
        double ra = ap.leaf_gate_counts()->total_rotations().evaluate({}).as_double();
        CHECK(rt == doctest::Approx(45.0));
        CHECK(ra < rt);
    }
}

TEST_CASE("control-register bitsize rules") {
    SUBCASE("rectangular confidence interval") {
        CHECK(qpe_bits_for(WindowSpec::Kind::Rectangular, ConfidenceInterval{1e-3, 0.1}) == 15);
    }
    SUBCASE("sine Holevo target") {
        CHECK(qpe_bits_for(WindowSpec::Kind::Sine, HolevoVarianceTarget{kPi / 1024.0}) == 10);
    }
    SUBCASE("rectangular needs about twice the bits of sine for a variance") {
        long long r = qpe_bits_for(WindowSpec::Kind::Rectangular, HolevoVarianceTarget{1e-2});
        long long s = qpe_bits_for(WindowSpec::Kind::Sine, HolevoVarianceTarget{1e-2});
        CHECK(r == 17);  // ceil(2 log2(100 pi))
        CHECK(s == 9);   // ceil(log2(100 pi))
    }
    SUBCASE("Kaiser confidence interval with slack") {
        long long m = qpe_bits_for(WindowSpec::Kind::Kaiser, ConfidenceInterval{1e-3, 0.01}, 2);
        CHECK(m == static_cast<long long>(std::ceil(std::log2(std::log(100.0) * 1000.0))) + 2);
    }
    SUBCASE("Holevo variance closed form") {
        CHECK(holevo_variance(1) == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(holevo_variance(4) == doctest::Approx(std::pow(std::tan(kPi / 17.0), 2)));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(qpe_bits_for(WindowSpec::Kind::Rectangular, ConfidenceInterval{0.0, 0.1}),
                        BadParams);
        CHECK_THROWS_AS(qpe_bits_for(WindowSpec::Kind::Sine, ConfidenceInterval{1e-3, 1.5}),
                        BadParams);
        CHECK_THROWS_AS(qpe_bits_for(WindowSpec::Kind::Kaiser, HolevoVarianceTarget{1e-3}),
                        BadParams);
    }
}

TEST_CASE("sine windows beat rectangular windows on Holevo variance") {
    for (long long m : {4LL, 6LL}) {
        double rect = empirical_holevo_variance({WindowSpec::Kind::Rectangular, m}, 2000, 7);
        double sine = empirical_holevo_variance({WindowSpec::Kind::Sine, m}, 2000, 7);
        CAPTURE(m);
        CHECK(sine < rect);
        // the sine window attains (approximately) the optimal variance
        CHECK(sine < 1.3 * holevo_variance(m));
    }
}

TEST_CASE("Kaiser tails shrink as the shape parameter grows") {
    WindowSpec base{WindowSpec::Kind::Kaiser, 6, 1.0};
    double prev = 1.0;
    for (double alpha : {1.0, 2.0, 3.0}) {
        base.kaiser_alpha = alpha;
        double tail = empirical_tail_probability(base, 1.0 / 16.0, 64);
        CAPTURE(alpha);
        CHECK(tail < prev);
        prev = tail;
    }
}
