#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "qre/classical.hpp"
#include "qre/crypto.hpp"
#include "qre/resource.hpp"

using namespace qre;

namespace {

long long toff(const BloqPtr& b) {
    return static_cast<long long>(std::llround(gate_counts(b).toffoli.evaluate_double({})));
}

ClassicalValue u(long long n, long long v) { return ClassicalValue::of(QDType::uint(n), v); }
ClassicalValue bit(long long v) { return ClassicalValue::of(QDType::bit(), v); }

/// Runs the classical action over the whole register domain and checks it is
/// a permutation. Only scalar registers are supported.
void check_bijection(const Bloq& bloq) {
    Signature sig = bloq.signature();
    std::vector<std::string> names;
    std::vector<long long> bits;
    long long total = 0;
    for (const Register& r : sig.registers()) {
        REQUIRE(r.shape.empty());
        long long w = static_cast<long long>(
            std::llround(r.dtype.num_qubits().evaluate_double({})));
        names.push_back(r.name);
        bits.push_back(w);
        total += w;
    }
    REQUIRE(total <= 14);
    std::set<long long> images;
    for (long long v = 0; v < (1LL << total); ++v) {
        ClassicalMap ins;
        long long rest = v;
        for (size_t i = 0; i < names.size(); ++i) {
            long long field = rest & ((1LL << bits[i]) - 1);
            rest >>= bits[i];
            ins.emplace(names[i], ClassicalValue::of(QDType::uint(bits[i]), field));
        }
        ClassicalMap outs = call_classically(bloq, ins);
        long long img = 0;
        long long shift = 0;
        for (size_t i = 0; i < names.size(); ++i) {
            img |= outs.at(names[i]).scalar() << shift;
            shift += bits[i];
        }
        images.insert(img);
    }
    CHECK(images.size() == static_cast<size_t>(1LL << total));
}

}  // namespace

TEST_CASE("classical modular helpers") {
    CHECK(mulmod(7, 9, 13) == 63 % 13);
    CHECK(mulmod((1LL << 40), (1LL << 40), (1LL << 61) - 1) != 0);  // no overflow path
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(0, 7) == 0);
    for (long long x = 1; x < 97; ++x) CHECK(mulmod(x, mod_inverse(x, 97), 97) == 1);
    CHECK_THROWS_AS(mod_inverse(6, 9), DomainError);
}

TEST_CASE("elliptic-curve point arithmetic") {
    ECPoint p{15, 13, 17, 0, false};
    long long b = p.curve_b();
    CHECK(b == 7);
    CHECK(p.on_curve(b));

    SUBCASE("repeated addition walks the published chain") {
        const long long chain[4][2] = {{2, 10}, {8, 3}, {12, 1}, {6, 6}};
        ECPoint acc = p;
        for (auto& xy : chain) {
            acc = acc.add(p);
            CHECK(acc.x == xy[0]);
            CHECK(acc.y == xy[1]);
            CHECK(acc.on_curve(b));
        }
        CHECK(p.times(5) == acc);
    }
    SUBCASE("group identities") {
        ECPoint inf = ECPoint::at_infinity(17, 0);
        CHECK(p.add(inf) == p);
        CHECK(inf.add(p) == p);
        CHECK(p.add(p.negated()) == inf);
        CHECK(p.times(0) == inf);
        CHECK(p.times(-2) == p.times(2).negated());
        // doubling uses the tangent slope
        CHECK(p.add(p) == p.times(2));
    }
    SUBCASE("associativity spot checks") {
        ECPoint q = p.times(2), r = p.times(3);
        CHECK(p.add(q).add(r) == p.add(q.add(r)));
    }
}

TEST_CASE("constant-point addition bloq acts like the group law") {
    ECPoint p{15, 13, 17, 0, false};
    ECAddR add_p(5, p);

    SUBCASE("controlled chain reproduces the multiples") {
        const long long chain[4][2] = {{2, 10}, {8, 3}, {12, 1}, {6, 6}};
        long long x = 15, y = 13;
        for (auto& xy : chain) {
            auto out = call_classically(
                add_p, {{"ctrl", bit(1)}, {"x", u(5, x)}, {"y", u(5, y)}});
            x = out.at("x").scalar();
            y = out.at("y").scalar();
            CHECK(x == xy[0]);
            CHECK(y == xy[1]);
        }
    }
    SUBCASE("clear control is the identity") {
        auto out = call_classically(add_p, {{"ctrl", bit(0)}, {"x", u(5, 2)}, {"y", u(5, 10)}});
        CHECK(out.at("x").scalar() == 2);
        CHECK(out.at("y").scalar() == 10);
    }
    SUBCASE("adding the negation reaches the identity encoding (0, 0)") {
        ECAddR add_neg(5, p.negated());
        auto out = call_classically(add_neg, {{"ctrl", bit(1)}, {"x", u(5, 15)}, {"y", u(5, 13)}});
        CHECK(out.at("x").scalar() == 0);
        CHECK(out.at("y").scalar() == 0);
        // and stepping off the identity again
        auto back = call_classically(add_p, {{"ctrl", bit(1)},
                                             {"x", u(5, out.at("x").scalar())},
                                             {"y", u(5, out.at("y").scalar())}});
        CHECK(back.at("x").scalar() == 15);
        CHECK(back.at("y").scalar() == 13);
    }
    SUBCASE("quantum-quantum addition matches") {
        ECAdd qq(5, 17, 0);
        auto out = call_classically(qq, {{"x1", u(5, 15)},
                                         {"y1", u(5, 13)},
                                         {"x2", u(5, 2)},
                                         {"y2", u(5, 10)}});
        CHECK(out.at("x1").scalar() == 15);
        CHECK(out.at("y1").scalar() == 13);
        CHECK(out.at("x2").scalar() == 8);
        CHECK(out.at("y2").scalar() == 3);
    }
}

TEST_CASE("modular bloqs are bijections on the full register domain") {
    const long long n = 4, p = 13;
    ModArithFamily fam = mod_arith_bloqs(n, p, 2);
    check_bijection(*fam.mod_add);
    check_bijection(*fam.c_mod_add);
    check_bijection(*fam.mod_sub);
    check_bijection(*fam.c_mod_sub);
    check_bijection(*fam.mod_neg);
    check_bijection(*fam.c_mod_neg);
    check_bijection(*fam.mod_dbl);
    check_bijection(*fam.mod_mul_k);
    check_bijection(*fam.mod_inv);
    check_bijection(*fam.mod_mul);  // 12-bit domain
}

TEST_CASE("modular actions agree with a wide-integer oracle") {
    std::mt19937 rng(12345);
    const long long cases[3][2] = {{4, 13}, {8, 251}, {16, 65521}};
    long long trials_total = 0;
    for (auto& c : cases) {
        long long n = c[0], p = c[1];
        ModArithFamily fam = mod_arith_bloqs(n, p, 3);
        std::uniform_int_distribution<long long> dist(0, (1LL << n) - 1);
        for (int trial = 0; trial < 4000; ++trial) {
            long long x = dist(rng), y = dist(rng), t = dist(rng);
            auto oracle = [&](long long v) {
                return static_cast<long long>(static_cast<unsigned __int128>(v) % p);
            };
            bool in_range = x < p && y < p;
            auto add = call_classically(*fam.mod_add, {{"x", u(n, x)}, {"y", u(n, y)}});
            CHECK(add.at("y").scalar() == (in_range ? oracle(x + y) : y));
            auto sub = call_classically(*fam.mod_sub, {{"x", u(n, x)}, {"y", u(n, y)}});
            CHECK(sub.at("y").scalar() == (in_range ? oracle(y - x + p) : y));
            auto neg = call_classically(*fam.mod_neg, {{"x", u(n, x)}});
            CHECK(neg.at("x").scalar() == (x < p ? oracle(2 * p - x) : x));
            auto dbl = call_classically(*fam.mod_dbl, {{"x", u(n, x)}});
            CHECK(dbl.at("x").scalar() == (x < p ? oracle(2 * x) : x));
            auto mk = call_classically(*fam.mod_mul_k, {{"x", u(n, x)}});
            CHECK(mk.at("x").scalar() == (x < p ? oracle(3 * x) : x));
            auto mul = call_classically(
                *fam.mod_mul, {{"x", u(n, x)}, {"y", u(n, y)}, {"t", u(n, t)}});
            long long expect_t = t;
            if (in_range && t < p)
                expect_t = static_cast<long long>(
                    (static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(y) + t) %
                    static_cast<unsigned __int128>(p));
            CHECK(mul.at("t").scalar() == expect_t);
            auto inv = call_classically(*fam.mod_inv, {{"x", u(n, x)}});
            long long ix = inv.at("x").scalar();
            if (x < p && x != 0 && std::gcd(x, p) == 1) {
                CHECK(mulmod(x, ix, p) == 1);
                auto twice = call_classically(*fam.mod_inv, {{"x", u(n, ix)}});
                CHECK(twice.at("x").scalar() == x);
            } else {
                CHECK(ix == x);
            }
            trials_total += 7;
        }
    }
    CHECK(trials_total >= 10000);
}

TEST_CASE("modular bloq costs scale as designed") {
    SUBCASE("fixed per-bloq tallies") {
        const long long n = 32, p = 0;
        CHECK(toff(make_bloq<ModAdd>(n, p)) == 3 * n);
        CHECK(toff(make_bloq<ModSub>(n, p)) == 3 * n);
        CHECK(toff(make_bloq<CModSub>(n, p)) == 3 * n);
        CHECK(toff(make_bloq<CModAdd>(n, p)) == 5 * n);
        CHECK(toff(make_bloq<ModNeg>(n, p)) == 2 * n);
        CHECK(toff(make_bloq<CModNeg>(n, p)) == 2 * n);
        CHECK(toff(make_bloq<ModDbl>(n, p)) == 2 * n);
        CHECK(toff(make_bloq<ModMul>(n, p)) == 2 * n * n + 64 * n);
    }
    SUBCASE("inverse decomposes into 2n loop rounds") {
        for (long long n : {8LL, 16LL, 256LL}) {
            CHECK(toff(make_bloq<KaliskiRound>(n, 0)) == 12 * n - 2);
            CHECK(toff(make_bloq<ModInv>(n, 0)) == 24 * n * n - 2 * n);
        }
    }
    SUBCASE("closed-form inverse cost matches the assembled count") {
        SymExpr n = SymExpr::symbol("n");
        SymExpr formula = mod_inv_toffoli(n);
        for (long long v : {8LL, 64LL, 256LL}) {
            double concrete = formula.evaluate_double({{"n", static_cast<double>(v)}});
            CHECK(concrete == doctest::Approx(24.0 * v * v - 2.0 * v));
        }
        auto lt = leading_term(formula, "n");
        CHECK(lt.second.num == 2);
        CHECK(lt.second.den == 1);
        double coeff = lt.first.evaluate_double({});
        CHECK(std::abs(coeff - 24.0) / 24.0 < 0.10);
    }
}

TEST_CASE("point addition cost table at 256 bits") {
    const long long n = 256;
    // per-operation cost x multiplicity, in decreasing order of total
    struct Row {
        BloqPtr bloq;
        long long mult;
        long long total;
    };
    std::vector<Row> rows{
        {make_bloq<ModInv>(n, 0), ECAddCalls::mod_inv, 6289408},
        {make_bloq<ModMul>(n, 0), ECAddCalls::mod_mul, 1474560},
        {make_bloq<CModSub>(n, 0), ECAddCalls::c_mod_sub, 6912},
        {make_bloq<MultiCToffoli>(n), ECAddCalls::multi_c_toffoli, 4572},
        {make_bloq<ModSub>(n, 0), ECAddCalls::mod_sub, 3072},
        {make_bloq<ModAdd>(n, 0), ECAddCalls::mod_add, 3072},
        {make_bloq<CModAdd>(n, 0), ECAddCalls::c_mod_add, 2560},
        {make_bloq<ModNeg>(n, 0), ECAddCalls::mod_neg, 1536},
        {make_bloq<ModDbl>(n, 0), ECAddCalls::mod_dbl, 1024},
        {make_bloq<CModNeg>(n, 0), ECAddCalls::c_mod_neg, 1024},
    };
    long long grand = 0;
    long long prev = 1LL << 62;
    for (const Row& r : rows) {
        long long total = r.mult * toff(r.bloq);
        CHECK(total == r.total);
        CHECK(total <= prev);  // table stays sorted by total
        prev = total;
        grand += total;
    }
    CHECK(grand == 7787740);
    CHECK(toff(std::make_shared<const ECAddR>(ECAddR::cost_only(n, 0))) == grand);
    CHECK(toff(make_bloq<ECAdd>(n, 0, 0)) == grand);
}

TEST_CASE("factoring resource estimate") {
    ShorSpec spec;
    spec.scheme = ShorSpec::Scheme::RSA;
    spec.n = 2048;
    ShorReport rep = shor_phase_estimation(spec);
    double t = rep.toffoli.evaluate_double({});
    double q = rep.qubits.evaluate_double({});
    double n3 = 2048.0 * 2048.0 * 2048.0;

    CHECK(q == 3 * 2048 + 3);
    CHECK(q <= 1.5 * 3 * 2048);
    CHECK(t / (0.4 * n3) > 0.9);
    CHECK(t / (0.4 * n3) < 1.1);

    SUBCASE("validation") {
        ShorSpec bad = spec;
        bad.n = 3;
        CHECK_THROWS_AS(shor_phase_estimation(bad), BadSize);
        bad = spec;
        bad.n = 8;
        bad.modulus = 210;  // even
        CHECK_THROWS_AS(shor_phase_estimation(bad), EvenModulus);
        bad = spec;
        bad.window_bits = 4;
        CHECK_THROWS_AS(shor_phase_estimation(bad), BadParams);
    }
    SUBCASE("concrete small modulus still assembles") {
        ShorSpec small;
        small.scheme = ShorSpec::Scheme::RSA;
        small.n = 8;
        small.modulus = 221;
        ShorReport r = shor_phase_estimation(small);
        CHECK(r.qubits.evaluate_double({}) == 27);
        CHECK(r.toffoli.evaluate_double({}) > 0);
    }
}

TEST_CASE("discrete-log resource estimate") {
    ShorSpec spec;
    spec.scheme = ShorSpec::Scheme::ECC;
    spec.n = 256;
    double n3 = 256.0 * 256.0 * 256.0;

    SUBCASE("windowed estimate lands near the cubic law") {
        spec.window_bits = 8;
        ShorReport rep = shor_phase_estimation(spec);
        double t = rep.toffoli.evaluate_double({});
        double q = rep.qubits.evaluate_double({});
        CHECK(q == 9 * 256 + 1);
        double ratio = t / (43.0 * n3);
        CHECK(ratio > 1.0 / 3.0);
        CHECK(ratio < 3.0);
    }
    SUBCASE("windowing saves close to the window factor") {
        ShorReport plain = shor_phase_estimation(spec);
        spec.window_bits = 8;
        ShorReport windowed = shor_phase_estimation(spec);
        double saving = plain.toffoli.evaluate_double({}) / windowed.toffoli.evaluate_double({});
        CHECK(saving > 6.0);
        CHECK(saving < 8.5);
    }
    SUBCASE("window cannot exceed the scalar size") {
        spec.window_bits = 300;
        CHECK_THROWS_AS(shor_phase_estimation(spec), WindowTooLarge);
    }
    SUBCASE("concrete curve points are validated and assembled") {
        ShorSpec small;
        small.scheme = ShorSpec::Scheme::ECC;
        small.n = 5;
        small.modulus = 17;
        small.base = ECPoint{15, 13, 17, 0, false};
        small.pubkey = small.base.times(5);
        ShorReport r = shor_phase_estimation(small);
        CHECK(r.qubits.evaluate_double({}) == 46);
        CHECK(r.toffoli.evaluate_double({}) > 0);

        small.pubkey = ECPoint{3, 3, 17, 0, false};
        CHECK_THROWS_AS(shor_phase_estimation(small), OffCurve);
    }
}

TEST_CASE("readout and lookup leaf costs") {
    SUBCASE("Fourier readout is measurement-based") {
        GateCounts g = gate_counts(make_bloq<MeasureQFT>(8));
        CHECK(g.measurement.evaluate_double({}) == 8);
        CHECK(g.toffoli.evaluate_double({}) == 0);
        CHECK(g.total_rotations().evaluate_double({}) == 8 * 3);
    }
    SUBCASE("point lookup costs one table read of 2n bits") {
        GateCounts g = gate_counts(make_bloq<PointLookup>(256, 8));
        GateCounts q = qrom_cost(QROMVariant::Plain, SymExpr::integer(256),
                                 SymExpr::integer(512), SymExpr::integer(0))
                           .counts;
        CHECK(g.toffoli.evaluate_double({}) == q.toffoli.evaluate_double({}));
        CHECK_THROWS_AS(PointLookup(8, 9), WindowTooLarge);
        CHECK_THROWS_AS(PointLookup(128, 70), TooLarge);
    }
    SUBCASE("even moduli are rejected on the inversion path") {
        CHECK_THROWS_AS(ModInv(8, 16), EvenModulus);
        CHECK_THROWS_AS(ModDbl(8, 12), EvenModulus);
        CHECK_THROWS_AS(ModMulK(8, 3, 10), EvenModulus);
        CHECK_THROWS_AS(ModMulK(8, 5, 15), BadParams);  // shared factor
    }
}
