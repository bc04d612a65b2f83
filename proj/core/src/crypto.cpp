#include "qre/crypto.hpp"

#include <numeric>

#include "qre/arith.hpp"
#include "qre/resource.hpp"

namespace qre {

namespace {

void check_bitsize(long long n) {
    if (n < 1 || n > 1000000) throw BadSize("register bitsize must lie in [1, 10^6]");
}

/// p == 0 is the cost-only sentinel; otherwise p must fit the register.
void check_modulus(long long n, long long p) {
    check_bitsize(n);
    if (p == 0) return;
    if (p < 2) throw BadParams("modulus must be at least 2");
    if (n < 62 && p > (1LL << n)) throw RangeError("modulus does not fit the register");
}

void check_odd_modulus(long long n, long long p) {
    check_modulus(n, p);
    if (p != 0 && p % 2 == 0) throw EvenModulus("modulus must be odd");
}

long long reduce(long long v, long long p) { return ((v % p) + p) % p; }

Signature xy_signature(long long n) {
    return Signature{Register("x", QDType::uint(n)), Register("y", QDType::uint(n))};
}

Signature ctrl_xy_signature(long long n) {
    return Signature{Register("ctrl", QDType::bit()), Register("x", QDType::uint(n)),
                     Register("y", QDType::uint(n))};
}

ClassicalValue as_uint(long long n, long long v) { return ClassicalValue::of(QDType::uint(n), v); }

}  // namespace

// ---------------------------------------------------------------------------
// classical helpers

long long mulmod(long long a, long long b, long long p) {
    return static_cast<long long>(static_cast<unsigned __int128>(reduce(a, p)) *
                                  static_cast<unsigned __int128>(reduce(b, p)) %
                                  static_cast<unsigned __int128>(p));
}

long long mod_inverse(long long x, long long p) {
    x = reduce(x, p);
    if (x == 0) return 0;
    if (std::gcd(x, p) != 1) throw DomainError("value is not invertible at this modulus");
    long long r0 = p, r1 = x, s0 = 0, s1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        long long s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    return reduce(s0, p);
}

// ---------------------------------------------------------------------------
// ECPoint

ECPoint ECPoint::at_infinity(long long modulus, long long curve_a) {
    return ECPoint{0, 0, modulus, curve_a, true};
}

long long ECPoint::curve_b() const {
    long long p = modulus;
    long long x3 = mulmod(mulmod(x, x, p), x, p);
    return reduce(mulmod(y, y, p) - x3 - mulmod(curve_a, x, p), p);
}

bool ECPoint::on_curve(long long b) const {
    if (infinity) return true;
    long long p = modulus;
    long long lhs = mulmod(y, y, p);
    long long rhs = reduce(mulmod(mulmod(x, x, p), x, p) + mulmod(curve_a, x, p) + b, p);
    return lhs == rhs;
}

ECPoint ECPoint::negated() const {
    if (infinity) return *this;
    return ECPoint{x, reduce(-y, modulus), modulus, curve_a, false};
}

ECPoint ECPoint::add(const ECPoint& other) const {
    if (infinity) return other;
    if (other.infinity) return *this;
    if (modulus != other.modulus || curve_a != other.curve_a)
        throw DomainError("points live on different curves");
    long long p = modulus;
    long long lambda;
    if (x == other.x) {
        if (reduce(y + other.y, p) == 0) return at_infinity(p, curve_a);
        // tangent slope (3x^2 + a) / (2y)
        lambda = mulmod(reduce(3 * mulmod(x, x, p) + curve_a, p), mod_inverse(2 * y, p), p);
    } else {
        lambda = mulmod(reduce(other.y - y, p), mod_inverse(reduce(other.x - x, p), p), p);
    }
    long long x3 = reduce(mulmod(lambda, lambda, p) - x - other.x, p);
    long long y3 = reduce(mulmod(lambda, reduce(x - x3, p), p) - y, p);
    return ECPoint{x3, y3, p, curve_a, false};
}

ECPoint ECPoint::times(long long k) const {
    if (k < 0) return negated().times(-k);
    ECPoint acc = at_infinity(modulus, curve_a);
    ECPoint base = *this;
    while (k > 0) {
        if (k & 1) acc = acc.add(base);
        base = base.add(base);
        k >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// modular arithmetic bloqs

ModAdd::ModAdd(long long n, long long p) : n_(n), p_(p) { check_modulus(n, p); }

Signature ModAdd::signature() const { return xy_signature(n_); }

std::optional<ClassicalMap> ModAdd::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long x = ins.at("x").scalar(), y = ins.at("y").scalar();
    long long out = (x < p_ && y < p_) ? (x + y) % p_ : y;
    return ClassicalMap{{"x", as_uint(n_, x)}, {"y", as_uint(n_, out)}};
}

std::optional<GateCounts> ModAdd::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(3 * n_));
}

CModAdd::CModAdd(long long n, long long p) : n_(n), p_(p) { check_modulus(n, p); }

Signature CModAdd::signature() const { return ctrl_xy_signature(n_); }

std::optional<ClassicalMap> CModAdd::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long c = ins.at("ctrl").scalar();
    long long x = ins.at("x").scalar(), y = ins.at("y").scalar();
    long long out = (c && x < p_ && y < p_) ? (x + y) % p_ : y;
    return ClassicalMap{{"ctrl", ClassicalValue::of(QDType::bit(), c)},
                        {"x", as_uint(n_, x)},
                        {"y", as_uint(n_, out)}};
}

std::optional<GateCounts> CModAdd::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(5 * n_));
}

ModSub::ModSub(long long n, long long p) : n_(n), p_(p) { check_modulus(n, p); }

Signature ModSub::signature() const { return xy_signature(n_); }

std::optional<ClassicalMap> ModSub::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long x = ins.at("x").scalar(), y = ins.at("y").scalar();
    long long out = (x < p_ && y < p_) ? reduce(y - x, p_) : y;
    return ClassicalMap{{"x", as_uint(n_, x)}, {"y", as_uint(n_, out)}};
}

std::optional<GateCounts> ModSub::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(3 * n_));
}

CModSub::CModSub(long long n, long long p) : n_(n), p_(p) { check_modulus(n, p); }

Signature CModSub::signature() const { return ctrl_xy_signature(n_); }

std::optional<ClassicalMap> CModSub::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long c = ins.at("ctrl").scalar();
    long long x = ins.at("x").scalar(), y = ins.at("y").scalar();
    long long out = (c && x < p_ && y < p_) ? reduce(y - x, p_) : y;
    return ClassicalMap{{"ctrl", ClassicalValue::of(QDType::bit(), c)},
                        {"x", as_uint(n_, x)},
                        {"y", as_uint(n_, out)}};
}

std::optional<GateCounts> CModSub::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(3 * n_));
}

ModNeg::ModNeg(long long n, long long p) : n_(n), p_(p) { check_modulus(n, p); }

Signature ModNeg::signature() const {
    return Signature{Register("x", QDType::uint(n_))};
}

std::optional<ClassicalMap> ModNeg::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long x = ins.at("x").scalar();
    return ClassicalMap{{"x", as_uint(n_, x < p_ ? reduce(-x, p_) : x)}};
}

std::optional<GateCounts> ModNeg::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(2 * n_));
}

CModNeg::CModNeg(long long n, long long p) : n_(n), p_(p) { check_modulus(n, p); }

Signature CModNeg::signature() const {
    return Signature{Register("ctrl", QDType::bit()), Register("x", QDType::uint(n_))};
}

std::optional<ClassicalMap> CModNeg::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long c = ins.at("ctrl").scalar();
    long long x = ins.at("x").scalar();
    return ClassicalMap{{"ctrl", ClassicalValue::of(QDType::bit(), c)},
                        {"x", as_uint(n_, (c && x < p_) ? reduce(-x, p_) : x)}};
}

std::optional<GateCounts> CModNeg::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(2 * n_));
}

ModDbl::ModDbl(long long n, long long p) : n_(n), p_(p) { check_odd_modulus(n, p); }

Signature ModDbl::signature() const {
    return Signature{Register("x", QDType::uint(n_))};
}

std::optional<ClassicalMap> ModDbl::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long x = ins.at("x").scalar();
    return ClassicalMap{{"x", as_uint(n_, x < p_ ? (2 * x) % p_ : x)}};
}

std::optional<GateCounts> ModDbl::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(2 * n_));
}

ModMulK::ModMulK(long long n, long long k, long long p) : n_(n), k_(k), p_(p) {
    check_odd_modulus(n, p);
    if (p != 0 && std::gcd(reduce(k, p), p) != 1)
        throw BadParams("multiplier must be coprime to the modulus");
}

Signature ModMulK::signature() const {
    return Signature{Register("x", QDType::uint(n_))};
}

std::optional<ClassicalMap> ModMulK::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long x = ins.at("x").scalar();
    return ClassicalMap{{"x", as_uint(n_, x < p_ ? mulmod(k_, x, p_) : x)}};
}

std::optional<GateCounts> ModMulK::leaf_gate_counts() const {
    // Windowed constant multiplication: ~0.4 n^2 with a linear lookup term.
    return GateCounts::toffolis(SymExpr::integer(2 * n_ * n_ / 5 + 3 * n_));
}

std::optional<SymExpr> ModMulK::qubit_annotation() const {
    return SymExpr::integer(3 * n_ + 2);
}

ModMul::ModMul(long long n, long long p) : n_(n), p_(p) { check_modulus(n, p); }

Signature ModMul::signature() const {
    return Signature{Register("x", QDType::uint(n_)), Register("y", QDType::uint(n_)),
                     Register("t", QDType::uint(n_))};
}

std::optional<ClassicalMap> ModMul::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long x = ins.at("x").scalar(), y = ins.at("y").scalar(), t = ins.at("t").scalar();
    long long out = (x < p_ && y < p_ && t < p_) ? reduce(t + mulmod(x, y, p_), p_) : t;
    return ClassicalMap{{"x", as_uint(n_, x)}, {"y", as_uint(n_, y)}, {"t", as_uint(n_, out)}};
}

std::optional<GateCounts> ModMul::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(2 * n_ * n_ + 64 * n_));
}

KaliskiRound::KaliskiRound(long long n, long long p) : n_(n), p_(p) {
    check_odd_modulus(n, p);
}

Signature KaliskiRound::signature() const {
    return Signature{Register("u", QDType::uint(n_)), Register("v", QDType::uint(n_)),
                     Register("r", QDType::uint(n_)), Register("s", QDType::uint(n_)),
                     Register("f", QDType::bit())};
}

std::optional<std::vector<Callee>> KaliskiRound::callees() const {
    // comparison + three adders + four controlled swaps: 12n - 2 Toffoli
    return std::vector<Callee>{{make_bloq<LessThanConstant>(n_, p_), SymExpr::integer(2)},
                               {make_bloq<Adder>(n_), SymExpr::integer(3)},
                               {make_bloq<CSwapN>(n_), SymExpr::integer(4)}};
}

ModInv::ModInv(long long n, long long p) : n_(n), p_(p) { check_odd_modulus(n, p); }

Signature ModInv::signature() const {
    return Signature{Register("x", QDType::uint(n_))};
}

std::optional<ClassicalMap> ModInv::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long x = ins.at("x").scalar();
    long long out = x;
    if (x < p_ && x != 0 && std::gcd(x, p_) == 1) out = mod_inverse(x, p_);
    return ClassicalMap{{"x", as_uint(n_, out)}};
}

std::optional<std::vector<Callee>> ModInv::callees() const {
    return std::vector<Callee>{{make_bloq<KaliskiRound>(n_, p_), SymExpr::integer(2 * n_)},
                               {make_bloq<CSwapN>(n_), SymExpr::integer(2)}};
}

SymExpr mod_inv_toffoli(const SymExpr& n) {
    SymExpr two = SymExpr::integer(2);
    SymExpr round = SymExpr::integer(12) * n - two;  // per-iteration cost
    return two * n * round + two * n;                // 2n rounds + fix-up swaps
}

ModArithFamily mod_arith_bloqs(long long n, long long p, long long k) {
    return ModArithFamily{
        make_bloq<ModAdd>(n, p),  make_bloq<CModAdd>(n, p), make_bloq<ModSub>(n, p),
        make_bloq<CModSub>(n, p), make_bloq<ModNeg>(n, p),  make_bloq<CModNeg>(n, p),
        make_bloq<ModDbl>(n, p),  make_bloq<ModMulK>(n, k, p), make_bloq<ModMul>(n, p),
        make_bloq<ModInv>(n, p)};
}

// ---------------------------------------------------------------------------
// elliptic-curve bloqs

namespace {

std::vector<Callee> ec_add_family_callees(long long n, long long p) {
    return {{make_bloq<ModInv>(n, p), SymExpr::integer(ECAddCalls::mod_inv)},
            {make_bloq<ModMul>(n, p), SymExpr::integer(ECAddCalls::mod_mul)},
            {make_bloq<CModSub>(n, p), SymExpr::integer(ECAddCalls::c_mod_sub)},
            {make_bloq<MultiCToffoli>(n), SymExpr::integer(ECAddCalls::multi_c_toffoli)},
            {make_bloq<ModSub>(n, p), SymExpr::integer(ECAddCalls::mod_sub)},
            {make_bloq<ModAdd>(n, p), SymExpr::integer(ECAddCalls::mod_add)},
            {make_bloq<CModAdd>(n, p), SymExpr::integer(ECAddCalls::c_mod_add)},
            {make_bloq<ModNeg>(n, p), SymExpr::integer(ECAddCalls::mod_neg)},
            {make_bloq<ModDbl>(n, p), SymExpr::integer(ECAddCalls::mod_dbl)},
            {make_bloq<CModNeg>(n, p), SymExpr::integer(ECAddCalls::c_mod_neg)}};
}

/// Point registers encode the identity element as (0, 0).
ECPoint point_from_registers(long long x, long long y, long long p, long long a) {
    if (x == 0 && y == 0) return ECPoint::at_infinity(p, a);
    return ECPoint{x, y, p, a, false};
}

std::pair<long long, long long> point_to_registers(const ECPoint& pt) {
    if (pt.infinity) return {0, 0};
    return {pt.x, pt.y};
}

}  // namespace

ECAddR::ECAddR(long long n, ECPoint r, long long tag) : n_(n), r_(r), tag_(tag) {
    check_odd_modulus(n, r_.modulus);
}

ECAddR::ECAddR(long long n, const ECPoint& r) : ECAddR(n, r, 0) {}

ECAddR ECAddR::cost_only(long long n, long long tag, long long curve_a) {
    return ECAddR(n, ECPoint{0, 0, 0, curve_a, false}, tag);
}

AttrMap ECAddR::attributes() const {
    return {{"n", n_},       {"rx", r_.x},           {"ry", r_.y},
            {"p", r_.modulus}, {"a", r_.curve_a},
            {"inf", r_.infinity}, {"tag", tag_}};
}

Signature ECAddR::signature() const { return ctrl_xy_signature(n_); }

std::optional<ClassicalMap> ECAddR::apply_classical(const ClassicalMap& ins) const {
    long long p = r_.modulus;
    if (p == 0) return std::nullopt;
    long long c = ins.at("ctrl").scalar();
    long long x = ins.at("x").scalar(), y = ins.at("y").scalar();
    if (c && x < p && y < p) {
        ECPoint sum = point_from_registers(x, y, p, r_.curve_a).add(r_);
        std::tie(x, y) = point_to_registers(sum);
    }
    return ClassicalMap{{"ctrl", ClassicalValue::of(QDType::bit(), c)},
                        {"x", as_uint(n_, x)},
                        {"y", as_uint(n_, y)}};
}

std::optional<std::vector<Callee>> ECAddR::callees() const {
    return ec_add_family_callees(n_, r_.modulus);
}

std::optional<SymExpr> ECAddR::qubit_annotation() const {
    return SymExpr::integer(9 * n_);
}

ECAdd::ECAdd(long long n, long long p, long long curve_a) : n_(n), p_(p), a_(curve_a) {
    check_odd_modulus(n, p);
}

Signature ECAdd::signature() const {
    return Signature{Register("x1", QDType::uint(n_)), Register("y1", QDType::uint(n_)),
                     Register("x2", QDType::uint(n_)), Register("y2", QDType::uint(n_))};
}

std::optional<ClassicalMap> ECAdd::apply_classical(const ClassicalMap& ins) const {
    if (p_ == 0) return std::nullopt;
    long long x1 = ins.at("x1").scalar(), y1 = ins.at("y1").scalar();
    long long x2 = ins.at("x2").scalar(), y2 = ins.at("y2").scalar();
    if (x1 < p_ && y1 < p_ && x2 < p_ && y2 < p_) {
        ECPoint sum = point_from_registers(x2, y2, p_, a_)
                          .add(point_from_registers(x1, y1, p_, a_));
        std::tie(x2, y2) = point_to_registers(sum);
    }
    return ClassicalMap{{"x1", as_uint(n_, x1)},
                        {"y1", as_uint(n_, y1)},
                        {"x2", as_uint(n_, x2)},
                        {"y2", as_uint(n_, y2)}};
}

std::optional<std::vector<Callee>> ECAdd::callees() const {
    return ec_add_family_callees(n_, p_);
}

std::optional<SymExpr> ECAdd::qubit_annotation() const {
    return SymExpr::integer(9 * n_);
}

MeasureQFT::MeasureQFT(long long n) : n_(n) { check_bitsize(n); }

Signature MeasureQFT::signature() const {
    return Signature{Register("x", QDType::uint(n_), {}, Side::LeftOnly)};
}

std::optional<GateCounts> MeasureQFT::leaf_gate_counts() const {
    long long logn = 0;
    while ((1LL << logn) < n_) ++logn;
    return GateCounts::measurements(SymExpr::integer(n_)) +
           GateCounts::rotation(SymExpr::real(1e-10),
                                SymExpr::integer(n_ * std::max(logn, 1LL))) +
           GateCounts::cliffords(SymExpr::integer(n_));
}

PointLookup::PointLookup(long long n, long long w) : n_(n), w_(w) {
    check_bitsize(n);
    if (w < 1 || w > n) throw WindowTooLarge("window exceeds the scalar bitsize");
    if (w > 62) throw TooLarge("lookup table size exceeds the addressable range");
}

Signature PointLookup::signature() const {
    return Signature{Register("sel", QDType::uint(w_)), Register("x", QDType::uint(n_)),
                     Register("y", QDType::uint(n_))};
}

std::optional<GateCounts> PointLookup::leaf_gate_counts() const {
    return qrom_cost(QROMVariant::Plain, SymExpr::integer(1LL << w_),
                     SymExpr::integer(2 * n_), SymExpr::integer(0))
        .counts;
}

// ---------------------------------------------------------------------------
// Shor-style phase estimation

namespace {

/// Order-finding readout: one recycled control qubit drives n controlled
/// constant-multiplications (powers classically fast-forwarded into the
/// constants) followed by a measurement-based Fourier readout.
class ModExpPhaseEstimate final : public Bloq {
public:
    ModExpPhaseEstimate(long long n, long long modulus, long long g)
        : n_(n), p_(modulus), g_(g) {}
    std::string name() const override { return "ModExpPhaseEstimate"; }
    AttrMap attributes() const override { return {{"n", n_}, {"p", p_}, {"g", g_}}; }
    Signature signature() const override {
        return Signature{Register("x", QDType::uint(n_))};
    }
    std::optional<std::vector<Callee>> callees() const override {
        return std::vector<Callee>{
            {make_bloq<Controlled>(make_bloq<ModMulK>(n_, g_, p_)), SymExpr::integer(n_)},
            {make_bloq<MeasureQFT>(n_), SymExpr::integer(1)}};
    }

private:
    long long n_, p_, g_;
};

/// Phase estimation against repeated constant-point addition: one ECAddR per
/// scalar bit, constants [2^j] P folded in classically.
class ECPhaseEstimateR final : public Bloq {
public:
    ECPhaseEstimateR(long long n, ECPoint point, long long tag)
        : n_(n), point_(point), tag_(tag) {}
    std::string name() const override { return "ECPhaseEstimateR"; }
    AttrMap attributes() const override {
        return {{"n", n_},         {"px", point_.x},       {"py", point_.y},
                {"p", point_.modulus}, {"a", point_.curve_a}, {"tag", tag_}};
    }
    Signature signature() const override { return xy_signature(n_); }
    std::optional<std::vector<Callee>> callees() const override {
        std::vector<Callee> cs;
        if (point_.modulus != 0) {
            ECPoint r = point_;
            for (long long j = 0; j < n_; ++j) {
                cs.push_back({make_bloq<ECAddR>(n_, r), SymExpr::integer(1)});
                r = r.add(r);
            }
        } else {
            for (long long j = 0; j < n_; ++j)
                cs.push_back({std::make_shared<const ECAddR>(
                                  ECAddR::cost_only(n_, j, point_.curve_a)),
                              SymExpr::integer(1)});
        }
        cs.push_back({make_bloq<MeasureQFT>(n_), SymExpr::integer(1)});
        return cs;
    }

private:
    long long n_;
    ECPoint point_;
    long long tag_;
};

/// Windowed variant: each group of w scalar bits becomes a table lookup of a
/// precomputed point, one quantum-quantum addition, and an un-lookup.
class ECWindowedPhaseEstimate final : public Bloq {
public:
    ECWindowedPhaseEstimate(long long n, long long w, long long p, long long a, long long tag)
        : n_(n), w_(w), p_(p), a_(a), tag_(tag) {}
    std::string name() const override { return "ECWindowedPhaseEstimate"; }
    AttrMap attributes() const override {
        return {{"n", n_}, {"w", w_}, {"p", p_}, {"a", a_}, {"tag", tag_}};
    }
    Signature signature() const override { return xy_signature(n_); }
    std::optional<std::vector<Callee>> callees() const override {
        long long groups = (n_ + w_ - 1) / w_;
        return std::vector<Callee>{
            {make_bloq<PointLookup>(n_, w_), SymExpr::integer(2 * groups)},
            {make_bloq<ECAdd>(n_, p_, a_), SymExpr::integer(groups)},
            {make_bloq<MeasureQFT>(n_), SymExpr::integer(1)}};
    }

private:
    long long n_, w_, p_, a_, tag_;
};

/// Discrete-log top level: one phase estimation against the base point and
/// one against the public key.
class ECDlogPhaseEstimate final : public Bloq {
public:
    ECDlogPhaseEstimate(long long n, long long w, ECPoint base, ECPoint pubkey)
        : n_(n), w_(w), base_(base), pub_(pubkey) {}
    std::string name() const override { return "ECDlogPhaseEstimate"; }
    AttrMap attributes() const override {
        return {{"n", n_},           {"w", w_},           {"p", base_.modulus},
                {"bx", base_.x},     {"by", base_.y},     {"qx", pub_.x},
                {"qy", pub_.y},      {"a", base_.curve_a}};
    }
    Signature signature() const override { return xy_signature(n_); }
    std::optional<std::vector<Callee>> callees() const override {
        auto pe = [&](const ECPoint& pt, long long tag) -> BloqPtr {
            if (w_ == 0) return make_bloq<ECPhaseEstimateR>(n_, pt, tag);
            return make_bloq<ECWindowedPhaseEstimate>(n_, w_, pt.modulus, pt.curve_a, tag);
        };
        return std::vector<Callee>{{pe(base_, 0), SymExpr::integer(1)},
                                   {pe(pub_, 1), SymExpr::integer(1)}};
    }

private:
    long long n_, w_;
    ECPoint base_, pub_;
};

}  // namespace

ShorReport shor_phase_estimation(const ShorSpec& spec) {
    if (spec.n < 4) throw BadSize("problem bitsize must be at least 4");
    long long n = spec.n;
    if (spec.scheme == ShorSpec::Scheme::RSA) {
        if (spec.window_bits != 0)
            throw BadParams("windowing applies to the elliptic-curve scheme");
        if (spec.modulus != 0 && spec.modulus % 2 == 0)
            throw EvenModulus("factoring modulus must be odd");
        // g = 2 is coprime to any odd modulus; cost is independent of g.
        long long g = spec.modulus == 0 ? 0 : 2;
        auto bloq = make_bloq<ModExpPhaseEstimate>(n, spec.modulus, g);
        GateCounts counts = gate_counts(bloq);
        // n multiplication qubits + 2n + 2 workspace + 1 recycled control
        return ShorReport{bloq, counts.toffoli, SymExpr::integer(3 * n + 3)};
    }

    if (spec.window_bits < 0 || spec.window_bits > n)
        throw WindowTooLarge("window exceeds the scalar bitsize");
    ECPoint base = spec.base, pub = spec.pubkey;
    if (spec.modulus != 0) {
        if (base.modulus != spec.modulus || pub.modulus != spec.modulus)
            throw BadParams("points must live at the spec's modulus");
        long long b = base.curve_b();
        if (!base.on_curve(b)) throw OffCurve("base point is off the curve");
        if (!pub.on_curve(b)) throw OffCurve("public key is off the curve");
    } else {
        base = ECPoint{0, 0, 0, base.curve_a, false};
        pub = ECPoint{0, 0, 0, base.curve_a, false};
        pub.x = 1;  // distinct cost-only attribute for the second estimation
    }
    auto bloq = make_bloq<ECDlogPhaseEstimate>(n, spec.window_bits, base, pub);
    GateCounts counts = gate_counts(bloq);
    // x/y point registers plus inversion workspace + 1 recycled control
    return ShorReport{bloq, counts.toffoli, SymExpr::integer(9 * n + 1)};
}

}  // namespace qre
