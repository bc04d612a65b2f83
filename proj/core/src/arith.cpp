#include "qre/arith.hpp"

#include "qre/classical.hpp"
#include "qre/tensor.hpp"

namespace qre {

namespace {

long long mask_of(long long n) { return n >= 63 ? -1LL : (1LL << n) - 1; }

void check_width(long long n) {
    if (n < 1 || n > 1000000) throw BadSize("register width must be in [1, 10^6]");
}

// Classical actions track register contents in machine words, so they are
// unavailable for wide registers; wide instances remain usable for counting.
constexpr long long kClassicalWidthLimit = 62;

void check_constant(long long n, long long k) {
    if (k < 0 || (n < 63 && k > mask_of(n)))
        throw RangeError("constant does not fit in " + std::to_string(n) + " bits");
}

}  // namespace

// ---------------------------------------------------------------------------
// XorK

XorK::XorK(long long n, long long k) : n_(n), k_(k) {
    check_width(n);
    check_constant(n, k);
}

Signature XorK::signature() const { return Signature{Register("x", QDType::uint(n_))}; }

std::optional<ClassicalMap> XorK::apply_classical(const ClassicalMap& ins) const {
    if (n_ > kClassicalWidthLimit) return std::nullopt;
    return ClassicalMap{{"x", ClassicalValue::of(QDType::uint(n_), ins.at("x").scalar() ^ k_)}};
}

std::optional<CMat> XorK::leaf_tensor() const {
    if (n_ > 14) return std::nullopt;
    return classical_tensor(*this);
}

std::optional<GateCounts> XorK::leaf_gate_counts() const {
    long long pop = 0;
    for (long long v = k_; v; v &= v - 1) ++pop;
    return GateCounts::cliffords(SymExpr::integer(pop));
}

// ---------------------------------------------------------------------------
// Adder

Adder::Adder(long long n) : n_(n) { check_width(n); }

Signature Adder::signature() const {
    return Signature{Register("a", QDType::uint(n_)), Register("b", QDType::uint(n_))};
}

std::optional<std::vector<Callee>> Adder::callees() const {
    return std::vector<Callee>{{make_bloq<CNot>(), SymExpr::integer(4 * n_)},
                               {make_bloq<Toffoli>(), SymExpr::integer(2 * n_)}};
}

std::optional<ClassicalMap> Adder::apply_classical(const ClassicalMap& ins) const {
    if (n_ > kClassicalWidthLimit) return std::nullopt;
    long long a = ins.at("a").scalar();
    long long b = ins.at("b").scalar();
    return ClassicalMap{{"a", ins.at("a")},
                        {"b", ClassicalValue::of(QDType::uint(n_), (a + b) & mask_of(n_))}};
}

void Adder::build_decomposition(GraphBuilder& bb) const {
    auto cnot = [&bb](Port& c, Port& t) {
        auto o = bb.add(make_bloq<CNot>(), std::map<std::string, Port>{{"ctrl", c}, {"target", t}});
        c = o[0];
        t = o[1];
    };
    auto toff = [&bb](Port& c0, Port& c1, Port& t) {
        auto o = bb.add(make_bloq<Toffoli>(), std::map<std::string, std::vector<Port>>{
                                                  {"ctrl", {c0, c1}}, {"target", {t}}});
        c0 = o[0];
        c1 = o[1];
        t = o[2];
    };
    // majority / unmajority-and-add cells of the ripple-carry network
    auto maj = [&](Port& x, Port& y, Port& z) {
        cnot(z, y);
        cnot(z, x);
        toff(x, y, z);
    };
    auto uma = [&](Port& x, Port& y, Port& z) {
        toff(x, y, z);
        cnot(z, x);
        cnot(x, y);
    };

    std::vector<Port> as = n_ > 1 ? bb.split(bb.input("a")) : std::vector<Port>{bb.input("a")};
    std::vector<Port> bs = n_ > 1 ? bb.split(bb.input("b")) : std::vector<Port>{bb.input("b")};
    // bits are MSB-first; the ripple runs LSB-first
    auto ai = [&](long long i) -> Port& { return as[static_cast<size_t>(n_ - 1 - i)]; };
    auto bi = [&](long long i) -> Port& { return bs[static_cast<size_t>(n_ - 1 - i)]; };

    Port c = bb.allocate(QDType::bit());
    maj(c, bi(0), ai(0));
    for (long long i = 1; i < n_; ++i) maj(ai(i - 1), bi(i), ai(i));
    for (long long i = n_ - 1; i >= 1; --i) uma(ai(i - 1), bi(i), ai(i));
    uma(c, bi(0), ai(0));
    bb.free(c);

    bb.set_output("a", n_ > 1 ? bb.join(as, QDType::uint(n_)) : as[0]);
    bb.set_output("b", n_ > 1 ? bb.join(bs, QDType::uint(n_)) : bs[0]);
}

// ---------------------------------------------------------------------------
// CAddK

CAddK::CAddK(long long n, long long k) : n_(n), k_(k) {
    check_width(n);
    check_constant(n, k);
}

Signature CAddK::signature() const {
    return Signature{Register("ctrl", QDType::bit()), Register("x", QDType::uint(n_))};
}

std::optional<ClassicalMap> CAddK::apply_classical(const ClassicalMap& ins) const {
    if (n_ > kClassicalWidthLimit) return std::nullopt;
    long long c = ins.at("ctrl").scalar();
    long long x = ins.at("x").scalar();
    long long out = c ? (x + k_) & mask_of(n_) : x;
    return ClassicalMap{{"ctrl", ins.at("ctrl")},
                        {"x", ClassicalValue::of(QDType::uint(n_), out)}};
}

std::optional<CMat> CAddK::leaf_tensor() const {
    if (n_ + 1 > 14) return std::nullopt;
    return classical_tensor(*this);
}

std::optional<GateCounts> CAddK::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(std::max<long long>(n_ - 2, 1)));
}

// ---------------------------------------------------------------------------
// LessThan

LessThan::LessThan(long long n) : n_(n) { check_width(n); }

Signature LessThan::signature() const {
    return Signature{Register("a", QDType::uint(n_)), Register("b", QDType::uint(n_)),
                     Register("flag", QDType::bit())};
}

std::optional<ClassicalMap> LessThan::apply_classical(const ClassicalMap& ins) const {
    if (n_ > kClassicalWidthLimit) return std::nullopt;
    long long a = ins.at("a").scalar();
    long long b = ins.at("b").scalar();
    long long f = ins.at("flag").scalar() ^ (a < b ? 1 : 0);
    return ClassicalMap{{"a", ins.at("a")},
                        {"b", ins.at("b")},
                        {"flag", ClassicalValue::of(QDType::bit(), f)}};
}

std::optional<CMat> LessThan::leaf_tensor() const {
    if (2 * n_ + 1 > 14) return std::nullopt;
    return classical_tensor(*this);
}

std::optional<GateCounts> LessThan::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(n_));
}

// ---------------------------------------------------------------------------
// LessThanConstant

LessThanConstant::LessThanConstant(long long n, long long k) : n_(n), k_(k) {
    check_width(n);
    if (k < 0 || (n < 62 && k > (1LL << n))) throw RangeError("comparison constant out of range");
}

Signature LessThanConstant::signature() const {
    return Signature{Register("x", QDType::uint(n_)), Register("flag", QDType::bit())};
}

std::optional<ClassicalMap> LessThanConstant::apply_classical(const ClassicalMap& ins) const {
    if (n_ > kClassicalWidthLimit) return std::nullopt;
    long long x = ins.at("x").scalar();
    long long f = ins.at("flag").scalar() ^ (x < k_ ? 1 : 0);
    return ClassicalMap{{"x", ins.at("x")}, {"flag", ClassicalValue::of(QDType::bit(), f)}};
}

std::optional<CMat> LessThanConstant::leaf_tensor() const {
    if (n_ + 1 > 14) return std::nullopt;
    return classical_tensor(*this);
}

std::optional<GateCounts> LessThanConstant::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(std::max<long long>(n_ - 1, 1)));
}

// ---------------------------------------------------------------------------
// CSwapN

CSwapN::CSwapN(long long n) : n_(n) { check_width(n); }

Signature CSwapN::signature() const {
    return Signature{Register("ctrl", QDType::bit()), Register("x", QDType::uint(n_)),
                     Register("y", QDType::uint(n_))};
}

std::optional<std::vector<Callee>> CSwapN::callees() const {
    return std::vector<Callee>{{make_bloq<CSwap>(), SymExpr::integer(n_)}};
}

std::optional<ClassicalMap> CSwapN::apply_classical(const ClassicalMap& ins) const {
    long long c = ins.at("ctrl").scalar();
    ClassicalValue x = ins.at("x");
    ClassicalValue y = ins.at("y");
    if (c) std::swap(x, y);
    return ClassicalMap{{"ctrl", ins.at("ctrl")}, {"x", x}, {"y", y}};
}

void CSwapN::build_decomposition(GraphBuilder& bb) const {
    Port c = bb.input("ctrl");
    std::vector<Port> xs = n_ > 1 ? bb.split(bb.input("x")) : std::vector<Port>{bb.input("x")};
    std::vector<Port> ys = n_ > 1 ? bb.split(bb.input("y")) : std::vector<Port>{bb.input("y")};
    for (long long i = 0; i < n_; ++i) {
        auto o = bb.add(make_bloq<CSwap>(),
                        std::map<std::string, Port>{{"ctrl", c},
                                                    {"x", xs[static_cast<size_t>(i)]},
                                                    {"y", ys[static_cast<size_t>(i)]}});
        c = o[0];
        xs[static_cast<size_t>(i)] = o[1];
        ys[static_cast<size_t>(i)] = o[2];
    }
    bb.set_output("ctrl", c);
    bb.set_output("x", n_ > 1 ? bb.join(xs, QDType::uint(n_)) : xs[0]);
    bb.set_output("y", n_ > 1 ? bb.join(ys, QDType::uint(n_)) : ys[0]);
}

// ---------------------------------------------------------------------------
// MultiCToffoli

MultiCToffoli::MultiCToffoli(long long k) : k_(k) {
    if (k < 2) throw BadSize("multi-controlled Toffoli needs at least 2 controls");
}

Signature MultiCToffoli::signature() const {
    return Signature{Register("ctrl", QDType::bit(), {k_}), Register("target", QDType::bit())};
}

std::optional<ClassicalMap> MultiCToffoli::apply_classical(const ClassicalMap& ins) const {
    const ClassicalValue& cs = ins.at("ctrl");
    long long all = 1;
    for (size_t i = 0; i < cs.size(); ++i) all &= cs[i];
    long long t = ins.at("target").scalar() ^ all;
    return ClassicalMap{{"ctrl", cs}, {"target", ClassicalValue::of(QDType::bit(), t)}};
}

std::optional<GateCounts> MultiCToffoli::leaf_gate_counts() const {
    return GateCounts::toffolis(SymExpr::integer(std::max<long long>(k_ - 2, 1)));
}

// ---------------------------------------------------------------------------
// Controlled

Controlled::Controlled(BloqPtr inner) : inner_(std::move(inner)) {
    Signature sig = inner_->signature();
    for (const auto& r : sig.registers()) {
        if (r.side != Side::Thru)
            throw SignatureMismatch("controlled wrapper needs thru-only registers");
        if (r.name == "control")
            throw SignatureMismatch("inner bloq already has a register named 'control'");
    }
}

Signature Controlled::signature() const {
    std::vector<Register> regs{Register("control", QDType::bit())};
    Signature inner_sig = inner_->signature();
    for (const auto& r : inner_sig.registers()) regs.push_back(r);
    return Signature{std::move(regs)};
}

std::optional<std::vector<Callee>> Controlled::callees() const {
    return std::vector<Callee>{{inner_, SymExpr::integer(1)}};
}

std::optional<ClassicalMap> Controlled::apply_classical(const ClassicalMap& ins) const {
    ClassicalMap rest = ins;
    ClassicalValue c = ins.at("control");
    rest.erase("control");
    ClassicalMap out = c.scalar() ? call_classically(*inner_, rest) : rest;
    out.emplace("control", std::move(c));
    return out;
}

std::optional<CMat> Controlled::leaf_tensor() const {
    CMat u = tensor_of(*inner_);
    if (u.rows() != u.cols()) return std::nullopt;
    long long d = u.rows();
    CMat m = CMat::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = CMat::Identity(d, d);
    m.bottomRightCorner(d, d) = u;
    return m;
}

}  // namespace qre
