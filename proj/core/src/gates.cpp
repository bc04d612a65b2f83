#include "qre/gates.hpp"

#include <cmath>
#include <complex>

namespace qre {

using namespace std::complex_literals;

Signature SimpleGate::signature() const {
    if (qubits_ == 1) return Signature{Register("q", QDType::bit())};
    return Signature{Register("q", QDType::bit(), {qubits_})};
}

std::optional<ClassicalMap> XGate::apply_classical(const ClassicalMap& ins) const {
    return ClassicalMap{{"q", ClassicalValue::of(QDType::bit(), 1 - ins.at("q").scalar())}};
}

std::optional<CMat> XGate::leaf_tensor() const {
    CMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

std::optional<CMat> YGate::leaf_tensor() const {
    CMat m(2, 2);
    m << 0.0 + 0.0i, -1.0i, 1.0i, 0.0 + 0.0i;
    return m;
}

std::optional<CMat> ZGate::leaf_tensor() const {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = -1;
    return m;
}

std::optional<CMat> HGate::leaf_tensor() const {
    CMat m(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

std::optional<CMat> SGate::leaf_tensor() const {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = 1.0i;
    return m;
}

std::optional<CMat> TGate::leaf_tensor() const {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = std::exp((adjoint_ ? -1.0i : 1.0i) * (M_PI / 4));
    return m;
}

Signature CNot::signature() const {
    return Signature{Register("ctrl", QDType::bit()), Register("target", QDType::bit())};
}

std::optional<ClassicalMap> CNot::apply_classical(const ClassicalMap& ins) const {
    long long c = ins.at("ctrl").scalar();
    long long t = ins.at("target").scalar();
    return ClassicalMap{{"ctrl", ClassicalValue::of(QDType::bit(), c)},
                        {"target", ClassicalValue::of(QDType::bit(), t ^ c)}};
}

namespace {
CMat permutation(int qubits, const std::vector<long long>& image) {
    long long dim = 1LL << qubits;
    CMat m = CMat::Zero(dim, dim);
    for (long long i = 0; i < dim; ++i) m(image[static_cast<size_t>(i)], i) = 1.0;
    return m;
}
}  // namespace

std::optional<CMat> CNot::leaf_tensor() const { return permutation(2, {0, 1, 3, 2}); }

std::optional<CMat> CZGate::leaf_tensor() const {
    CMat m = CMat::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

Signature SwapGate::signature() const {
    return Signature{Register("x", QDType::bit()), Register("y", QDType::bit())};
}

std::optional<ClassicalMap> SwapGate::apply_classical(const ClassicalMap& ins) const {
    return ClassicalMap{{"x", ins.at("y")}, {"y", ins.at("x")}};
}

std::optional<CMat> SwapGate::leaf_tensor() const { return permutation(2, {0, 2, 1, 3}); }

Signature Toffoli::signature() const {
    return Signature{Register("ctrl", QDType::bit(), {2}), Register("target", QDType::bit())};
}

std::optional<ClassicalMap> Toffoli::apply_classical(const ClassicalMap& ins) const {
    const ClassicalValue& c = ins.at("ctrl");
    long long t = ins.at("target").scalar() ^ (c[0] & c[1]);
    return ClassicalMap{{"ctrl", c}, {"target", ClassicalValue::of(QDType::bit(), t)}};
}

std::optional<CMat> Toffoli::leaf_tensor() const {
    return permutation(3, {0, 1, 2, 3, 4, 5, 7, 6});
}

Signature CSwap::signature() const {
    return Signature{Register("ctrl", QDType::bit()), Register("x", QDType::bit()),
                     Register("y", QDType::bit())};
}

std::optional<ClassicalMap> CSwap::apply_classical(const ClassicalMap& ins) const {
    long long c = ins.at("ctrl").scalar();
    ClassicalValue x = ins.at("x"), y = ins.at("y");
    if (c) std::swap(x, y);
    return ClassicalMap{{"ctrl", ClassicalValue::of(QDType::bit(), c)}, {"x", x}, {"y", y}};
}

std::optional<CMat> CSwap::leaf_tensor() const {
    return permutation(3, {0, 1, 2, 3, 4, 6, 5, 7});
}

Signature And::signature() const {
    return Signature{Register("ctrl", QDType::bit(), {2}),
                     Register("target", QDType::bit(), {}, Side::RightOnly)};
}

std::optional<ClassicalMap> And::apply_classical(const ClassicalMap& ins) const {
    const ClassicalValue& c = ins.at("ctrl");
    return ClassicalMap{{"ctrl", c}, {"target", ClassicalValue::of(QDType::bit(), c[0] & c[1])}};
}

std::optional<CMat> And::leaf_tensor() const {
    CMat m = CMat::Zero(8, 4);
    for (long long c = 0; c < 4; ++c) m((c << 1) | ((c >> 1) & c & 1), c) = 1.0;
    return m;
}

Signature AndAdjoint::signature() const {
    return Signature{Register("ctrl", QDType::bit(), {2}),
                     Register("target", QDType::bit(), {}, Side::LeftOnly)};
}

std::optional<ClassicalMap> AndAdjoint::apply_classical(const ClassicalMap& ins) const {
    const ClassicalValue& c = ins.at("ctrl");
    if (ins.at("target").scalar() != (c[0] & c[1]))
        throw NotClassical("And† target does not hold the AND of its controls");
    return ClassicalMap{{"ctrl", c}};
}

std::optional<CMat> AndAdjoint::leaf_tensor() const {
    return And().leaf_tensor()->transpose();
}

namespace {
std::optional<double> const_double(const SymExpr& e) {
    if (e.kind() == SymKind::Const) return e.const_rational().to_double();
    if (e.kind() == SymKind::FloatConst) return e.float_value();
    return std::nullopt;
}
}  // namespace

std::optional<CMat> ZPow::leaf_tensor() const {
    auto t = const_double(t_);
    if (!t) return std::nullopt;
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = std::exp(1.0i * M_PI * *t);
    return m;
}

std::optional<CMat> Rz::leaf_tensor() const {
    auto th = const_double(theta_);
    if (!th) return std::nullopt;
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = std::exp(-0.5i * *th);
    m(1, 1) = std::exp(0.5i * *th);
    return m;
}

std::optional<CMat> GlobalPhase::leaf_tensor() const {
    CMat m(1, 1);
    m(0, 0) = std::exp(1.0i * phi_);
    return m;
}

std::optional<CMat> Identity::leaf_tensor() const {
    auto n = dtype_.concrete_bits();
    if (!n || *n > 20) return std::nullopt;
    return CMat::Identity(1LL << *n, 1LL << *n);
}

}  // namespace qre
