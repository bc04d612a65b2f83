#include "qre/bookkeeping.hpp"

#include "qre/errors.hpp"

namespace qre {

namespace {
long long width_of(const QDType& d) {
    auto n = d.concrete_bits();
    if (!n) throw Error("split/join require a concrete bit width");
    if (*n < 2) throw AlreadyBit("dtype is a single bit");
    return *n;
}
}  // namespace

Split::Split(QDType dtype) : dtype_(std::move(dtype)) { width_of(dtype_); }

Signature Split::signature() const {
    long long n = width_of(dtype_);
    return Signature{Register("reg", dtype_, {}, Side::LeftOnly),
                     Register("bits", QDType::bit(), {n}, Side::RightOnly)};
}

std::optional<ClassicalMap> Split::apply_classical(const ClassicalMap& ins) const {
    const ClassicalValue& v = ins.at("reg");
    std::vector<int> bits = v.to_bits();
    std::vector<long long> out(bits.begin(), bits.end());
    return ClassicalMap{{"bits", ClassicalValue::of_array(QDType::bit(), std::move(out))}};
}

std::optional<CMat> Split::leaf_tensor() const {
    auto n = dtype_.concrete_bits();
    if (!n || *n > 14) return std::nullopt;
    // relabelling only: the bit order of a register matches its expansion
    return CMat::Identity(1LL << *n, 1LL << *n);
}

Join::Join(QDType dtype) : dtype_(std::move(dtype)) { width_of(dtype_); }

Signature Join::signature() const {
    long long n = width_of(dtype_);
    return Signature{Register("bits", QDType::bit(), {n}, Side::LeftOnly),
                     Register("reg", dtype_, {}, Side::RightOnly)};
}

std::optional<ClassicalMap> Join::apply_classical(const ClassicalMap& ins) const {
    const ClassicalValue& v = ins.at("bits");
    std::vector<int> bits(v.vals.begin(), v.vals.end());
    return ClassicalMap{{"reg", ClassicalValue::from_bits(dtype_, bits)}};
}

std::optional<CMat> Join::leaf_tensor() const {
    auto n = dtype_.concrete_bits();
    if (!n || *n > 14) return std::nullopt;
    return CMat::Identity(1LL << *n, 1LL << *n);
}

std::optional<CMat> Allocate::leaf_tensor() const {
    auto n = dtype_.concrete_bits();
    if (!n || *n > 20) return std::nullopt;
    CMat col = CMat::Zero(1LL << *n, 1);
    col(0, 0) = 1.0;
    return col;
}

std::optional<ClassicalMap> Free::apply_classical(const ClassicalMap& ins) const {
    // discarding a register is only classically sound if it holds zero
    if (ins.at("reg").scalar() != 0)
        throw NotClassical("Free applied to a register not known to be zero");
    return ClassicalMap{};
}

std::optional<CMat> Free::leaf_tensor() const {
    auto n = dtype_.concrete_bits();
    if (!n || *n > 20) return std::nullopt;
    CMat row = CMat::Zero(1, 1LL << *n);
    row(0, 0) = 1.0;
    return row;
}

}  // namespace qre
