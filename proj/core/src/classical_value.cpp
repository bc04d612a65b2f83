#include "qre/classical_value.hpp"

#include "qre/errors.hpp"

namespace qre {

void check_in_range(const QDType& d, long long v) {
    auto nb = d.concrete_bits();
    if (!nb) throw NotClassical("classical value requires a concrete bit width: " + d.str());
    long long n = *nb;
    if (n > 63) return;  // full 64-bit range not representable; accept as-is
    if (d.is_signed()) {
        long long lo = -(1LL << (n - 1));
        long long hi = (1LL << (n - 1)) - 1;
        if (v < lo || v > hi)
            throw RangeError("value " + std::to_string(v) + " out of range for " + d.str());
    } else {
        if (v < 0 || v >= (1LL << n))
            throw RangeError("value " + std::to_string(v) + " out of range for " + d.str());
    }
}

ClassicalValue ClassicalValue::of(QDType d, long long v) {
    check_in_range(d, v);
    return ClassicalValue{std::move(d), {v}};
}

ClassicalValue ClassicalValue::of_array(QDType d, std::vector<long long> vs) {
    for (long long v : vs) check_in_range(d, v);
    return ClassicalValue{std::move(d), std::move(vs)};
}

long long ClassicalValue::scalar() const {
    if (vals.size() != 1) throw NotClassical("expected a scalar value");
    return vals[0];
}

std::vector<int> ClassicalValue::to_bits() const {
    long long n = *dtype.concrete_bits();
    unsigned long long raw = static_cast<unsigned long long>(scalar());
    if (n < 64) raw &= (1ULL << n) - 1;  // two's complement for signed values
    std::vector<int> bits(n);
    for (long long i = 0; i < n; ++i) bits[i] = (raw >> (n - 1 - i)) & 1;
    return bits;
}

ClassicalValue ClassicalValue::from_bits(const QDType& d, const std::vector<int>& bits) {
    long long n = *d.concrete_bits();
    if (static_cast<long long>(bits.size()) != n) throw RangeError("bit count mismatch");
    unsigned long long raw = 0;
    for (int b : bits) raw = (raw << 1) | (b & 1);
    long long v;
    if (d.is_signed() && n < 64 && (raw >> (n - 1)) & 1)
        v = static_cast<long long>(raw) - (1LL << n);
    else
        v = static_cast<long long>(raw);
    return of(d, v);
}

std::string ClassicalValue::str() const {
    if (vals.size() == 1) return std::to_string(vals[0]);
    std::string s = "[";
    for (size_t i = 0; i < vals.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(vals[i]);
    }
    return s + "]";
}

}  // namespace qre
