#pragma once

#include <map>
#include <string>
#include <vector>

#include "qre/dtypes.hpp"

namespace qre {

/// A classical value (or array of values) carried by a typed register during
/// classical simulation. Scalars are stored as element 0. Integer-like dtypes
/// store their numeric value; Fxp stores raw bits (value = raw / 2^f).
struct ClassicalValue {
    QDType dtype;
    std::vector<long long> vals;

    static ClassicalValue of(QDType d, long long v);
    static ClassicalValue of_array(QDType d, std::vector<long long> vs);

    long long scalar() const;
    size_t size() const { return vals.size(); }
    long long operator[](size_t i) const { return vals[i]; }

    /// MSB-first bit expansion of the scalar value.
    std::vector<int> to_bits() const;
    static ClassicalValue from_bits(const QDType& d, const std::vector<int>& bits);

    std::string str() const;
    friend bool operator==(const ClassicalValue& a, const ClassicalValue& b) {
        return a.dtype == b.dtype && a.vals == b.vals;
    }
};

/// Range-check a raw value against a dtype (concrete width required).
void check_in_range(const QDType& d, long long v);

using ClassicalMap = std::map<std::string, ClassicalValue>;

}  // namespace qre
