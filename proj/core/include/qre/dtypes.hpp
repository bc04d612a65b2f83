#pragma once

#include <optional>
#include <string>

#include "qre/symbolic.hpp"

namespace qre {

enum class DKind { Bit, UInt, Int, Fxp, MontgomeryUInt };

/// Quantum data type: a register interpretation with a (possibly symbolic)
/// bit width. Widths must be concrete for classical or tensor simulation.
class QDType {
public:
    static QDType bit();
    static QDType uint(SymExpr n);
    static QDType uint(long long n) { return uint(SymExpr::integer(n)); }
    static QDType int_(SymExpr n);
    static QDType int_(long long n) { return int_(SymExpr::integer(n)); }
    static QDType fxp(long long n, long long f, bool is_signed = false);
    static QDType montgomery(SymExpr n, SymExpr modulus);
    static QDType montgomery(long long n, long long modulus) {
        return montgomery(SymExpr::integer(n), SymExpr::integer(modulus));
    }

    DKind kind() const { return kind_; }
    /// Total width in qubits (1 for Bit).
    const SymExpr& num_qubits() const { return bits_; }
    std::optional<long long> concrete_bits() const { return bits_.as_integer(); }
    long long frac_bits() const { return frac_; }
    bool is_signed() const { return signed_; }
    const SymExpr& modulus() const { return modulus_; }

    std::string key() const;
    std::string str() const;

    friend bool operator==(const QDType& a, const QDType& b) { return a.key() == b.key(); }
    friend bool operator!=(const QDType& a, const QDType& b) { return !(a == b); }

private:
    DKind kind_ = DKind::Bit;
    SymExpr bits_ = SymExpr::integer(1);
    long long frac_ = 0;
    bool signed_ = false;
    SymExpr modulus_ = SymExpr::integer(0);
};

}  // namespace qre
