#include "qre/dtypes.hpp"

namespace qre {

namespace {
void check_width(const SymExpr& n) {
    if (auto c = n.as_integer(); c && *c < 1) throw DomainError("bit width must be >= 1");
}
}  // namespace

QDType QDType::bit() { return QDType(); }

QDType QDType::uint(SymExpr n) {
    check_width(n);
    QDType d;
    d.kind_ = DKind::UInt;
    d.bits_ = std::move(n);
    return d;
}

QDType QDType::int_(SymExpr n) {
    check_width(n);
    QDType d;
    d.kind_ = DKind::Int;
    d.bits_ = std::move(n);
    d.signed_ = true;
    return d;
}

QDType QDType::fxp(long long n, long long f, bool is_signed) {
    if (n < 1) throw DomainError("bit width must be >= 1");
    if (f < 0 || f > n) throw DomainError("fractional bits out of range");
    QDType d;
    d.kind_ = DKind::Fxp;
    d.bits_ = SymExpr::integer(n);
    d.frac_ = f;
    d.signed_ = is_signed;
    return d;
}

QDType QDType::montgomery(SymExpr n, SymExpr modulus) {
    check_width(n);
    QDType d;
    d.kind_ = DKind::MontgomeryUInt;
    d.bits_ = std::move(n);
    d.modulus_ = std::move(modulus);
    return d;
}

std::string QDType::key() const {
    switch (kind_) {
        case DKind::Bit:
            return "Bit";
        case DKind::UInt:
            return "UInt[" + bits_.key() + "]";
        case DKind::Int:
            return "Int[" + bits_.key() + "]";
        case DKind::Fxp:
            return "Fxp[" + bits_.key() + "," + std::to_string(frac_) + "," +
                   (signed_ ? "s" : "u") + "]";
        case DKind::MontgomeryUInt:
            return "Mont[" + bits_.key() + ";" + modulus_.key() + "]";
    }
    return "?";
}

std::string QDType::str() const {
    switch (kind_) {
        case DKind::Bit:
            return "Bit";
        case DKind::UInt:
            return "UInt(" + bits_.str() + ")";
        case DKind::Int:
            return "Int(" + bits_.str() + ")";
        case DKind::Fxp:
            return "Fxp(" + bits_.str() + ", " + std::to_string(frac_) + ")";
        case DKind::MontgomeryUInt:
            return "MontgomeryUInt(" + bits_.str() + ", mod=" + modulus_.str() + ")";
    }
    return "?";
}

}  // namespace qre
