#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qre/errors.hpp"

namespace qre {

/// Exact rational with normalized sign (den > 0) and gcd-reduced terms.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
    Rational(long long n, long long d);

    bool is_integer() const { return den == 1; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    Rational operator-() const { return Rational(-num, den); }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }

    Rational floor() const;
    Rational ceil() const;
    std::string str() const;
};

enum class SymKind {
    Const,       // exact rational
    FloatConst,  // approximate
    Symbol,
    Add,
    Mul,
    Pow,
    Log2,
    Ln,
    Ceil,
    Floor,
    Max,
    Min,
};

/// Result of numeric evaluation. Exact rationals survive +, *, integer ^,
/// ceil/floor/max/min; everything else degrades to double.
struct SymValue {
    bool exact = true;
    Rational rat;
    double approx = 0.0;

    static SymValue of(Rational r) { return SymValue{true, r, r.to_double()}; }
    static SymValue of(double d) { return SymValue{false, Rational(0), d}; }
    double as_double() const { return exact ? rat.to_double() : approx; }
};

class SymExpr;
using Bindings = std::map<std::string, SymValue>;

namespace detail {
struct SymNode {
    SymKind kind;
    Rational rat;                 // Const
    double fval = 0.0;            // FloatConst
    std::string sym;              // Symbol
    std::vector<SymExpr> args;    // everything else
};
}  // namespace detail

/// Immutable symbolic expression; cheap to copy and share.
class SymExpr {
public:
    SymExpr();  // zero

    static SymExpr integer(long long v) { return rational(Rational(v)); }
    static SymExpr rational(Rational r);
    static SymExpr real(double v);
    static SymExpr symbol(const std::string& name);
    static SymExpr pi();  // float constant

    static SymExpr add(std::vector<SymExpr> terms);
    static SymExpr mul(std::vector<SymExpr> factors);
    static SymExpr pow(SymExpr base, SymExpr exp);
    static SymExpr log2(SymExpr x);
    static SymExpr ln(SymExpr x);
    static SymExpr ceil(SymExpr x);
    static SymExpr floor(SymExpr x);
    static SymExpr max(SymExpr a, SymExpr b);
    static SymExpr min(SymExpr a, SymExpr b);
    /// ceil(log2(x)), the ubiquitous register-width helper.
    static SymExpr bitsize(SymExpr x) { return ceil(log2(std::move(x))); }

    SymKind kind() const { return node_->kind; }
    const std::vector<SymExpr>& args() const { return node_->args; }
    const std::string& symbol_name() const { return node_->sym; }
    Rational const_rational() const { return node_->rat; }
    double float_value() const { return node_->fval; }

    bool is_const() const { return kind() == SymKind::Const || kind() == SymKind::FloatConst; }
    bool is_zero() const { return kind() == SymKind::Const && node_->rat == Rational(0); }
    bool is_one() const { return kind() == SymKind::Const && node_->rat == Rational(1); }
    /// Concrete integer value if this is an exact integer constant.
    std::optional<long long> as_integer() const;

    SymExpr simplify() const;
    SymValue evaluate(const Bindings& bindings) const;
    double evaluate_double(const std::map<std::string, double>& bindings) const;
    SymExpr substitute(const std::map<std::string, SymExpr>& subs) const;
    void free_symbols(std::set<std::string>& out) const;
    bool depends_on(const std::string& sym) const;

    /// Canonical structural key; equal keys imply equal expressions.
    std::string key() const;
    std::string str() const;
    std::string latex() const;

    friend bool operator==(const SymExpr& a, const SymExpr& b) { return a.key() == b.key(); }

    friend SymExpr operator+(const SymExpr& a, const SymExpr& b) { return add({a, b}); }
    friend SymExpr operator-(const SymExpr& a, const SymExpr& b) {
        return add({a, mul({integer(-1), b})});
    }
    friend SymExpr operator*(const SymExpr& a, const SymExpr& b) { return mul({a, b}); }
    friend SymExpr operator/(const SymExpr& a, const SymExpr& b) {
        return mul({a, pow(b, integer(-1))});
    }
    SymExpr operator-() const { return mul({integer(-1), *this}); }

private:
    explicit SymExpr(std::shared_ptr<const detail::SymNode> node) : node_(std::move(node)) {}
    static SymExpr make(detail::SymNode node);
    std::shared_ptr<const detail::SymNode> node_;

    friend class SymPoly;
};

/// Dense view of an expression as a polynomial in one symbol, used for
/// leading-order extraction of cost formulas. In bounds mode ceil/floor
/// collapse to their arguments before extraction.
class SymPoly {
public:
    static SymPoly from(const SymExpr& e, const std::string& sym, bool bounds_mode);
    /// (coefficient, degree) of the highest-order term.
    std::pair<SymExpr, Rational> leading_term() const;
    const std::map<Rational, SymExpr>& coefficients() const { return coeffs_; }

private:
    std::map<Rational, SymExpr> coeffs_;
};

/// Convenience wrapper matching the documented analysis surface.
std::pair<SymExpr, Rational> leading_term(const SymExpr& e, const std::string& sym,
                                          bool bounds_mode = true);

}  // namespace qre
