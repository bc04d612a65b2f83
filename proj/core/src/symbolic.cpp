#include "qre/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace qre {

// ---------------------------------------------------------------- Rational

Rational::Rational(long long n, long long d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

static Rational from128(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a == 0) a = 1;
    return Rational(static_cast<long long>(n / a), static_cast<long long>(d / a));
}

Rational operator+(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                   static_cast<__int128>(a.den) * b.den);
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
}
Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw DomainError("division by zero rational");
    return from128(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
}
bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Rational Rational::floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return Rational(q);
}
Rational Rational::ceil() const {
    long long q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return Rational(q);
}
std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------- node plumbing

namespace {

std::string float_repr(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string node_key(const detail::SymNode& n) {
    switch (n.kind) {
        case SymKind::Const:
            return n.rat.str();
        case SymKind::FloatConst:
            return "f" + float_repr(n.fval);
        case SymKind::Symbol:
            return "$" + n.sym;
        default:
            break;
    }
    static const char* tags[] = {"",    "",    "",     "+",   "*",   "^",
                                 "log2", "ln", "ceil", "floor", "max", "min"};
    std::string out = "(";
    out += tags[static_cast<int>(n.kind)];
    for (const auto& a : n.args) {
        out += " ";
        out += a.key();
    }
    out += ")";
    return out;
}

}  // namespace

// Keys are memoized per node; nodes are immutable so this is computed once.
struct KeyedNode : detail::SymNode {
    std::string cached_key;
};

SymExpr::SymExpr() { *this = integer(0); }

SymExpr SymExpr::make(detail::SymNode node) {
    auto keyed = std::make_shared<KeyedNode>();
    static_cast<detail::SymNode&>(*keyed) = std::move(node);
    keyed->cached_key = node_key(*keyed);
    return SymExpr(std::shared_ptr<const detail::SymNode>(keyed));
}

std::string SymExpr::key() const {
    return static_cast<const KeyedNode*>(node_.get())->cached_key;
}

SymExpr SymExpr::rational(Rational r) {
    detail::SymNode n;
    n.kind = SymKind::Const;
    n.rat = r;
    return make(std::move(n));
}

SymExpr SymExpr::real(double v) {
    detail::SymNode n;
    n.kind = SymKind::FloatConst;
    n.fval = v;
    return make(std::move(n));
}

SymExpr SymExpr::pi() { return real(M_PI); }

SymExpr SymExpr::symbol(const std::string& name) {
    detail::SymNode n;
    n.kind = SymKind::Symbol;
    n.sym = name;
    return make(std::move(n));
}

std::optional<long long> SymExpr::as_integer() const {
    if (kind() == SymKind::Const && node_->rat.is_integer()) return node_->rat.num;
    return std::nullopt;
}

// Expressions are kept canonical at construction: constants folded, Add/Mul
// flattened and sorted, like terms and like powers collected. simplify() is
// then a no-op by construction, which makes idempotence structural.

namespace {

// (coefficient, rest) decomposition of a multiplicative term.
struct Term {
    bool coeff_exact = true;
    Rational coeff_rat{1};
    double coeff_f = 1.0;
    std::vector<SymExpr> rest;  // sorted non-const factors

    void mul_const(const SymExpr& c) {
        if (c.kind() == SymKind::Const) {
            if (coeff_exact)
                coeff_rat = coeff_rat * c.const_rational();
            else
                coeff_f *= c.const_rational().to_double();
        } else {
            if (coeff_exact) {
                coeff_f = coeff_rat.to_double();
                coeff_exact = false;
            }
            coeff_f *= c.float_value();
        }
    }
    double coeff_double() const { return coeff_exact ? coeff_rat.to_double() : coeff_f; }
    SymExpr coeff_expr() const {
        return coeff_exact ? SymExpr::rational(coeff_rat) : SymExpr::real(coeff_f);
    }
    std::string rest_key() const {
        std::string k;
        for (const auto& f : rest) k += f.key() + "|";
        return k;
    }
};

Term term_of(const SymExpr& e);

}  // namespace

SymExpr SymExpr::add(std::vector<SymExpr> terms) {
    // flatten
    std::vector<SymExpr> flat;
    for (auto& t : terms) {
        if (t.kind() == SymKind::Add)
            for (const auto& a : t.args()) flat.push_back(a);
        else
            flat.push_back(t);
    }
    // collect like terms by their non-constant part
    bool const_exact = true;
    Rational const_rat{0};
    double const_f = 0.0;
    std::map<std::string, Term> groups;
    std::vector<std::string> order;
    for (const auto& t : flat) {
        if (t.is_const()) {
            if (t.kind() == SymKind::Const) {
                if (const_exact)
                    const_rat = const_rat + t.const_rational();
                else
                    const_f += t.const_rational().to_double();
            } else {
                if (const_exact) {
                    const_f = const_rat.to_double();
                    const_exact = false;
                }
                const_f += t.float_value();
            }
            continue;
        }
        Term tm = term_of(t);
        std::string k = tm.rest_key();
        auto it = groups.find(k);
        if (it == groups.end()) {
            groups.emplace(k, tm);
            order.push_back(k);
        } else {
            Term& g = it->second;
            if (g.coeff_exact && tm.coeff_exact)
                g.coeff_rat = g.coeff_rat + tm.coeff_rat;
            else {
                g.coeff_f = g.coeff_double() + tm.coeff_double();
                g.coeff_exact = false;
            }
        }
    }
    std::vector<SymExpr> out;
    for (const auto& k : order) {
        Term& g = groups.at(k);
        if (g.coeff_exact && g.coeff_rat == Rational(0)) continue;
        if (!g.coeff_exact && g.coeff_f == 0.0) continue;
        std::vector<SymExpr> factors = g.rest;
        if (!(g.coeff_exact && g.coeff_rat == Rational(1))) factors.insert(factors.begin(), g.coeff_expr());
        if (factors.size() == 1)
            out.push_back(factors[0]);
        else {
            detail::SymNode n;
            n.kind = SymKind::Mul;
            n.args = std::move(factors);
            out.push_back(make(std::move(n)));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SymExpr& a, const SymExpr& b) { return a.key() < b.key(); });
    bool has_const = !(const_exact && const_rat == Rational(0)) || out.empty();
    if (!const_exact && const_f == 0.0 && !out.empty()) has_const = true;  // keep float zero: marks approx
    if (has_const) {
        SymExpr c = const_exact ? rational(const_rat) : real(const_f);
        out.insert(out.begin(), c);
    }
    if (out.size() == 1) return out[0];
    detail::SymNode n;
    n.kind = SymKind::Add;
    n.args = std::move(out);
    return make(std::move(n));
}

namespace {

// base/exponent view of a factor
std::pair<SymExpr, SymExpr> base_exp(const SymExpr& f) {
    if (f.kind() == SymKind::Pow) return {f.args()[0], f.args()[1]};
    return {f, SymExpr::integer(1)};
}

Term term_of(const SymExpr& e) {
    Term t;
    if (e.kind() == SymKind::Mul) {
        for (const auto& f : e.args()) {
            if (f.is_const())
                t.mul_const(f);
            else
                t.rest.push_back(f);
        }
    } else if (e.is_const()) {
        t.mul_const(e);
    } else {
        t.rest.push_back(e);
    }
    return t;
}

}  // namespace

SymExpr SymExpr::mul(std::vector<SymExpr> factors) {
    std::vector<SymExpr> flat;
    for (auto& f : factors) {
        if (f.kind() == SymKind::Mul)
            for (const auto& a : f.args()) flat.push_back(a);
        else
            flat.push_back(f);
    }
    bool coeff_exact = true;
    Rational coeff_rat{1};
    double coeff_f = 1.0;
    bool saw_float = false;
    // collect powers with a common base
    std::map<std::string, std::pair<SymExpr, std::vector<SymExpr>>> bases;  // base key -> (base, exps)
    std::vector<std::string> order;
    for (const auto& f : flat) {
        if (f.is_const()) {
            if (f.kind() == SymKind::Const) {
                // an exact zero factor annihilates the product exactly
                if (f.const_rational() == Rational(0)) return integer(0);
                if (coeff_exact)
                    coeff_rat = coeff_rat * f.const_rational();
                else
                    coeff_f *= f.const_rational().to_double();
            } else {
                saw_float = true;
                if (coeff_exact) {
                    coeff_f = coeff_rat.to_double();
                    coeff_exact = false;
                }
                coeff_f *= f.float_value();
            }
            continue;
        }
        auto [b, ex] = base_exp(f);
        std::string k = b.key();
        auto it = bases.find(k);
        if (it == bases.end()) {
            bases.emplace(k, std::make_pair(b, std::vector<SymExpr>{ex}));
            order.push_back(k);
        } else {
            it->second.second.push_back(ex);
        }
    }
    if (coeff_exact && coeff_rat == Rational(0)) return integer(0);
    if (!coeff_exact && coeff_f == 0.0) return real(0.0);
    std::vector<SymExpr> out;
    for (const auto& k : order) {
        auto& [b, exps] = bases.at(k);
        SymExpr e = exps.size() == 1 ? exps[0] : add(exps);
        if (e.is_zero()) continue;
        if (e.is_one())
            out.push_back(b);
        else
            out.push_back(pow(b, e));
    }
    std::sort(out.begin(), out.end(),
              [](const SymExpr& a, const SymExpr& b) { return a.key() < b.key(); });
    SymExpr c = coeff_exact ? rational(coeff_rat) : real(coeff_f);
    bool coeff_is_one = coeff_exact ? coeff_rat == Rational(1) : false;
    (void)saw_float;
    if (out.empty()) return c;
    if (!coeff_is_one) out.insert(out.begin(), c);
    if (out.size() == 1) return out[0];
    detail::SymNode n;
    n.kind = SymKind::Mul;
    n.args = std::move(out);
    return make(std::move(n));
}

SymExpr SymExpr::pow(SymExpr base, SymExpr exp) {
    if (exp.is_zero()) return integer(1);
    if (exp.is_one()) return base;
    if (base.is_one()) return integer(1);
    if (base.is_const() && exp.is_const()) {
        if (base.kind() == SymKind::Const && exp.kind() == SymKind::Const &&
            exp.const_rational().is_integer()) {
            long long k = exp.const_rational().num;
            if (k > -64 && k < 64) {
                Rational b = base.const_rational();
                bool inv = k < 0;
                if (inv) k = -k;
                Rational r{1};
                for (long long i = 0; i < k; ++i) r = r * b;
                if (inv) {
                    if (r.num == 0) throw DomainError("zero to negative power");
                    r = Rational(1) / r;
                }
                return rational(r);
            }
        }
        double b = base.kind() == SymKind::Const ? base.const_rational().to_double()
                                                 : base.float_value();
        double e = exp.kind() == SymKind::Const ? exp.const_rational().to_double()
                                                : exp.float_value();
        return real(std::pow(b, e));
    }
    detail::SymNode n;
    n.kind = SymKind::Pow;
    n.args = {std::move(base), std::move(exp)};
    return make(std::move(n));
}

SymExpr SymExpr::log2(SymExpr x) {
    if (x.is_const()) {
        double v = x.kind() == SymKind::Const ? x.const_rational().to_double() : x.float_value();
        if (v <= 0) throw DomainError("log2 of non-positive value");
        // exact powers of two fold to integers
        if (x.kind() == SymKind::Const) {
            double l = std::log2(v);
            double r = std::round(l);
            if (std::abs(l - r) < 1e-12 && std::pow(2.0, r) == v) return integer(static_cast<long long>(r));
        }
        return real(std::log2(v));
    }
    detail::SymNode n;
    n.kind = SymKind::Log2;
    n.args = {std::move(x)};
    return make(std::move(n));
}

SymExpr SymExpr::ln(SymExpr x) {
    if (x.is_const()) {
        double v = x.kind() == SymKind::Const ? x.const_rational().to_double() : x.float_value();
        if (v <= 0) throw DomainError("ln of non-positive value");
        return real(std::log(v));
    }
    detail::SymNode n;
    n.kind = SymKind::Ln;
    n.args = {std::move(x)};
    return make(std::move(n));
}

SymExpr SymExpr::ceil(SymExpr x) {
    if (x.kind() == SymKind::Const) return rational(x.const_rational().ceil());
    if (x.kind() == SymKind::FloatConst) return integer(static_cast<long long>(std::ceil(x.float_value())));
    if (x.kind() == SymKind::Ceil || x.kind() == SymKind::Floor) return x;
    detail::SymNode n;
    n.kind = SymKind::Ceil;
    n.args = {std::move(x)};
    return make(std::move(n));
}

SymExpr SymExpr::floor(SymExpr x) {
    if (x.kind() == SymKind::Const) return rational(x.const_rational().floor());
    if (x.kind() == SymKind::FloatConst) return integer(static_cast<long long>(std::floor(x.float_value())));
    if (x.kind() == SymKind::Ceil || x.kind() == SymKind::Floor) return x;
    detail::SymNode n;
    n.kind = SymKind::Floor;
    n.args = {std::move(x)};
    return make(std::move(n));
}

SymExpr SymExpr::max(SymExpr a, SymExpr b) {
    if (a == b) return a;
    if (a.is_const() && b.is_const()) {
        double va = a.kind() == SymKind::Const ? a.const_rational().to_double() : a.float_value();
        double vb = b.kind() == SymKind::Const ? b.const_rational().to_double() : b.float_value();
        return va >= vb ? a : b;
    }
    detail::SymNode n;
    n.kind = SymKind::Max;
    if (b.key() < a.key()) std::swap(a, b);
    n.args = {std::move(a), std::move(b)};
    return make(std::move(n));
}

SymExpr SymExpr::min(SymExpr a, SymExpr b) {
    if (a == b) return a;
    if (a.is_const() && b.is_const()) {
        double va = a.kind() == SymKind::Const ? a.const_rational().to_double() : a.float_value();
        double vb = b.kind() == SymKind::Const ? b.const_rational().to_double() : b.float_value();
        return va <= vb ? a : b;
    }
    detail::SymNode n;
    n.kind = SymKind::Min;
    if (b.key() < a.key()) std::swap(a, b);
    n.args = {std::move(a), std::move(b)};
    return make(std::move(n));
}

SymExpr SymExpr::simplify() const {
    // canonical at construction; re-run constructors to normalize any
    // pre-canonical trees (e.g. deserialized ones)
    switch (kind()) {
        case SymKind::Const:
        case SymKind::FloatConst:
        case SymKind::Symbol:
            return *this;
        case SymKind::Add: {
            std::vector<SymExpr> xs;
            for (const auto& a : args()) xs.push_back(a.simplify());
            return add(std::move(xs));
        }
        case SymKind::Mul: {
            std::vector<SymExpr> xs;
            for (const auto& a : args()) xs.push_back(a.simplify());
            return mul(std::move(xs));
        }
        case SymKind::Pow:
            return pow(args()[0].simplify(), args()[1].simplify());
        case SymKind::Log2:
            return log2(args()[0].simplify());
        case SymKind::Ln:
            return ln(args()[0].simplify());
        case SymKind::Ceil:
            return ceil(args()[0].simplify());
        case SymKind::Floor:
            return floor(args()[0].simplify());
        case SymKind::Max:
            return max(args()[0].simplify(), args()[1].simplify());
        case SymKind::Min:
            return min(args()[0].simplify(), args()[1].simplify());
    }
    return *this;
}

SymValue SymExpr::evaluate(const Bindings& bindings) const {
    switch (kind()) {
        case SymKind::Const:
            return SymValue::of(node_->rat);
        case SymKind::FloatConst:
            return SymValue::of(node_->fval);
        case SymKind::Symbol: {
            auto it = bindings.find(node_->sym);
            if (it == bindings.end()) throw UnboundSymbol(node_->sym);
            return it->second;
        }
        case SymKind::Add: {
            SymValue acc = SymValue::of(Rational(0));
            for (const auto& a : args()) {
                SymValue v = a.evaluate(bindings);
                if (acc.exact && v.exact)
                    acc = SymValue::of(acc.rat + v.rat);
                else
                    acc = SymValue::of(acc.as_double() + v.as_double());
            }
            return acc;
        }
        case SymKind::Mul: {
            SymValue acc = SymValue::of(Rational(1));
            for (const auto& a : args()) {
                SymValue v = a.evaluate(bindings);
                if (acc.exact && v.exact)
                    acc = SymValue::of(acc.rat * v.rat);
                else
                    acc = SymValue::of(acc.as_double() * v.as_double());
            }
            return acc;
        }
        case SymKind::Pow: {
            SymValue b = args()[0].evaluate(bindings);
            SymValue e = args()[1].evaluate(bindings);
            if (b.exact && e.exact && e.rat.is_integer() && e.rat.num > -64 && e.rat.num < 64) {
                long long k = e.rat.num;
                bool inv = k < 0;
                if (inv) k = -k;
                Rational r{1};
                for (long long i = 0; i < k; ++i) r = r * b.rat;
                if (inv) {
                    if (r.num == 0) throw DomainError("zero to negative power");
                    r = Rational(1) / r;
                }
                return SymValue::of(r);
            }
            return SymValue::of(std::pow(b.as_double(), e.as_double()));
        }
        case SymKind::Log2: {
            double v = args()[0].evaluate(bindings).as_double();
            if (v <= 0) throw DomainError("log2 of non-positive value");
            return SymValue::of(std::log2(v));
        }
        case SymKind::Ln: {
            double v = args()[0].evaluate(bindings).as_double();
            if (v <= 0) throw DomainError("ln of non-positive value");
            return SymValue::of(std::log(v));
        }
        case SymKind::Ceil: {
            SymValue v = args()[0].evaluate(bindings);
            if (v.exact) return SymValue::of(v.rat.ceil());
            return SymValue::of(Rational(static_cast<long long>(std::ceil(v.approx - 1e-12))));
        }
        case SymKind::Floor: {
            SymValue v = args()[0].evaluate(bindings);
            if (v.exact) return SymValue::of(v.rat.floor());
            return SymValue::of(Rational(static_cast<long long>(std::floor(v.approx + 1e-12))));
        }
        case SymKind::Max: {
            SymValue a = args()[0].evaluate(bindings);
            SymValue b = args()[1].evaluate(bindings);
            if (a.exact && b.exact) return SymValue::of(a.rat < b.rat ? b.rat : a.rat);
            return SymValue::of(std::max(a.as_double(), b.as_double()));
        }
        case SymKind::Min: {
            SymValue a = args()[0].evaluate(bindings);
            SymValue b = args()[1].evaluate(bindings);
            if (a.exact && b.exact) return SymValue::of(a.rat < b.rat ? a.rat : b.rat);
            return SymValue::of(std::min(a.as_double(), b.as_double()));
        }
    }
    throw Error("unreachable");
}

double SymExpr::evaluate_double(const std::map<std::string, double>& bindings) const {
    Bindings b;
    for (const auto& [k, v] : bindings) b[k] = SymValue::of(v);
    return evaluate(b).as_double();
}

SymExpr SymExpr::substitute(const std::map<std::string, SymExpr>& subs) const {
    switch (kind()) {
        case SymKind::Const:
        case SymKind::FloatConst:
            return *this;
        case SymKind::Symbol: {
            auto it = subs.find(node_->sym);
            return it == subs.end() ? *this : it->second;
        }
        case SymKind::Add: {
            std::vector<SymExpr> xs;
            for (const auto& a : args()) xs.push_back(a.substitute(subs));
            return add(std::move(xs));
        }
        case SymKind::Mul: {
            std::vector<SymExpr> xs;
            for (const auto& a : args()) xs.push_back(a.substitute(subs));
            return mul(std::move(xs));
        }
        case SymKind::Pow:
            return pow(args()[0].substitute(subs), args()[1].substitute(subs));
        case SymKind::Log2:
            return log2(args()[0].substitute(subs));
        case SymKind::Ln:
            return ln(args()[0].substitute(subs));
        case SymKind::Ceil:
            return ceil(args()[0].substitute(subs));
        case SymKind::Floor:
            return floor(args()[0].substitute(subs));
        case SymKind::Max:
            return max(args()[0].substitute(subs), args()[1].substitute(subs));
        case SymKind::Min:
            return min(args()[0].substitute(subs), args()[1].substitute(subs));
    }
    return *this;
}

void SymExpr::free_symbols(std::set<std::string>& out) const {
    if (kind() == SymKind::Symbol) {
        out.insert(node_->sym);
        return;
    }
    for (const auto& a : args()) a.free_symbols(out);
}

bool SymExpr::depends_on(const std::string& sym) const {
    if (kind() == SymKind::Symbol) return node_->sym == sym;
    for (const auto& a : args())
        if (a.depends_on(sym)) return true;
    return false;
}

// ---------------------------------------------------------------- rendering

namespace {
std::string render(const SymExpr& e, bool latex);

std::string render_args(const SymExpr& e, const char* sep, bool latex) {
    std::string out;
    for (size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += sep;
        const SymExpr& a = e.args()[i];
        bool paren = a.kind() == SymKind::Add ||
                     (e.kind() == SymKind::Mul && a.kind() == SymKind::Mul);
        if (paren)
            out += "(" + render(a, latex) + ")";
        else
            out += render(a, latex);
    }
    return out;
}

std::string render(const SymExpr& e, bool latex) {
    switch (e.kind()) {
        case SymKind::Const:
            return e.const_rational().str();
        case SymKind::FloatConst: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%g", e.float_value());
            return buf;
        }
        case SymKind::Symbol:
            return e.symbol_name();
        case SymKind::Add:
            return render_args(e, " + ", latex);
        case SymKind::Mul:
            return render_args(e, latex ? " \\cdot " : "*", latex);
        case SymKind::Pow: {
            const SymExpr& b = e.args()[0];
            std::string bs = render(b, latex);
            if (!(b.kind() == SymKind::Symbol || b.is_const())) bs = "(" + bs + ")";
            std::string es = render(e.args()[1], latex);
            if (latex) return bs + "^{" + es + "}";
            if (!(e.args()[1].kind() == SymKind::Symbol || e.args()[1].is_const()))
                es = "(" + es + ")";
            return bs + "^" + es;
        }
        case SymKind::Log2:
            return (latex ? std::string("\\log_2\\left(") : std::string("log2(")) +
                   render(e.args()[0], latex) + (latex ? "\\right)" : ")");
        case SymKind::Ln:
            return (latex ? std::string("\\ln\\left(") : std::string("ln(")) +
                   render(e.args()[0], latex) + (latex ? "\\right)" : ")");
        case SymKind::Ceil:
            return (latex ? std::string("\\lceil ") : std::string("ceil(")) +
                   render(e.args()[0], latex) + (latex ? "\\rceil" : ")");
        case SymKind::Floor:
            return (latex ? std::string("\\lfloor ") : std::string("floor(")) +
                   render(e.args()[0], latex) + (latex ? "\\rfloor" : ")");
        case SymKind::Max:
            return "max(" + render(e.args()[0], latex) + ", " + render(e.args()[1], latex) + ")";
        case SymKind::Min:
            return "min(" + render(e.args()[0], latex) + ", " + render(e.args()[1], latex) + ")";
    }
    return "?";
}
}  // namespace

std::string SymExpr::str() const { return render(*this, false); }
std::string SymExpr::latex() const { return render(*this, true); }

// ---------------------------------------------------------------- polynomials

namespace {

using CoeffMap = std::map<Rational, SymExpr>;

CoeffMap convolve(const CoeffMap& a, const CoeffMap& b) {
    CoeffMap out;
    for (const auto& [da, ca] : a)
        for (const auto& [db, cb] : b) {
            Rational d = da + db;
            auto it = out.find(d);
            SymExpr prod = ca * cb;
            if (it == out.end())
                out.emplace(d, prod);
            else
                it->second = it->second + prod;
        }
    return out;
}

CoeffMap decompose(const SymExpr& e, const std::string& sym, bool bounds_mode) {
    if (!e.depends_on(sym)) return {{Rational(0), e}};
    switch (e.kind()) {
        case SymKind::Symbol:
            return {{Rational(1), SymExpr::integer(1)}};
        case SymKind::Add: {
            CoeffMap out;
            for (const auto& a : e.args()) {
                for (auto& [d, c] : decompose(a, sym, bounds_mode)) {
                    auto it = out.find(d);
                    if (it == out.end())
                        out.emplace(d, c);
                    else
                        it->second = it->second + c;
                }
            }
            return out;
        }
        case SymKind::Mul: {
            CoeffMap acc{{Rational(0), SymExpr::integer(1)}};
            for (const auto& a : e.args()) acc = convolve(acc, decompose(a, sym, bounds_mode));
            return acc;
        }
        case SymKind::Pow: {
            const SymExpr& base = e.args()[0];
            const SymExpr& ex = e.args()[1];
            if (ex.depends_on(sym)) throw NotPolynomial("symbol in exponent: " + e.str());
            if (base.kind() == SymKind::Symbol && base.symbol_name() == sym) {
                if (ex.kind() != SymKind::Const) throw NotPolynomial("non-constant exponent");
                return {{ex.const_rational(), SymExpr::integer(1)}};
            }
            auto k = ex.as_integer();
            if (!k || *k < 0) throw NotPolynomial("non-integer power of composite: " + e.str());
            CoeffMap b = decompose(base, sym, bounds_mode);
            CoeffMap acc{{Rational(0), SymExpr::integer(1)}};
            for (long long i = 0; i < *k; ++i) acc = convolve(acc, b);
            return acc;
        }
        case SymKind::Ceil:
        case SymKind::Floor:
            if (bounds_mode) return decompose(e.args()[0], sym, bounds_mode);
            throw NotPolynomial("ceil/floor of the symbol in strict mode: " + e.str());
        default:
            throw NotPolynomial("non-polynomial operator over the symbol: " + e.str());
    }
}

}  // namespace

SymPoly SymPoly::from(const SymExpr& e, const std::string& sym, bool bounds_mode) {
    SymPoly p;
    for (auto& [d, c] : decompose(e, sym, bounds_mode)) {
        SymExpr cs = c.simplify();
        if (cs.is_zero()) continue;
        p.coeffs_.emplace(d, cs);
    }
    if (p.coeffs_.empty()) p.coeffs_.emplace(Rational(0), SymExpr::integer(0));
    return p;
}

std::pair<SymExpr, Rational> SymPoly::leading_term() const {
    auto it = coeffs_.rbegin();
    return {it->second, it->first};
}

std::pair<SymExpr, Rational> leading_term(const SymExpr& e, const std::string& sym,
                                          bool bounds_mode) {
    return SymPoly::from(e, sym, bounds_mode).leading_term();
}

}  // namespace qre
