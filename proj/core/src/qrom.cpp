#include "qre/qrom.hpp"

#include <algorithm>
#include <functional>

#include "qre/classical.hpp"
#include "qre/tensor.hpp"

namespace qre {

namespace {

bool is_concrete(const SymExpr& e) {
    std::set<std::string> syms;
    e.free_symbols(syms);
    return syms.empty();
}

long long ceil_log2(long long n) {
    long long s = 0;
    while ((1LL << s) < n) ++s;
    return s;
}

}  // namespace

GateCounts unary_iteration_cost(const SymExpr& L) {
    if (is_concrete(L)) {
        auto v = L.as_integer();
        if (!v || *v < 2) throw BadL("iteration needs at least 2 branches");
    }
    return GateCounts::toffolis(L - SymExpr::integer(1));
}

GateCounts unary_iteration_cost_sparse(long long nonzero, long long selection_bits) {
    if (nonzero < 1 || selection_bits < 1 || selection_bits > 62)
        throw BadL("bad sparse iteration parameters");
    long long dense = (1LL << selection_bits) - 1;
    return GateCounts::toffolis(SymExpr::integer(std::min(dense, selection_bits * nonzero)));
}

// ---------------------------------------------------------------------------
// XorTuple

XorTuple::XorTuple(long long b, std::vector<long long> ks) : b_(b), ks_(std::move(ks)) {
    if (b < 1 || b > 62) throw BadSize("target width must be in [1, 62]");
    if (ks_.empty()) throw BadSize("at least one target register is required");
    for (long long k : ks_)
        if (k < 0 || (b < 63 && k >= (1LL << b)))
            throw RangeError("datum does not fit in the target width");
}

AttrMap XorTuple::attributes() const {
    std::string s;
    for (long long k : ks_) {
        if (!s.empty()) s += ",";
        s += std::to_string(k);
    }
    return {{"b", b_}, {"ks", s}};
}

Signature XorTuple::signature() const {
    std::vector<Register> regs;
    for (size_t j = 0; j < ks_.size(); ++j)
        regs.emplace_back("x" + std::to_string(j), QDType::uint(b_));
    return Signature{std::move(regs)};
}

std::optional<ClassicalMap> XorTuple::apply_classical(const ClassicalMap& ins) const {
    ClassicalMap out;
    for (size_t j = 0; j < ks_.size(); ++j) {
        std::string name = "x" + std::to_string(j);
        out.emplace(name, ClassicalValue::of(QDType::uint(b_), ins.at(name).scalar() ^ ks_[j]));
    }
    return out;
}

std::optional<CMat> XorTuple::leaf_tensor() const {
    if (static_cast<long long>(ks_.size()) * b_ > 14) return std::nullopt;
    return classical_tensor(*this);
}

std::optional<GateCounts> XorTuple::leaf_gate_counts() const {
    long long pop = 0;
    for (long long k : ks_)
        for (long long v = k; v; v &= v - 1) ++pop;
    return GateCounts::cliffords(SymExpr::integer(pop));
}

// ---------------------------------------------------------------------------
// ApplyLthBloq

ApplyLthBloq::ApplyLthBloq(std::vector<BloqPtr> bloqs) : bloqs_(std::move(bloqs)) {
    if (bloqs_.size() < 2)
        throw SignatureMismatch("a multiplexer needs at least two branches");
    Signature first = bloqs_[0]->signature();
    for (const auto& b : bloqs_)
        if (!(b->signature().key() == first.key()))
            throw SignatureMismatch("all branches must share one signature");
    for (const auto& r : first.registers()) {
        if (r.side != Side::Thru)
            throw SignatureMismatch("branch registers must be thru-only");
        if (r.name == "selection" || r.name == "control")
            throw SignatureMismatch("branch register name collides with the multiplexer's");
    }
    sel_bits_ = ceil_log2(static_cast<long long>(bloqs_.size()));
}

AttrMap ApplyLthBloq::attributes() const {
    std::string s;
    for (const auto& b : bloqs_) {
        if (!s.empty()) s += ";";
        s += b->key();
    }
    return {{"branches", s}};
}

Signature ApplyLthBloq::signature() const {
    std::vector<Register> regs{Register("selection", QDType::uint(sel_bits_))};
    Signature inner = bloqs_[0]->signature();
    for (const auto& r : inner.registers()) regs.push_back(r);
    return Signature{std::move(regs)};
}

std::optional<ClassicalMap> ApplyLthBloq::apply_classical(const ClassicalMap& ins) const {
    long long sel = ins.at("selection").scalar();
    if (sel < 0 || sel >= static_cast<long long>(bloqs_.size()))
        throw RangeError("selection index out of range");
    ClassicalMap rest = ins;
    rest.erase("selection");
    ClassicalMap out = call_classically(*bloqs_[static_cast<size_t>(sel)], rest);
    out.emplace("selection", ins.at("selection"));
    return out;
}

void ApplyLthBloq::build_decomposition(GraphBuilder& bb) const {
    const long long N = static_cast<long long>(bloqs_.size());
    Signature inner = bloqs_[0]->signature();

    std::vector<Port> sel = sel_bits_ > 1 ? bb.split(bb.input("selection"))
                                          : std::vector<Port>{bb.input("selection")};
    std::map<std::string, std::vector<Port>> targets;
    for (const auto& r : inner.registers()) targets[r.name] = bb.inputs(r.name);

    auto x = [&bb](Port& q) {
        q = bb.add(make_bloq<XGate>(), std::map<std::string, Port>{{"q", q}})[0];
    };
    auto cnot = [&bb](Port& c, Port& t) {
        auto o = bb.add(make_bloq<CNot>(), std::map<std::string, Port>{{"ctrl", c}, {"target", t}});
        c = o[0];
        t = o[1];
    };
    auto and_compute = [&bb](Port& c0, Port& c1) {
        auto o = bb.add(make_bloq<And>(),
                        std::map<std::string, std::vector<Port>>{{"ctrl", {c0, c1}}});
        c0 = o[0];
        c1 = o[1];
        return o[2];
    };
    auto and_uncompute = [&bb](Port& c0, Port& c1, Port a) {
        auto o = bb.add(make_bloq<AndAdjoint>(), std::map<std::string, std::vector<Port>>{
                                                     {"ctrl", {c0, c1}}, {"target", {a}}});
        c0 = o[0];
        c1 = o[1];
    };

    auto apply_payload = [&](const BloqPtr& v, Port* ctrl) {
        std::map<std::string, std::vector<Port>> ins;
        if (ctrl) ins["control"] = {*ctrl};
        for (const auto& r : inner.registers()) ins[r.name] = targets[r.name];
        auto out = bb.add(ctrl ? BloqPtr(make_bloq<Controlled>(v)) : v, ins);
        size_t pos = 0;
        if (ctrl) *ctrl = out[pos++];
        for (const auto& r : inner.registers())
            for (long long i = 0; i < r.num_elements(); ++i)
                targets[r.name][static_cast<size_t>(i)] = out[pos++];
    };

    auto uniform = [&](long long lo, long long hi) {
        const std::string k = bloqs_[static_cast<size_t>(lo)]->key();
        for (long long i = lo + 1; i < hi; ++i)
            if (bloqs_[static_cast<size_t>(i)]->key() != k) return false;
        return true;
    };

    // Walk the selection-bit tree: `go` threads a control wire that is live
    // exactly when the selection lies in [lo, hi).
    std::function<Port(long long, long long, long long, Port)> go =
        [&](long long lo, long long hi, long long depth, Port ctrl) -> Port {
        long long n_eff = std::min(hi, N);
        if (uniform(lo, n_eff)) {
            apply_payload(bloqs_[static_cast<size_t>(lo)], &ctrl);
            return ctrl;
        }
        long long mid = (lo + hi) / 2;
        if (mid >= N) return go(lo, mid, depth + 1, ctrl);
        Port& bit = sel[static_cast<size_t>(depth)];
        x(bit);
        Port a = and_compute(ctrl, bit);
        x(bit);
        a = go(lo, mid, depth + 1, a);          // a was ctrl AND NOT bit
        cnot(ctrl, a);                          // now ctrl AND bit
        a = go(mid, hi, depth + 1, a);
        and_uncompute(ctrl, bit, a);
        return ctrl;
    };

    std::function<void(long long, long long, long long)> top =
        [&](long long lo, long long hi, long long depth) {
        long long n_eff = std::min(hi, N);
        if (uniform(lo, n_eff)) {
            apply_payload(bloqs_[static_cast<size_t>(lo)], nullptr);
            return;
        }
        long long mid = (lo + hi) / 2;
        if (mid >= N) {
            top(lo, mid, depth + 1);
            return;
        }
        Port& bit = sel[static_cast<size_t>(depth)];
        x(bit);
        bit = go(lo, mid, depth + 1, bit);
        x(bit);
        bit = go(mid, hi, depth + 1, bit);
    };

    top(0, 1LL << sel_bits_, 0);

    bb.set_output("selection",
                  sel_bits_ > 1 ? bb.join(sel, QDType::uint(sel_bits_)) : sel[0]);
    for (const auto& r : inner.registers())
        for (long long i = 0; i < r.num_elements(); ++i)
            bb.set_output(r.name, targets[r.name][static_cast<size_t>(i)],
                          static_cast<int>(i));
}

BloqPtr apply_lth_bloq(std::vector<BloqPtr> bloqs) {
    if (bloqs.empty()) throw SignatureMismatch("empty branch list");
    if (bloqs.size() == 1) return bloqs[0];
    return make_bloq<ApplyLthBloq>(std::move(bloqs));
}

// ---------------------------------------------------------------------------
// QROM cost formulas

QROMCostReport qrom_cost(QROMVariant variant, const SymExpr& N, const SymExpr& b,
                         const SymExpr& k) {
    if (is_concrete(N)) {
        auto n = N.as_integer();
        if (!n || *n < 2) throw BadL("a lookup table needs at least 2 entries");
        if (is_concrete(k)) {
            auto kv = k.as_integer();
            if (!kv || *kv < 0 || *kv > ceil_log2(*n))
                throw BadBlockExponent("block exponent outside [0, ceil(log2 N)]");
        }
    }
    const SymExpr one = SymExpr::integer(1);
    const SymExpr two = SymExpr::integer(2);
    SymExpr K = SymExpr::pow(two, k);
    SymExpr batches = SymExpr::ceil(N / K);
    QROMCostReport r;
    switch (variant) {
        case QROMVariant::Plain:
            r.counts = GateCounts::toffolis(N - two);
            r.clean_ancilla = SymExpr::ceil(SymExpr::log2(N));
            r.cliffords_leading = N * b;
            break;
        case QROMVariant::SelectSwap:
            r.counts = GateCounts::toffolis(two * batches +
                                            SymExpr::integer(4) * b * (K - one));
            r.dirty_ancilla = K * b;
            r.clean_ancilla = SymExpr::ceil(SymExpr::log2(N / K));
            r.cliffords_leading = two * N * b;
            break;
        case QROMVariant::QROAMClean:
            r.counts = GateCounts::toffolis(batches + b * (K - one));
            r.clean_ancilla = (K - one) * b + SymExpr::ceil(SymExpr::log2(N / K));
            r.cliffords_leading = N * b;
            break;
        case QROMVariant::QROAMCleanAdjoint:
            r.counts = GateCounts::toffolis(batches + (K - one));
            r.clean_ancilla = K + SymExpr::ceil(SymExpr::log2(N / K));
            r.cliffords_leading = N;
            break;
    }
    return r;
}

QROMCostReport qrom_cost(const QROMSpec& spec) {
    if (spec.datasets.empty()) throw BadL("at least one dataset is required");
    long long n = static_cast<long long>(spec.datasets[0].size());
    for (const auto& d : spec.datasets) {
        if (static_cast<long long>(d.size()) != n)
            throw OracleShapeMismatch("datasets must share one length");
        for (long long v : d)
            if (v < 0 || (spec.target_bitsize < 63 && v >= (1LL << spec.target_bitsize)))
                throw RangeError("datum does not fit in the target width");
    }
    return qrom_cost(spec.variant, SymExpr::integer(n), SymExpr::integer(spec.target_bitsize),
                     spec.block_exponent);
}

long long optimal_block_exponent(long long N, long long b, QROMVariant variant) {
    if (N < 2) throw BadL("a lookup table needs at least 2 entries");
    long long best_k = 0;
    double best = -1.0;
    for (long long k = 0; k <= ceil_log2(N); ++k) {
        QROMCostReport r = qrom_cost(variant, SymExpr::integer(N), SymExpr::integer(b),
                                     SymExpr::integer(k));
        double tof = r.counts.toffoli.evaluate_double({});
        if (best < 0.0 || tof < best) {
            best = tof;
            best_k = k;
        }
    }
    return best_k;
}

// ---------------------------------------------------------------------------
// QROM bloq

QROM::QROM(std::vector<std::vector<long long>> datasets, long long target_bitsize,
           QROMVariant variant, long long block_exponent)
    : datasets_(std::move(datasets)), b_(target_bitsize), variant_(variant),
      k_(block_exponent) {
    if (datasets_.empty()) throw BadL("at least one dataset is required");
    long long n = static_cast<long long>(datasets_[0].size());
    if (n < 2) throw BadL("a lookup table needs at least 2 entries");
    for (const auto& d : datasets_) {
        if (static_cast<long long>(d.size()) != n)
            throw OracleShapeMismatch("datasets must share one length");
        for (long long v : d)
            if (v < 0 || (b_ < 63 && v >= (1LL << b_)))
                throw RangeError("datum does not fit in the target width");
    }
    sel_bits_ = ceil_log2(n);
    if (k_ < 0 || k_ > sel_bits_)
        throw BadBlockExponent("block exponent outside [0, ceil(log2 N)]");
}

std::string QROM::name() const {
    switch (variant_) {
        case QROMVariant::Plain: return "QROM";
        case QROMVariant::SelectSwap: return "SelectSwapQROM";
        case QROMVariant::QROAMClean: return "QROAMClean";
        case QROMVariant::QROAMCleanAdjoint: return "QROAMCleanAdjoint";
    }
    return "QROM";
}

AttrMap QROM::attributes() const {
    std::string data;
    for (const auto& d : datasets_) {
        if (!data.empty()) data += ";";
        std::string s;
        for (long long v : d) {
            if (!s.empty()) s += ",";
            s += std::to_string(v);
        }
        data += s;
    }
    return {{"data", data}, {"b", b_}, {"k", k_}};
}

Signature QROM::signature() const {
    std::vector<Register> regs{Register("selection", QDType::uint(sel_bits_))};
    for (size_t j = 0; j < datasets_.size(); ++j)
        regs.emplace_back("x" + std::to_string(j), QDType::uint(b_));
    return Signature{std::move(regs)};
}

std::optional<ClassicalMap> QROM::apply_classical(const ClassicalMap& ins) const {
    long long sel = ins.at("selection").scalar();
    if (sel < 0 || sel >= entries()) throw RangeError("selection index out of range");
    ClassicalMap out{{"selection", ins.at("selection")}};
    for (size_t j = 0; j < datasets_.size(); ++j) {
        std::string name = "x" + std::to_string(j);
        out.emplace(name, ClassicalValue::of(QDType::uint(b_),
                                             ins.at(name).scalar() ^
                                                 datasets_[j][static_cast<size_t>(sel)]));
    }
    return out;
}

void QROM::build_decomposition(GraphBuilder& bb) const {
    std::vector<BloqPtr> tuples;
    for (long long i = 0; i < entries(); ++i) {
        std::vector<long long> ks;
        for (const auto& d : datasets_) ks.push_back(d[static_cast<size_t>(i)]);
        tuples.push_back(make_bloq<XorTuple>(b_, std::move(ks)));
    }
    std::map<std::string, std::vector<Port>> ins;
    ins["selection"] = {bb.input("selection")};
    for (size_t j = 0; j < datasets_.size(); ++j) {
        std::string name = "x" + std::to_string(j);
        ins[name] = {bb.input(name)};
    }
    auto out = bb.add(make_bloq<ApplyLthBloq>(std::move(tuples)), ins);
    bb.set_output("selection", out[0]);
    for (size_t j = 0; j < datasets_.size(); ++j)
        bb.set_output("x" + std::to_string(j), out[j + 1]);
}

std::optional<GateCounts> QROM::leaf_gate_counts() const {
    if (variant_ == QROMVariant::Plain) return std::nullopt;
    return qrom_cost(variant_, SymExpr::integer(entries()), SymExpr::integer(b_),
                     SymExpr::integer(k_))
        .counts;
}

}  // namespace qre
