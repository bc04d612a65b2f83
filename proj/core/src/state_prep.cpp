#include "qre/state_prep.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace qre {

namespace {

long long ceil_log2(long long n) {
    long long s = 0;
    while ((1LL << s) < n) ++s;
    return s;
}

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw BadEpsilon("precision must lie in (0, 1)");
}

/// Largest-remainder quantization of weights onto T tickets, ties by index.
std::vector<long long> quantize(const std::vector<double>& w, long long tickets) {
    double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > 0.0)) throw BadParams("weights must have a positive sum");
    size_t n = w.size();
    std::vector<long long> s(n);
    std::vector<std::pair<double, size_t>> rema(n);
    long long used = 0;
    for (size_t i = 0; i < n; ++i) {
        if (w[i] < 0.0) throw BadParams("weights must be non-negative");
        double exact = w[i] / total * static_cast<double>(tickets);
        s[i] = static_cast<long long>(std::floor(exact));
        rema[i] = {exact - std::floor(exact), i};
        used += s[i];
    }
    std::stable_sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;  // largest remainder first; stable keeps index order
    });
    for (long long r = 0; r < tickets - used; ++r) ++s[rema[static_cast<size_t>(r)].second];
    return s;
}

}  // namespace

AliasTable build_alias_table(const std::vector<double>& weights, long long mu) {
    if (weights.size() < 2) throw BadSize("alias sampling needs at least 2 weights");
    if (mu < 1 || mu > 30) throw BadSize("threshold precision must be in [1, 30]");
    long long n = static_cast<long long>(weights.size());
    long long cap = 1LL << mu;
    std::vector<long long> s = quantize(weights, n * cap);

    AliasTable t;
    t.mu = mu;
    t.keep.assign(static_cast<size_t>(n), 0);
    t.alt.resize(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) t.alt[static_cast<size_t>(i)] = i;

    std::deque<long long> small, large;
    for (long long i = 0; i < n; ++i) {
        if (s[static_cast<size_t>(i)] < cap)
            small.push_back(i);
        else if (s[static_cast<size_t>(i)] > cap)
            large.push_back(i);
    }
    while (!small.empty() && !large.empty()) {
        long long l = small.front();
        small.pop_front();
        long long g = large.front();
        t.keep[static_cast<size_t>(l)] = s[static_cast<size_t>(l)];
        t.alt[static_cast<size_t>(l)] = g;
        s[static_cast<size_t>(g)] -= cap - s[static_cast<size_t>(l)];
        if (s[static_cast<size_t>(g)] <= cap) {
            large.pop_front();
            // exactly full columns stay at keep = 0, alt = self
            if (s[static_cast<size_t>(g)] < cap) small.push_back(g);
        }
    }
    // columns still in `small` ended exactly full after donations
    return t;
}

std::vector<double> alias_sampled_distribution(const AliasTable& t) {
    size_t n = t.keep.size();
    long long cap = 1LL << t.mu;
    std::vector<double> p(n, 0.0);
    double norm = static_cast<double>(n) * static_cast<double>(cap);
    for (size_t i = 0; i < n; ++i) {
        long long keep = t.keep[i];
        long long alt = t.alt[i];
        if (keep == 0 && alt == static_cast<long long>(i)) {
            p[i] += static_cast<double>(cap) / norm;  // full column
        } else {
            p[i] += static_cast<double>(keep) / norm;
            p[static_cast<size_t>(alt)] += static_cast<double>(cap - keep) / norm;
        }
    }
    return p;
}

namespace {

SymExpr qroam_toffoli(long long entries, long long bits) {
    if (entries < 2) return SymExpr::integer(0);
    long long k = optimal_block_exponent(entries, bits, QROMVariant::QROAMClean);
    return qrom_cost(QROMVariant::QROAMClean, SymExpr::integer(entries),
                     SymExpr::integer(bits), SymExpr::integer(k))
        .counts.toffoli;
}

GateCounts uniform_cost(long long n, double eps) {
    long long s = ceil_log2(n);
    if ((1LL << s) == n) return GateCounts::cliffords(SymExpr::integer(std::max(s, 1LL)));
    // one amplitude-amplification round: compare against N (compute, reflect,
    // uncompute) plus the rotation pair steering the amplified amplitude
    GateCounts g = GateCounts::toffolis(SymExpr::integer(3 * std::max(s - 1, 1LL)));
    g += GateCounts::rotation(SymExpr::real(eps), SymExpr::integer(2));
    g += GateCounts::cliffords(SymExpr::integer(2 * s));
    return g;
}

GateCounts alias_sampling_cost(long long n, long long mu, double eps) {
    long long s = ceil_log2(n);
    GateCounts g = uniform_cost(n, eps);
    g += GateCounts::toffolis(qroam_toffoli(n, s + mu));   // keep/alt lookup
    g += GateCounts::toffolis(SymExpr::integer(mu));       // sigma < keep comparison
    g += GateCounts::toffolis(SymExpr::integer(s));        // conditional swap
    return g;
}

}  // namespace

GateCounts state_prep_cost(StatePrepKind kind, long long N, double epsilon, long long sparsity) {
    if (N < 2) throw BadSize("state preparation needs at least 2 amplitudes");
    check_eps(epsilon);
    if (kind == StatePrepKind::SparseViaRotations || kind == StatePrepKind::SparseAlias) {
        if (sparsity < 2 || sparsity > N) throw BadParams("sparsity must lie in [2, N]");
        N = sparsity;
        kind = kind == StatePrepKind::SparseViaRotations ? StatePrepKind::ViaRotations
                                                         : StatePrepKind::AliasSampling;
    }
    long long s = ceil_log2(N);
    switch (kind) {
        case StatePrepKind::Uniform:
            return uniform_cost(N, epsilon);
        case StatePrepKind::ViaRotations: {
            long long n = std::max(s, 1LL);
            long long b = static_cast<long long>(
                std::ceil(std::log2(static_cast<double>(n) / epsilon)));
            GateCounts g;
            for (long long j = 1; j < n; ++j)
                g += GateCounts::toffolis(qroam_toffoli(1LL << j, b));
            // per round: add the loaded b-bit angle into the shared phase
            // register, then one kickback rotation onto the prepared qubit
            g += GateCounts::toffolis(SymExpr::integer(n * std::max(b - 2, 1LL)));
            g += GateCounts::rotation(SymExpr::real(epsilon / static_cast<double>(n)),
                                      SymExpr::integer(n));
            return g;
        }
        case StatePrepKind::AliasSampling: {
            long long mu =
                static_cast<long long>(std::ceil(std::log2(1.0 / epsilon)));
            return alias_sampling_cost(N, std::max(mu, 1LL), epsilon);
        }
        default:
            throw BadParams("unreachable state preparation kind");
    }
}

// ---------------------------------------------------------------------------
// StatePreparationAliasSampling

StatePreparationAliasSampling::StatePreparationAliasSampling(std::vector<double> weights,
                                                             long long mu)
    : weights_(std::move(weights)), mu_(mu) {
    table_ = build_alias_table(weights_, mu_);
    sel_bits_ = ceil_log2(static_cast<long long>(weights_.size()));
}

AttrMap StatePreparationAliasSampling::attributes() const {
    std::string w;
    for (double v : weights_) {
        if (!w.empty()) w += ",";
        w += std::to_string(v);
    }
    return {{"weights", w}, {"mu", mu_}};
}

Signature StatePreparationAliasSampling::signature() const {
    return Signature{Register("selection", QDType::uint(sel_bits_), {}, Side::RightOnly),
                     Register("junk_sel", QDType::uint(sel_bits_), {}, Side::RightOnly),
                     Register("keep", QDType::uint(mu_), {}, Side::RightOnly),
                     Register("sigma", QDType::uint(mu_), {}, Side::RightOnly),
                     Register("less_than", QDType::bit(), {}, Side::RightOnly)};
}

std::optional<CMat> StatePreparationAliasSampling::leaf_tensor() const {
    long long qubits = 2 * sel_bits_ + 2 * mu_ + 1;
    if (qubits > 20) return std::nullopt;
    long long n = static_cast<long long>(weights_.size());
    long long cap = 1LL << mu_;
    CMat m = CMat::Zero(1LL << qubits, 1);
    double amp = 1.0 / std::sqrt(static_cast<double>(n) * static_cast<double>(cap));
    for (long long i = 0; i < n; ++i) {
        long long keep = table_.keep[static_cast<size_t>(i)];
        long long alt = table_.alt[static_cast<size_t>(i)];
        bool full = keep == 0 && alt == i;
        for (long long sigma = 0; sigma < cap; ++sigma) {
            long long flag = (full || sigma < keep) ? 1 : 0;
            long long sel = flag ? i : alt;
            long long junk = flag ? alt : i;
            long long row = sel;
            row = (row << sel_bits_) | junk;
            row = (row << mu_) | keep;
            row = (row << mu_) | sigma;
            row = (row << 1) | flag;
            m(row, 0) = amp;
        }
    }
    return m;
}

std::optional<GateCounts> StatePreparationAliasSampling::leaf_gate_counts() const {
    double eps = std::pow(2.0, -static_cast<double>(mu_));
    return alias_sampling_cost(static_cast<long long>(weights_.size()), mu_, eps);
}

// ---------------------------------------------------------------------------
// PrepareUniformSuperposition

PrepareUniformSuperposition::PrepareUniformSuperposition(long long n, double epsilon)
    : n_(n), eps_(epsilon) {
    if (n < 2) throw BadSize("a superposition needs at least 2 states");
    check_eps(epsilon);
}

Signature PrepareUniformSuperposition::signature() const {
    return Signature{
        Register("target", QDType::uint(ceil_log2(n_)), {}, Side::RightOnly)};
}

std::optional<CMat> PrepareUniformSuperposition::leaf_tensor() const {
    long long s = ceil_log2(n_);
    if (s > 16) return std::nullopt;
    CMat m = CMat::Zero(1LL << s, 1);
    double amp = 1.0 / std::sqrt(static_cast<double>(n_));
    for (long long k = 0; k < n_; ++k) m(k, 0) = amp;
    return m;
}

std::optional<GateCounts> PrepareUniformSuperposition::leaf_gate_counts() const {
    return state_prep_cost(StatePrepKind::Uniform, n_, eps_);
}

}  // namespace qre
