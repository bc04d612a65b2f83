#include "qre/gate_counts.hpp"

namespace qre {

SymExpr rotation_t_cost(const SymExpr& epsilon) {
    return SymExpr::ceil(SymExpr::real(1.149) * SymExpr::log2(SymExpr::integer(1) / epsilon) +
                         SymExpr::real(9.2));
}

GateCounts GateCounts::t_gates(SymExpr n) {
    GateCounts g;
    g.t = std::move(n);
    return g;
}
GateCounts GateCounts::toffolis(SymExpr n) {
    GateCounts g;
    g.toffoli = std::move(n);
    return g;
}
GateCounts GateCounts::cliffords(SymExpr n) {
    GateCounts g;
    g.clifford = std::move(n);
    return g;
}
GateCounts GateCounts::measurements(SymExpr n) {
    GateCounts g;
    g.measurement = std::move(n);
    return g;
}
GateCounts GateCounts::rotation(SymExpr epsilon, SymExpr count) {
    GateCounts g;
    std::string k = epsilon.key();
    g.rotations.emplace(std::move(k), std::make_pair(std::move(epsilon), std::move(count)));
    return g;
}

GateCounts& GateCounts::operator+=(const GateCounts& o) {
    t = t + o.t;
    toffoli = toffoli + o.toffoli;
    clifford = clifford + o.clifford;
    measurement = measurement + o.measurement;
    for (const auto& [k, ec] : o.rotations) {
        auto it = rotations.find(k);
        if (it == rotations.end())
            rotations.emplace(k, ec);
        else
            it->second.second = it->second.second + ec.second;
    }
    return *this;
}

GateCounts GateCounts::scaled(const SymExpr& m) const {
    GateCounts g;
    g.t = t * m;
    g.toffoli = toffoli * m;
    g.clifford = clifford * m;
    g.measurement = measurement * m;
    for (const auto& [k, ec] : rotations)
        g.rotations.emplace(k, std::make_pair(ec.first, ec.second * m));
    return g;
}

GateCounts GateCounts::aggregate(const AggregationPolicy& policy) const {
    GateCounts g;
    g.clifford = clifford;
    g.measurement = measurement;
    g.t = t;
    for (const auto& [k, ec] : rotations) g.t = g.t + ec.second * policy.rotation_to_t(ec.first);
    if (policy.toffoli_to_t == AggregationPolicy::ToffoliToT::KeepToffoli)
        g.toffoli = toffoli;
    else
        g.t = g.t + SymExpr::integer(policy.toffoli_t_factor()) * toffoli;
    return g;
}

SymExpr GateCounts::total_t_with(const AggregationPolicy& policy) const {
    return aggregate(policy).t;
}

SymExpr GateCounts::total_rotations() const {
    std::vector<SymExpr> terms;
    for (const auto& [k, ec] : rotations) terms.push_back(ec.second);
    return SymExpr::add(std::move(terms));
}

bool GateCounts::is_zero() const {
    if (!(t.is_zero() && toffoli.is_zero() && clifford.is_zero() && measurement.is_zero()))
        return false;
    for (const auto& [k, ec] : rotations)
        if (!ec.second.is_zero()) return false;
    return true;
}

std::string GateCounts::str() const {
    std::string s;
    auto app = [&s](const char* label, const SymExpr& e) {
        if (e.is_zero()) return;
        if (!s.empty()) s += ", ";
        s += label;
        s += ": ";
        s += e.str();
    };
    app("T", t);
    app("Toffoli", toffoli);
    app("Clifford", clifford);
    app("Measure", measurement);
    for (const auto& [k, ec] : rotations) {
        if (ec.second.is_zero()) continue;
        if (!s.empty()) s += ", ";
        s += "Rot(eps=" + ec.first.str() + "): " + ec.second.str();
    }
    return s.empty() ? "0" : s;
}

}  // namespace qre
