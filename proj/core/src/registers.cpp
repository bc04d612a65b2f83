#include "qre/registers.hpp"

#include <set>

namespace qre {

std::string Register::key() const {
    std::string k = name + ":" + dtype.key();
    if (!shape.empty()) {
        k += "[";
        for (size_t i = 0; i < shape.size(); ++i) {
            if (i) k += ",";
            k += std::to_string(shape[i]);
        }
        k += "]";
    }
    switch (side) {
        case Side::Thru:
            break;
        case Side::LeftOnly:
            k += "<";
            break;
        case Side::RightOnly:
            k += ">";
            break;
    }
    return k;
}

void Signature::validate() const {
    std::set<std::string> seen;
    for (const auto& r : regs_)
        if (!seen.insert(r.name).second) throw Error("duplicate register name: " + r.name);
}

size_t Signature::index_of(const std::string& name) const {
    for (size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].name == name) return i;
    throw Error("no such register: " + name);
}

bool Signature::has(const std::string& name) const {
    for (const auto& r : regs_)
        if (r.name == name) return true;
    return false;
}

SymExpr Signature::total_left_qubits() const {
    std::vector<SymExpr> terms;
    for (const auto& r : regs_)
        if (r.on_left()) terms.push_back(r.total_qubits());
    return SymExpr::add(std::move(terms));
}

SymExpr Signature::total_right_qubits() const {
    std::vector<SymExpr> terms;
    for (const auto& r : regs_)
        if (r.on_right()) terms.push_back(r.total_qubits());
    return SymExpr::add(std::move(terms));
}

SymExpr Signature::total_qubits() const {
    return SymExpr::max(total_left_qubits(), total_right_qubits());
}

std::string Signature::key() const {
    std::string k = "(";
    for (size_t i = 0; i < regs_.size(); ++i) {
        if (i) k += " ";
        k += regs_[i].key();
    }
    return k + ")";
}

}  // namespace qre
