#include "qre/bloq.hpp"

#include "qre/graph.hpp"

namespace qre {

std::string attr_str(const AttrValue& v) {
    if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
    if (const auto* r = std::get_if<Rational>(&v)) return r->str();
    if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    return std::get<SymExpr>(v).key();
}

void Bloq::build_decomposition(GraphBuilder&) const {
    throw MissingDecomposition(name() + " has no decomposition");
}

std::string Bloq::key() const {
    std::string k = name();
    AttrMap attrs = attributes();
    if (!attrs.empty()) {
        k += "{";
        bool first = true;
        for (const auto& [a, v] : attrs) {
            if (!first) k += ", ";
            first = false;
            k += a + "=" + attr_str(v);
        }
        k += "}";
    }
    return k + signature().key();
}

}  // namespace qre
