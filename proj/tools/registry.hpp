#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qre/bloq.hpp"

namespace qre::cli {

/// key=value parameters collected from the command line. Reads are tracked
/// so that unrecognized keys can be reported as usage errors.
class Params {
public:
    explicit Params(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    double get_real(const std::string& key) const;
    double get_real(const std::string& key, double fallback) const;
    std::string get_str(const std::string& key, const std::string& fallback) const;
    /// Comma-separated list of reals, e.g. weights=0.5,0.25,0.25.
    std::vector<double> get_reals(const std::string& key,
                                  const std::vector<double>& fallback) const;
    /// Integer literal or free symbol name.
    SymExpr get_expr(const std::string& key, const SymExpr& fallback) const;

    /// Throws BadParam if any supplied key was never read.
    void finish() const;

private:
    const std::string& raw(const std::string& key) const;
    std::map<std::string, std::string> kv_;
    mutable std::set<std::string> used_;
};

struct RegistryEntry {
    std::string params;   // e.g. "n, k" — accepted keys, for --help output
    std::string summary;  // one-line description
    std::function<BloqPtr(const Params&)> make;
};

/// Name -> factory table, in deterministic (alphabetical) order.
const std::vector<std::pair<std::string, RegistryEntry>>& bloq_registry();

/// Builds the named bloq; throws UnknownBloq / BadParam.
BloqPtr make_from_registry(const std::string& name,
                           std::map<std::string, std::string> kv);

}  // namespace qre::cli
