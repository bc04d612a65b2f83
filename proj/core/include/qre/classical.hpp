#pragma once

#include <functional>
#include <random>

#include "qre/graph.hpp"

namespace qre {

/// Run a bloq on classical register values. Uses the bloq's direct action
/// when defined; otherwise propagates values wire by wire through its full
/// decomposition.
ClassicalMap call_classically(const Bloq& b, const ClassicalMap& ins);
inline ClassicalMap call_classically(const BloqPtr& b, const ClassicalMap& ins) {
    return call_classically(*b, ins);
}

/// Uniform random assignment to a bloq's left registers.
ClassicalMap sample_inputs(const Bloq& b, std::mt19937& rng);

struct FuzzMismatch {
    unsigned long long seed;
    std::string input;
    std::string expected;
    std::string got;
};

struct FuzzReport {
    long long trials = 0;
    std::vector<FuzzMismatch> mismatches;
    bool pass() const { return mismatches.empty(); }
    std::string str() const;
};

using ClassicalFn = std::function<ClassicalMap(const ClassicalMap&)>;
using Sampler = std::function<ClassicalMap(std::mt19937&)>;

/// Compare a bloq's classical action against a reference function on random
/// inputs. Each trial derives its own seed so any mismatch reproduces alone.
FuzzReport fuzz_against(const Bloq& b, const ClassicalFn& reference, long long trials,
                        unsigned long long seed, const Sampler& sampler = nullptr);

}  // namespace qre
