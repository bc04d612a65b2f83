#include "qre/classical.hpp"

namespace qre {

namespace {

void check_outputs(const Bloq& b, const ClassicalMap& outs) {
    Signature sig = b.signature();
    for (const auto& r : sig.registers()) {
        if (!r.on_right()) continue;
        auto it = outs.find(r.name);
        if (it == outs.end())
            throw NotClassical(b.name() + ": classical action omitted output " + r.name);
        if (static_cast<long long>(it->second.size()) != r.num_elements())
            throw NotClassical(b.name() + ": classical output " + r.name +
                               " has the wrong element count");
    }
}

ClassicalMap propagate(const Bloq& b, const ClassicalMap& ins) {
    ComputeGraph g = decompose(b);
    // value held by each source port
    std::map<Port, long long> vals;
    const Signature& sig = g.signature();
    for (size_t ri = 0; ri < sig.size(); ++ri) {
        const Register& r = sig[ri];
        if (!r.on_left()) continue;
        auto it = ins.find(r.name);
        if (it == ins.end()) throw NotClassical(b.name() + ": missing input " + r.name);
        for (long long i = 0; i < r.num_elements(); ++i)
            vals[Port{Port::kLeft, static_cast<int>(ri), static_cast<int>(i)}] = it->second[i];
    }
    for (int ni : g.topo_order()) {
        const BloqPtr& inst = g.nodes()[static_cast<size_t>(ni)];
        Signature isig = inst->signature();
        ClassicalMap iins;
        for (size_t ri = 0; ri < isig.size(); ++ri) {
            const Register& r = isig[ri];
            if (!r.on_left()) continue;
            std::vector<long long> vs;
            for (long long i = 0; i < r.num_elements(); ++i) {
                const Wire& w = g.wire_into(
                    Port{ni, static_cast<int>(ri), static_cast<int>(i)});
                vs.push_back(vals.at(w.src));
            }
            iins.emplace(r.name, ClassicalValue::of_array(r.dtype, std::move(vs)));
        }
        ClassicalMap iouts = call_classically(*inst, iins);
        for (size_t ri = 0; ri < isig.size(); ++ri) {
            const Register& r = isig[ri];
            if (!r.on_right()) continue;
            const ClassicalValue& v = iouts.at(r.name);
            for (long long i = 0; i < r.num_elements(); ++i)
                vals[Port{ni, static_cast<int>(ri), static_cast<int>(i)}] = v[i];
        }
    }
    ClassicalMap outs;
    for (size_t ri = 0; ri < sig.size(); ++ri) {
        const Register& r = sig[ri];
        if (!r.on_right()) continue;
        std::vector<long long> vs;
        for (long long i = 0; i < r.num_elements(); ++i) {
            const Wire& w = g.wire_into(
                Port{Port::kRight, static_cast<int>(ri), static_cast<int>(i)});
            vs.push_back(vals.at(w.src));
        }
        outs.emplace(r.name, ClassicalValue::of_array(r.dtype, std::move(vs)));
    }
    return outs;
}

}  // namespace

ClassicalMap call_classically(const Bloq& b, const ClassicalMap& ins) {
    if (auto direct = b.apply_classical(ins)) {
        check_outputs(b, *direct);
        return *direct;
    }
    if (b.has_decomposition()) {
        ClassicalMap outs = propagate(b, ins);
        check_outputs(b, outs);
        return outs;
    }
    throw NotClassical(b.name() + " has no classical action");
}

ClassicalMap sample_inputs(const Bloq& b, std::mt19937& rng) {
    ClassicalMap ins;
    Signature sig = b.signature();
    for (const auto& r : sig.registers()) {
        if (!r.on_left()) continue;
        auto nb = r.dtype.concrete_bits();
        if (!nb) throw NotClassical("cannot sample a symbolic-width register");
        long long n = std::min<long long>(*nb, 62);
        std::vector<long long> vs;
        for (long long i = 0; i < r.num_elements(); ++i) {
            unsigned long long raw =
                std::uniform_int_distribution<unsigned long long>(0, (1ULL << n) - 1)(rng);
            long long v;
            if (r.dtype.is_signed())
                v = static_cast<long long>(raw) - (1LL << (n - 1));
            else
                v = static_cast<long long>(raw);
            vs.push_back(v);
        }
        ins.emplace(r.name, ClassicalValue::of_array(r.dtype, std::move(vs)));
    }
    return ins;
}

std::string FuzzReport::str() const {
    std::string s = "trials: " + std::to_string(trials) +
                    ", mismatches: " + std::to_string(mismatches.size());
    for (const auto& m : mismatches)
        s += "\n  seed " + std::to_string(m.seed) + ": input " + m.input + " expected " +
             m.expected + " got " + m.got;
    return s;
}

namespace {
std::string map_str(const ClassicalMap& m) {
    std::string s = "{";
    bool first = true;
    for (const auto& [k, v] : m) {
        if (!first) s += ", ";
        first = false;
        s += k + "=" + v.str();
    }
    return s + "}";
}
}  // namespace

FuzzReport fuzz_against(const Bloq& b, const ClassicalFn& reference, long long trials,
                        unsigned long long seed, const Sampler& sampler) {
    FuzzReport rep;
    for (long long t = 0; t < trials; ++t) {
        unsigned long long trial_seed = seed + static_cast<unsigned long long>(t);
        std::mt19937 rng(static_cast<unsigned int>(trial_seed));
        ClassicalMap ins = sampler ? sampler(rng) : sample_inputs(b, rng);
        ClassicalMap expected = reference(ins);
        ClassicalMap got = call_classically(b, ins);
        ++rep.trials;
        if (!(expected == got))
            rep.mismatches.push_back(
                FuzzMismatch{trial_seed, map_str(ins), map_str(expected), map_str(got)});
    }
    return rep;
}

}  // namespace qre
