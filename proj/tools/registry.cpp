#include "registry.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "qre/block_encoding.hpp"
#include "qre/bookkeeping.hpp"
#include "qre/crypto.hpp"
#include "qre/errors.hpp"
#include "qre/gates.hpp"
#include "qre/qpe.hpp"
#include "qre/qrom.hpp"
#include "qre/rotations.hpp"
#include "qre/state_prep.hpp"
#include "qre/trotter.hpp"

namespace qre::cli {

const std::string& Params::raw(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw BadParam("missing required parameter: " + key);
    used_.insert(key);
    return it->second;
}

namespace {

long long parse_int(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw BadParam("parameter " + key + " expects an integer, got '" + s + "'");
    }
}

double parse_real(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw BadParam("parameter " + key + " expects a number, got '" + s + "'");
    }
}

}  // namespace

long long Params::get_int(const std::string& key) const { return parse_int(key, raw(key)); }

long long Params::get_int(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

double Params::get_real(const std::string& key) const { return parse_real(key, raw(key)); }

double Params::get_real(const std::string& key, double fallback) const {
    return has(key) ? get_real(key) : fallback;
}

std::string Params::get_str(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
}

std::vector<double> Params::get_reals(const std::string& key,
                                      const std::vector<double>& fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    std::stringstream ss(raw(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(key, item));
    if (out.empty()) throw BadParam("parameter " + key + " expects a comma-separated list");
    return out;
}

SymExpr Params::get_expr(const std::string& key, const SymExpr& fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = raw(key);
    {
        size_t pos = 0;
        try {
            long long v = std::stoll(s, &pos);
            if (pos == s.size()) return SymExpr::integer(v);
        } catch (const std::exception&) {
        }
    }
    {
        size_t pos = 0;
        try {
            double v = std::stod(s, &pos);
            if (pos == s.size()) return SymExpr::real(v);
        } catch (const std::exception&) {
        }
    }
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_'))
        throw BadParam("parameter " + key + " expects a number or symbol name, got '" + s + "'");
    return SymExpr::symbol(s);
}

void Params::finish() const {
    for (const auto& [k, v] : kv_)
        if (!used_.count(k)) throw BadParam("unknown parameter: " + k);
}

namespace {

QROMVariant parse_variant(const std::string& s) {
    if (s == "plain") return QROMVariant::Plain;
    if (s == "selectswap") return QROMVariant::SelectSwap;
    if (s == "qroamclean") return QROMVariant::QROAMClean;
    if (s == "qroamcleanadj") return QROMVariant::QROAMCleanAdjoint;
    throw BadParam("unknown qrom variant '" + s +
                   "' (expected plain|selectswap|qroamclean|qroamcleanadj)");
}

WindowSpec::Kind parse_window_kind(const std::string& s) {
    if (s == "rect" || s == "rectangular") return WindowSpec::Kind::Rectangular;
    if (s == "sine") return WindowSpec::Kind::Sine;
    if (s == "kaiser") return WindowSpec::Kind::Kaiser;
    throw BadParam("unknown window kind '" + s + "' (expected rect|sine|kaiser)");
}

std::vector<std::pair<std::string, RegistryEntry>> build_registry() {
    std::vector<std::pair<std::string, RegistryEntry>> r;
    auto add = [&](std::string name, std::string params, std::string summary,
                   std::function<BloqPtr(const Params&)> make) {
        r.push_back({std::move(name),
                     RegistryEntry{std::move(params), std::move(summary), std::move(make)}});
    };

    // --- primitive gates ---
    add("x", "", "Pauli X", [](const Params&) { return make_bloq<XGate>(); });
    add("y", "", "Pauli Y", [](const Params&) { return make_bloq<YGate>(); });
    add("z", "", "Pauli Z", [](const Params&) { return make_bloq<ZGate>(); });
    add("h", "", "Hadamard", [](const Params&) { return make_bloq<HGate>(); });
    add("s", "", "Phase gate S", [](const Params&) { return make_bloq<SGate>(); });
    add("t", "adjoint", "T gate (adjoint=1 for T-dagger)", [](const Params& p) {
        return make_bloq<TGate>(p.get_int("adjoint", 0) != 0);
    });
    add("cnot", "", "Controlled NOT", [](const Params&) { return make_bloq<CNot>(); });
    add("cz", "", "Controlled Z", [](const Params&) { return make_bloq<CZGate>(); });
    add("swap", "", "Two-qubit swap", [](const Params&) { return make_bloq<SwapGate>(); });
    add("toffoli", "", "Doubly controlled NOT",
        [](const Params&) { return make_bloq<Toffoli>(); });
    add("cswap", "", "Controlled swap (Fredkin)",
        [](const Params&) { return make_bloq<CSwap>(); });
    add("and", "", "Logical AND into a fresh ancilla",
        [](const Params&) { return make_bloq<And>(); });
    add("andadj", "", "Measurement-based AND uncomputation",
        [](const Params&) { return make_bloq<AndAdjoint>(); });
    add("zpow", "t, eps", "Z^t rotation synthesized to precision eps", [](const Params& p) {
        return make_bloq<ZPow>(p.get_expr("t", SymExpr::real(0.5)),
                               p.get_expr("eps", SymExpr::real(1e-10)));
    });
    add("rz", "theta, eps", "exp(-i Z theta/2) to precision eps", [](const Params& p) {
        return make_bloq<Rz>(p.get_expr("theta", SymExpr::real(0.5)),
                             p.get_expr("eps", SymExpr::real(1e-10)));
    });
    add("measure", "", "Destructive Z-basis measurement",
        [](const Params&) { return make_bloq<Measure>(); });
    add("gphase", "phi", "Global phase factor e^{i phi}",
        [](const Params& p) { return make_bloq<GlobalPhase>(p.get_real("phi", 0.0)); });
    add("identity", "n", "No-op on an n-bit register", [](const Params& p) {
        return make_bloq<Identity>(QDType::uint(p.get_int("n", 1)));
    });
    add("anycliffords", "n", "Opaque leaf tallying n Clifford gates", [](const Params& p) {
        return make_bloq<ArbitraryCliffords>(p.get_expr("n", SymExpr::integer(1)));
    });

    // --- bookkeeping ---
    add("split", "n", "Fan an n-bit register out into bits",
        [](const Params& p) { return make_bloq<Split>(QDType::uint(p.get_int("n", 2))); });
    add("join", "n", "Reassemble bits into an n-bit register",
        [](const Params& p) { return make_bloq<Join>(QDType::uint(p.get_int("n", 2))); });
    add("alloc", "n", "Bring a zero n-bit register into scope",
        [](const Params& p) { return make_bloq<Allocate>(QDType::uint(p.get_int("n", 1))); });
    add("free", "n", "Discard an n-bit register known to be zero",
        [](const Params& p) { return make_bloq<Free>(QDType::uint(p.get_int("n", 1))); });

    // --- integer arithmetic ---
    add("xork", "n, k", "x ^= K for a classical constant",
        [](const Params& p) { return make_bloq<XorK>(p.get_int("n"), p.get_int("k", 1)); });
    add("adder", "n", "In-place ripple-carry addition b += a",
        [](const Params& p) { return make_bloq<Adder>(p.get_int("n")); });
    add("caddk", "n, k", "Controlled constant addition x += K",
        [](const Params& p) { return make_bloq<CAddK>(p.get_int("n"), p.get_int("k", 1)); });
    add("lessthan", "n", "flag ^= (a < b)",
        [](const Params& p) { return make_bloq<LessThan>(p.get_int("n")); });
    add("lessthank", "n, k", "flag ^= (x < K)", [](const Params& p) {
        return make_bloq<LessThanConstant>(p.get_int("n"), p.get_int("k", 1));
    });
    add("cswapn", "n", "n-bit controlled register swap",
        [](const Params& p) { return make_bloq<CSwapN>(p.get_int("n")); });
    add("multictoffoli", "k", "target ^= AND of k controls",
        [](const Params& p) { return make_bloq<MultiCToffoli>(p.get_int("k")); });

    // --- rotation synthesis strategies ---
    add("phasegradstate", "b", "Catalytic phase-gradient resource state",
        [](const Params& p) { return make_bloq<PhaseGradientState>(p.get_int("b")); });
    add("zpowprogancilla", "t, eps, rounds", "Z^t via programmed-ancilla teleportation",
        [](const Params& p) {
            return make_bloq<ZPowProgrammedAncilla>(p.get_expr("t", SymExpr::real(0.5)),
                                                    p.get_expr("eps", SymExpr::real(1e-10)),
                                                    p.get_int("rounds", 2));
        });
    add("zpowphasegrad", "t, b", "Z^t by addition into a phase-gradient register",
        [](const Params& p) {
            return make_bloq<ZPowViaPhaseGradient>(p.get_real("t", 0.5), p.get_int("b", 20));
        });
    add("qvrzpow", "n, eps", "Quantum variable rotation, one ZPow per bit",
        [](const Params& p) {
            return make_bloq<QvrZPow>(p.get_int("n"), p.get_expr("eps", SymExpr::real(1e-10)));
        });

    // --- table lookup ---
    add("qrom", "variant, n, b, k", "Lookup table over n entries of b bits", [](const Params& p) {
        QROMVariant variant = parse_variant(p.get_str("variant", "plain"));
        long long n = p.get_int("n");
        long long b = p.get_int("b");
        long long k = p.has("k") ? p.get_int("k")
                      : variant == QROMVariant::Plain ? 0
                                                      : optimal_block_exponent(n, b, variant);
        // Synthetic dataset with distinct entries so identical-payload
        // subtrees do not collapse and the generic lookup cost is reported.
        std::vector<long long> data(static_cast<size_t>(n));
        long long mask = b >= 62 ? -1 : (1LL << b) - 1;
        for (long long j = 0; j < n; ++j) data[static_cast<size_t>(j)] = j & mask;
        std::vector<std::vector<long long>> datasets{std::move(data)};
        return make_bloq<QROM>(std::move(datasets), b, variant, k);
    });

    // --- state preparation ---
    add("prepuniform", "n, eps", "Uniform superposition over the first n basis states",
        [](const Params& p) {
            return make_bloq<PrepareUniformSuperposition>(p.get_int("n"),
                                                          p.get_real("eps", 1e-10));
        });
    add("aliasstate", "weights, mu", "Alias-sampling state preparation", [](const Params& p) {
        return make_bloq<StatePreparationAliasSampling>(
            p.get_reals("weights", {0.25, 0.25, 0.25, 0.25}), p.get_int("mu", 3));
    });

    // --- phase estimation components ---
    add("windowstate", "kind, m, alpha", "Phase-estimation window state", [](const Params& p) {
        WindowSpec w;
        w.kind = parse_window_kind(p.get_str("kind", "sine"));
        w.m = p.get_int("m", 4);
        w.kaiser_alpha = p.get_real("alpha", 1.0);
        return make_bloq<WindowState>(w);
    });
    add("qftinverse", "m, eps, approx", "Inverse quantum Fourier transform", [](const Params& p) {
        return make_bloq<QFTInverse>(p.get_int("m"), p.get_real("eps", 1e-10),
                                     p.get_int("approx", 0) != 0);
    });
    add("reflectzero", "n", "Reflection about the all-zero state",
        [](const Params& p) { return make_bloq<ReflectAboutZero>(SymExpr::integer(p.get_int("n"))); });

    // --- modular arithmetic (p = 0 builds a cost-only instance) ---
    auto np = [](const Params& p) {
        return std::pair<long long, long long>{p.get_int("n"), p.get_int("p", 0)};
    };
    add("modadd", "n, p", "y := (x + y) mod p", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<ModAdd>(n, q);
    });
    add("cmodadd", "n, p", "Controlled modular addition", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<CModAdd>(n, q);
    });
    add("modsub", "n, p", "y := (y - x) mod p", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<ModSub>(n, q);
    });
    add("cmodsub", "n, p", "Controlled modular subtraction", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<CModSub>(n, q);
    });
    add("modneg", "n, p", "x := (-x) mod p", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<ModNeg>(n, q);
    });
    add("cmodneg", "n, p", "Controlled modular negation", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<CModNeg>(n, q);
    });
    add("moddbl", "n, p", "x := 2x mod p", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<ModDbl>(n, q);
    });
    add("modmulk", "n, k, p", "x := k x mod p for a classical constant k", [](const Params& p) {
        return make_bloq<ModMulK>(p.get_int("n"), p.get_int("k", 2), p.get_int("p", 0));
    });
    add("modmul", "n, p", "t := (t + x y) mod p", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<ModMul>(n, q);
    });
    add("kaliskiround", "n, p", "One round of the almost-inverse loop", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<KaliskiRound>(n, q);
    });
    add("modinv", "n, p", "x := x^{-1} mod p", [np](const Params& p) {
        auto [n, q] = np(p);
        return make_bloq<ModInv>(n, q);
    });

    // --- elliptic-curve operations ---
    add("ecadd", "n, p, a", "Quantum-quantum elliptic-curve point addition",
        [](const Params& p) {
            return make_bloq<ECAdd>(p.get_int("n"), p.get_int("p", 0), p.get_int("a", 0));
        });
    add("ecaddr", "n, p, x, y, a, tag", "Controlled addition of a classical curve point",
        [](const Params& p) -> BloqPtr {
            long long n = p.get_int("n");
            long long q = p.get_int("p", 0);
            long long a = p.get_int("a", 0);
            if (q == 0)
                return std::make_shared<const ECAddR>(
                    ECAddR::cost_only(n, p.get_int("tag", 0), a));
            ECPoint r{p.get_int("x"), p.get_int("y"), q, a, false};
            return make_bloq<ECAddR>(n, r);
        });
    add("measureqft", "n", "Measurement-based inverse Fourier readout",
        [](const Params& p) { return make_bloq<MeasureQFT>(p.get_int("n")); });
    add("pointlookup", "n, w", "Table lookup of 2^w precomputed curve points",
        [](const Params& p) { return make_bloq<PointLookup>(p.get_int("n"), p.get_int("w")); });

    // --- assembled period-finding estimators ---
    add("shorrsa", "n, modulus", "Factoring phase estimation (modulus=0: cost-only)",
        [](const Params& p) {
            ShorSpec spec;
            spec.scheme = ShorSpec::Scheme::RSA;
            spec.n = p.get_int("n");
            spec.modulus = p.get_int("modulus", 0);
            return shor_phase_estimation(spec).bloq;
        });
    add("shorecc", "n, window", "Elliptic-curve discrete-log phase estimation (cost-only)",
        [](const Params& p) {
            ShorSpec spec;
            spec.scheme = ShorSpec::Scheme::ECC;
            spec.n = p.get_int("n");
            spec.window_bits = p.get_int("window", 0);
            return shor_phase_estimation(spec).bloq;
        });

    // --- product-formula demo ---
    add("trotterstep", "l, eps", "Second-order product-formula step on an l x l lattice",
        [](const Params& p) {
            return make_bloq<TrotterStep>(p.get_expr("l", SymExpr::symbol("L")),
                                          p.get_expr("eps", SymExpr::symbol("eps_rot")));
        });
    add("trotterqpe", "", "Symbolic product-formula phase-estimation assembly",
        [](const Params&) { return make_bloq<TrotterQPE>(TrotterQPESymbols{}); });

    std::sort(r.begin(), r.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

}  // namespace

const std::vector<std::pair<std::string, RegistryEntry>>& bloq_registry() {
    static const std::vector<std::pair<std::string, RegistryEntry>> registry = build_registry();
    return registry;
}

BloqPtr make_from_registry(const std::string& name, std::map<std::string, std::string> kv) {
    const auto& reg = bloq_registry();
    auto it = std::find_if(reg.begin(), reg.end(),
                           [&](const auto& e) { return e.first == name; });
    if (it == reg.end()) throw UnknownBloq("unknown bloq: " + name);
    Params params(std::move(kv));
    BloqPtr b;
    try {
        b = it->second.make(params);
    } catch (const BadParam&) {
        throw;
    } catch (const Error& e) {
        // Construction-time rejections are usage errors at the CLI surface.
        throw BadParam(std::string("invalid parameters for ") + name + ": " + e.what());
    }
    params.finish();
    return b;
}

}  // namespace qre::cli
