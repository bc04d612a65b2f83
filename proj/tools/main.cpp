#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qre/errors.hpp"
#include "registry.hpp"
#include "report.hpp"

namespace {

using namespace qre;
using namespace qre::cli;

constexpr int kExitUsage = 2;
constexpr int kExitAnalysis = 3;

/// Trailing `--key value`, `--key=value`, or `key=value` tokens.
std::map<std::string, std::string> parse_kv(const std::vector<std::string>& extras) {
    std::map<std::string, std::string> kv;
    for (size_t i = 0; i < extras.size(); ++i) {
        std::string tok = extras[i];
        if (tok.rfind("--", 0) == 0) tok = tok.substr(2);
        auto eq = tok.find('=');
        std::string key, value;
        if (eq != std::string::npos) {
            key = tok.substr(0, eq);
            value = tok.substr(eq + 1);
        } else {
            key = tok;
            if (i + 1 >= extras.size())
                throw BadParam("parameter " + key + " is missing a value");
            value = extras[++i];
        }
        if (key.empty()) throw BadParam("empty parameter name in '" + extras[i] + "'");
        kv[key] = value;
    }
    return kv;
}

AggregationPolicy policy_from_name(const std::string& name) {
    AggregationPolicy p;
    if (name == "four")
        p.toffoli_to_t = AggregationPolicy::ToffoliToT::Four;
    else if (name == "seven")
        p.toffoli_to_t = AggregationPolicy::ToffoliToT::Seven;
    else
        p.toffoli_to_t = AggregationPolicy::ToffoliToT::KeepToffoli;
    return p;
}

/// FNV-1a of the canonical invocation string, for the optional memo cache.
std::string cache_digest(const std::string& canonical) {
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

/// Emits `compute()` for the canonical invocation, reusing a cached copy
/// from QRE_CACHE_DIR when one exists.
void emit_with_cache(const std::string& canonical,
                     const std::function<std::string()>& compute) {
    const char* dir = std::getenv("QRE_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') {
        std::cout << compute();
        return;
    }
    std::string path = std::string(dir) + "/qre-" + cache_digest(canonical) + ".json";
    {
        std::ifstream in(path);
        if (in) {
            std::cout << in.rdbuf();
            return;
        }
    }
    std::string out = compute();
    std::ofstream(path) << out;
    std::cout << out;
}

int cmd_list() {
    for (const auto& [name, entry] : bloq_registry()) {
        std::cout << name;
        if (!entry.params.empty()) std::cout << " (" << entry.params << ")";
        std::cout << " - " << entry.summary << "\n";
    }
    return 0;
}

int cmd_count(const std::string& name, const std::map<std::string, std::string>& kv,
              const std::string& policy_name, bool symbolic, bool breakdown,
              const std::string& format) {
    BloqPtr bloq = make_from_registry(name, kv);
    CountOptions opts;
    opts.policy = policy_from_name(policy_name);
    opts.policy_name = policy_name;
    opts.symbolic = symbolic;
    opts.breakdown = breakdown;

    std::ostringstream canonical;
    canonical << "count|" << name << "|policy=" << policy_name << "|symbolic=" << symbolic
              << "|breakdown=" << breakdown << "|format=" << format;
    for (const auto& [k, v] : kv) canonical << "|" << k << "=" << v;

    emit_with_cache(canonical.str(), [&]() {
        Json doc = count_report(name, kv, bloq, opts);
        if (format == "json") return doc.dump() + "\n";
        return render_count_table(doc);
    });
    return 0;
}

int cmd_callgraph(const std::string& name, const std::map<std::string, std::string>& kv,
                  const std::string& dot_file, int max_depth) {
    BloqPtr bloq = make_from_registry(name, kv);
    std::string dot = callgraph_dot(bloq, max_depth);
    if (dot_file.empty()) {
        std::cout << dot;
    } else {
        std::ofstream out(dot_file);
        if (!out) throw Error("cannot write " + dot_file);
        out << dot;
    }
    return 0;
}

LogicalCounts read_counts_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParam("cannot read counts file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw BadParam("counts file is not valid JSON: " + std::string(e.what()));
    }
    LogicalCounts c;
    auto field = [&](const char* key, long long& slot) {
        if (doc.contains(key)) {
            if (!doc[key].is_number())
                throw BadParam(std::string("counts field ") + key + " must be a number");
            slot = doc[key].get<long long>();
            if (slot < 0) throw BadParam(std::string("counts field ") + key + " is negative");
        }
    };
    field("algorithm_qubits", c.algorithm_qubits);
    field("t", c.t);
    field("toffoli", c.toffoli);
    field("clifford", c.clifford);
    field("measurement", c.measurement);
    return c;
}

struct PhysicalFlags {
    std::string counts_file;
    std::string scheme = "fowler-gidney";
    std::string block = "simple";
    std::string factory = "t";
    std::string preset = "sc-realistic";
    std::string strategy = "grid";
    std::string format = "table";
    double budget = 1e-2;
    double p_phys = -1.0;
    double cycle_time = -1.0;
    long long d_data = 0;
    long long d_factory = 0;
    long long factory_count = 0;
};

int cmd_physical(const PhysicalFlags& f) {
    if (!(f.budget > 0.0 && f.budget < 1.0))
        throw BadParam("error budget must lie strictly between 0 and 1");
    LogicalCounts counts = read_counts_file(f.counts_file);

    PhysicalCostModel model;
    model.qec = f.scheme == "beverland" ? QECScheme::beverland() : QECScheme::fowler_gidney();
    if (f.block == "compact")
        model.data_block.kind = DataBlockKind::CompactLitinski;
    else if (f.block == "intermediate")
        model.data_block.kind = DataBlockKind::IntermediateLitinski;
    else if (f.block == "fast")
        model.data_block.kind = DataBlockKind::FastLitinski;
    else
        model.data_block.kind = DataBlockKind::Simple;
    model.factory = f.factory == "ccz" ? MagicStateFactory::ccz_factory(11)
                                       : MagicStateFactory::t_factory(11);
    if (f.preset == "sc-optimistic")
        model.params = PhysicalParameters::superconducting_optimistic();
    else if (f.preset == "ion-realistic")
        model.params = PhysicalParameters::ion_realistic();
    else if (f.preset == "ion-optimistic")
        model.params = PhysicalParameters::ion_optimistic();
    else
        model.params = PhysicalParameters::superconducting_realistic();
    if (f.p_phys > 0) model.params.p_phys = f.p_phys;
    if (f.cycle_time > 0) model.params.cycle_time_s = f.cycle_time;

    DesignResult design;
    if (f.d_data > 0) {
        model.data_block.d = f.d_data;
        model.factory.d = f.d_factory > 0 ? f.d_factory : f.d_data;
        model.factory.count = f.factory_count > 0 ? f.factory_count : 1;
        design.d_data = model.data_block.d;
        design.d_factory = model.factory.d;
        design.factory_count = model.factory.count;
        design.cost = estimate(model, counts, f.budget);
    } else {
        DesignStrategy strategy = f.strategy == "thirds" ? DesignStrategy::ThirdsBudget
                                                         : DesignStrategy::GridSearchVolume;
        design = solve_design(strategy, model, counts, f.budget);
    }

    std::map<std::string, std::string> inv{
        {"counts_file", f.counts_file}, {"scheme", f.scheme},
        {"data_block", f.block},        {"factory", f.factory},
        {"preset", f.preset},           {"budget", std::to_string(f.budget)},
        {"strategy", f.d_data > 0 ? "explicit" : f.strategy}};
    Json doc = physical_report(inv, counts, design);
    if (f.format == "json")
        std::cout << doc.dump() << "\n";
    else
        std::cout << render_physical_table(doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qre - quantum resource estimation toolkit"};
    app.require_subcommand(1);

    CLI::App* list = app.add_subcommand("list", "List the bloqs in the registry");

    std::string count_name, count_policy = "four", count_format = "table";
    bool count_symbolic = false, count_breakdown = false;
    CLI::App* count = app.add_subcommand("count", "Logical gate counts of a bloq");
    count->add_option("bloq", count_name, "registry name")->required();
    count->add_option("--policy", count_policy, "Toffoli/rotation aggregation policy")
        ->check(CLI::IsMember({"four", "seven", "keep"}));
    count->add_flag("--symbolic", count_symbolic, "omit numeric evaluation");
    count->add_flag("--breakdown", count_breakdown, "per-callee Toffoli table");
    count->add_option("--format", count_format)->check(CLI::IsMember({"json", "table"}));
    count->allow_extras();

    std::string cg_name, cg_dot;
    int cg_depth = -1;
    CLI::App* callgraph = app.add_subcommand("callgraph", "Render the call graph as DOT");
    callgraph->add_option("bloq", cg_name, "registry name")->required();
    callgraph->add_option("--dot", cg_dot, "output file (default: stdout)");
    callgraph->add_option("--max-depth", cg_depth, "expansion depth (-1: unlimited)");
    callgraph->allow_extras();

    PhysicalFlags pf;
    CLI::App* physical =
        app.add_subcommand("physical", "Physical resources for a logical workload");
    physical->add_option("counts", pf.counts_file, "logical counts JSON file")->required();
    physical->add_option("--scheme", pf.scheme)
        ->check(CLI::IsMember({"fowler-gidney", "beverland"}));
    physical->add_option("--data-block", pf.block)
        ->check(CLI::IsMember({"simple", "compact", "intermediate", "fast"}));
    physical->add_option("--factory", pf.factory)->check(CLI::IsMember({"t", "ccz"}));
    physical->add_option("--preset", pf.preset)
        ->check(CLI::IsMember(
            {"sc-realistic", "sc-optimistic", "ion-realistic", "ion-optimistic"}));
    physical->add_option("--p-phys", pf.p_phys, "physical error rate override");
    physical->add_option("--cycle-time", pf.cycle_time, "cycle time override [s]");
    physical->add_option("--budget", pf.budget, "total failure budget in (0, 1)");
    physical->add_option("--strategy", pf.strategy)
        ->check(CLI::IsMember({"grid", "thirds"}));
    physical->add_option("--d-data", pf.d_data, "fixed data-block code distance");
    physical->add_option("--d-factory", pf.d_factory, "fixed factory code distance");
    physical->add_option("--factory-count", pf.factory_count, "parallel factories");
    physical->add_option("--format", pf.format)->check(CLI::IsMember({"json", "table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (list->parsed()) return cmd_list();
        if (count->parsed())
            return cmd_count(count_name, parse_kv(count->remaining()), count_policy,
                             count_symbolic, count_breakdown, count_format);
        if (callgraph->parsed())
            return cmd_callgraph(cg_name, parse_kv(callgraph->remaining()), cg_dot, cg_depth);
        if (physical->parsed()) return cmd_physical(pf);
    } catch (const UnknownBloq& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BadParam& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qre::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    }
    return 0;
}
