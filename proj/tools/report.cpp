#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "qre/errors.hpp"

namespace qre::cli {

namespace {

/// Concrete value of an expression, or null when symbols remain free.
Json numeric_of(const SymExpr& e) {
    try {
        double v = e.evaluate_double({});
        long long r = std::llround(v);
        if (std::abs(v - static_cast<double>(r)) <= 1e-9 * std::max(1.0, std::abs(v)))
            return Json(r);
        return Json(v);
    } catch (const Error&) {
        return Json();
    }
}

std::string fmt_value(const Json& numeric, const Json& symbolic) {
    if (!numeric.is_null()) {
        if (numeric.is_number_integer()) return std::to_string(numeric.get<long long>());
        std::ostringstream os;
        os << std::setprecision(10) << numeric.get<double>();
        return os.str();
    }
    if (symbolic.is_object() && symbolic.contains("str"))
        return symbolic["str"].get<std::string>();
    return symbolic.is_string() ? symbolic.get<std::string>() : symbolic.dump();
}

Json params_object(const std::map<std::string, std::string>& params) {
    Json obj = Json::object();
    for (const auto& [k, v] : params) obj[k] = v;  // std::map: already sorted
    return obj;
}

}  // namespace

Json count_report(const std::string& bloq_name,
                  const std::map<std::string, std::string>& params, const BloqPtr& bloq,
                  const CountOptions& opts) {
    GateCounts raw = gate_counts(bloq);
    GateCounts agg = raw.aggregate(opts.policy);

    Json doc;
    doc["invocation"] = {{"command", "count"},
                         {"bloq", bloq_name},
                         {"params", params_object(params)},
                         {"policy", opts.policy_name},
                         {"symbolic", opts.symbolic}};
    doc["bloq"] = {{"name", bloq->name()}, {"key", bloq->key()}};
    doc["counts"]["factored"] = to_json(raw);
    doc["counts"]["aggregated"] = to_json(agg);
    if (!opts.symbolic) {
        Json num;
        num["t"] = numeric_of(agg.t);
        num["toffoli"] = numeric_of(raw.toffoli);
        num["clifford"] = numeric_of(raw.clifford);
        num["measurement"] = numeric_of(raw.measurement);
        num["rotations"] = numeric_of(raw.total_rotations());
        doc["counts"]["numeric"] = num;
    }
    try {
        SymExpr q = qubit_count(bloq);
        Json qj = to_json(q);
        doc["qubits"] = qj;
    } catch (const Error&) {
        // leave the section out when the qubit model does not apply
    }

    if (opts.breakdown) {
        struct Row {
            std::string name, key;
            SymExpr calls, per, total, t_total;
            double sort_key;
        };
        std::vector<Row> rows;
        for (const Callee& c : direct_callees(*bloq)) {
            GateCounts cc = gate_counts(c.bloq);
            SymExpr per = cc.toffoli;
            SymExpr total = c.multiplicity * per;
            SymExpr t_total = c.multiplicity * cc.aggregate(opts.policy).t;
            double sort_key = -1.0;
            Json num = numeric_of(total);
            if (num.is_number())
                sort_key = num.is_number_integer()
                               ? static_cast<double>(num.get<long long>())
                               : num.get<double>();
            rows.push_back({c.bloq->name(), c.bloq->key(), c.multiplicity, per, total,
                            t_total, sort_key});
        }
        std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
            if (a.sort_key != b.sort_key) return a.sort_key > b.sort_key;
            return a.name < b.name;
        });
        Json arr = Json::array();
        for (const Row& r : rows) {
            Json row;
            row["name"] = r.name;
            row["key"] = r.key;
            row["calls"] = to_json(r.calls);
            row["toffoli_per_call"] = to_json(r.per);
            row["toffoli_total"] = to_json(r.total);
            row["t_total"] = to_json(r.t_total);
            arr.push_back(row);
        }
        doc["breakdown"] = arr;
    }
    return doc;
}

namespace {

std::string cell(const Json& holder) {
    // holder is a serialized expression: {"str", "key", "value"?}
    if (holder.contains("value")) return fmt_value(holder["value"], holder);
    return fmt_value(Json(), holder);
}

}  // namespace

std::string render_count_table(const Json& report) {
    std::ostringstream os;
    os << "bloq:    " << report["bloq"]["key"].get<std::string>() << "\n";
    os << "policy:  " << report["invocation"]["policy"].get<std::string>() << "\n";
    const Json& factored = report["counts"]["factored"];
    const Json& aggregated = report["counts"]["aggregated"];
    bool numeric = report["counts"].contains("numeric");
    auto line = [&](const std::string& label, const Json& sym, const char* numkey) {
        Json num;
        if (numeric) num = report["counts"]["numeric"][numkey];
        os << std::left << std::setw(12) << label << fmt_value(num, sym) << "\n";
    };
    line("T", aggregated["t"], "t");
    line("Toffoli", factored["toffoli"], "toffoli");
    line("Clifford", factored["clifford"], "clifford");
    line("Measure", factored["measurement"], "measurement");
    if (numeric) {
        os << std::left << std::setw(12) << "Rotations"
           << fmt_value(report["counts"]["numeric"]["rotations"], Json("0")) << "\n";
    }
    if (report.contains("qubits"))
        os << std::left << std::setw(12) << "Qubits" << cell(report["qubits"]) << "\n";
    if (report.contains("breakdown")) {
        os << "\nbreakdown (direct callees, by total Toffoli):\n";
        os << std::left << std::setw(16) << "  name" << std::right << std::setw(12)
           << "calls" << std::setw(16) << "Toffoli/call" << std::setw(16) << "Toffoli"
           << "\n";
        for (const Json& row : report["breakdown"]) {
            os << "  " << std::left << std::setw(14) << row["name"].get<std::string>()
               << std::right << std::setw(12) << cell(row["calls"]) << std::setw(16)
               << cell(row["toffoli_per_call"]) << std::setw(16)
               << cell(row["toffoli_total"]) << "\n";
        }
    }
    return os.str();
}

Json physical_report(const std::map<std::string, std::string>& invocation,
                     const LogicalCounts& counts, const DesignResult& design) {
    Json doc;
    Json inv;
    inv["command"] = "physical";
    for (const auto& [k, v] : invocation) inv[k] = v;
    doc["invocation"] = inv;
    doc["logical"] = {{"algorithm_qubits", counts.algorithm_qubits},
                      {"t", counts.t},
                      {"toffoli", counts.toffoli},
                      {"clifford", counts.clifford},
                      {"measurement", counts.measurement}};
    doc["design"] = {{"d_data", design.d_data},
                     {"d_factory", design.d_factory},
                     {"factory_count", design.factory_count}};
    doc["physical"] = {{"physical_qubits", design.cost.physical_qubits},
                       {"cycles", design.cost.cycles},
                       {"wall_time_s", design.cost.wall_time_s},
                       {"failure_prob", design.cost.failure_prob}};
    return doc;
}

std::string render_physical_table(const Json& report) {
    std::ostringstream os;
    auto num = [](const Json& v) {
        std::ostringstream s;
        if (v.is_number_integer())
            s << v.get<long long>();
        else
            s << std::setprecision(6) << v.get<double>();
        return s.str();
    };
    os << "physical resource estimate\n";
    os << "--------------------------\n";
    const Json& l = report["logical"];
    os << "logical workload:\n";
    os << "  algorithm qubits  " << num(l["algorithm_qubits"]) << "\n";
    os << "  T gates           " << num(l["t"]) << "\n";
    os << "  Toffoli gates     " << num(l["toffoli"]) << "\n";
    os << "  Cliffords         " << num(l["clifford"]) << "\n";
    os << "  measurements      " << num(l["measurement"]) << "\n";
    const Json& d = report["design"];
    os << "code design:\n";
    os << "  data distance     " << num(d["d_data"]) << "\n";
    os << "  factory distance  " << num(d["d_factory"]) << "\n";
    os << "  factory count     " << num(d["factory_count"]) << "\n";
    const Json& p = report["physical"];
    os << "cost:\n";
    os << "  physical qubits   " << num(p["physical_qubits"]) << "\n";
    os << "  cycles            " << num(p["cycles"]) << "\n";
    os << "  wall time [s]     " << num(p["wall_time_s"]) << "\n";
    os << "  failure prob      " << num(p["failure_prob"]) << "\n";
    return os.str();
}

std::string callgraph_dot(const BloqPtr& root, int max_depth) {
    CallGraph g = build_call_graph(root, nullptr, max_depth);
    auto annotate = [&](const Bloq& b) -> std::string {
        auto it = g.nodes().find(b.key());
        if (it == g.nodes().end()) return "";
        GateCounts c = gate_counts(it->second);
        auto show = [](const SymExpr& e) {
            Json v = numeric_of(e);
            return fmt_value(v, Json(e.str()));
        };
        return "T=" + show(c.t) + " Toff=" + show(c.toffoli) + " Rot=" +
               show(c.total_rotations());
    };
    return g.to_dot(annotate);
}

}  // namespace qre::cli
