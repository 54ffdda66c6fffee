#include "zdistill/plan_io.h"

#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace zdistill {

using json = nlohmann::ordered_json;

const char *mode_name(PlanMode mode) {
    switch (mode) {
        case PlanMode::explicit_cycles:
            return "explicit";
        case PlanMode::exact:
            return "exact";
        case PlanMode::incremental:
            return "incremental";
        case PlanMode::exponential:
            return "exponential";
    }
    return "?";
}

std::optional<PlanMode> parse_mode(const std::string &name) {
    for (PlanMode m : {PlanMode::explicit_cycles, PlanMode::exact, PlanMode::incremental,
                       PlanMode::exponential}) {
        if (name == mode_name(m)) {
            return m;
        }
    }
    return std::nullopt;
}

namespace {

void check_keys(const json &obj, const std::set<std::string> &allowed, const std::string &where) {
    if (!obj.is_object()) {
        throw DocumentError(where + " must be a JSON object");
    }
    for (const auto &[key, value] : obj.items()) {
        if (allowed.count(key) == 0) {
            throw DocumentError("unknown field '" + key + "' in " + where);
        }
    }
}

const json &field(const json &obj, const std::string &key, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw DocumentError("missing field '" + key + "' in " + where);
    }
    return *it;
}

uint32_t as_count(const json &v, const std::string &what) {
    if (!v.is_number_unsigned() || v.get<uint64_t>() > std::numeric_limits<uint32_t>::max()) {
        throw DocumentError("'" + what + "' must be a non-negative integer");
    }
    return static_cast<uint32_t>(v.get<uint64_t>());
}

std::string as_id(const json &v, const std::string &what) {
    if (!v.is_string() || v.get<std::string>().empty()) {
        throw DocumentError("'" + what + "' must be a non-empty string");
    }
    return v.get<std::string>();
}

std::vector<StateRef> parse_states(const json &arr, uint32_t k, Origin origin,
                                   const std::string &where) {
    if (!arr.is_array()) {
        throw DocumentError("'" + where + "' must be an array");
    }
    std::vector<StateRef> out;
    for (const auto &item : arr) {
        check_keys(item, {"id", "k", "n"}, where + " entry");
        StateRef s;
        s.id = as_id(field(item, "id", where + " entry"), "id");
        s.n = as_count(field(item, "n", where + " entry"), "n");
        s.k = item.contains("k") ? as_count(item["k"], "k") : k;
        s.origin = origin;
        out.push_back(std::move(s));
    }
    return out;
}

json states_json(const std::vector<StateRef> &states) {
    json arr = json::array();
    for (const auto &s : states) {
        arr.push_back({{"id", s.id}, {"k", s.k}, {"n", s.n}});
    }
    return arr;
}

json big_json(const BigNat &v) {
    if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max()) {
        return v.convert_to<int64_t>();
    }
    return v.str();
}

BigNat big_from_json(const json &v) {
    if (v.is_number_unsigned()) {
        return BigNat(v.get<uint64_t>());
    }
    if (v.is_number_integer()) {
        return BigNat(v.get<int64_t>());
    }
    if (v.is_string()) {
        return numerator(parse_fraction(v.get<std::string>()));
    }
    throw DocumentError("fraction parts must be integers or integer strings");
}

std::string describe(const StateRef &s) {
    return "Z_" + std::to_string(s.k) + "(" + std::to_string(s.n) + ")";
}

}  // namespace

PlanDocument parse_plan_document(const json &j) {
    check_keys(j, {"schema_version", "mode", "k", "target_n", "n1", "n2", "inputs", "ancillas",
                   "cycles", "verify_with_oracle", "dense_cap"},
               "plan document");
    PlanDocument doc;
    doc.schema_version = as_count(field(j, "schema_version", "plan document"), "schema_version");
    if (doc.schema_version != kSchemaVersion) {
        throw DocumentError("unsupported schema_version " + std::to_string(doc.schema_version));
    }
    const json &mode = field(j, "mode", "plan document");
    if (!mode.is_string() || !parse_mode(mode.get<std::string>())) {
        throw DocumentError("'mode' must be one of explicit, exact, incremental, exponential");
    }
    doc.mode = *parse_mode(mode.get<std::string>());
    doc.k = as_count(field(j, "k", "plan document"), "k");
    doc.target_n = as_count(field(j, "target_n", "plan document"), "target_n");
    if (j.contains("verify_with_oracle")) {
        if (!j["verify_with_oracle"].is_boolean()) {
            throw DocumentError("'verify_with_oracle' must be a boolean");
        }
        doc.verify_with_oracle = j["verify_with_oracle"].get<bool>();
    }
    if (j.contains("dense_cap")) {
        doc.dense_cap = as_count(j["dense_cap"], "dense_cap");
    }

    auto forbid = [&](std::initializer_list<const char *> keys) {
        for (const char *key : keys) {
            if (j.contains(key)) {
                throw DocumentError(std::string("field '") + key + "' is not allowed in " +
                                    mode_name(doc.mode) + " mode");
            }
        }
    };
    switch (doc.mode) {
        case PlanMode::explicit_cycles: {
            forbid({"n1", "n2"});
            doc.inputs = parse_states(field(j, "inputs", "plan document"), doc.k, Origin::input,
                                      "inputs");
            doc.ancillas = j.contains("ancillas")
                               ? parse_states(j["ancillas"], doc.k, Origin::ancilla, "ancillas")
                               : std::vector<StateRef>{};
            const json &cycles = field(j, "cycles", "plan document");
            if (!cycles.is_array()) {
                throw DocumentError("'cycles' must be an array");
            }
            for (const auto &c : cycles) {
                check_keys(c, {"left", "right", "produced"}, "cycle");
                doc.cycles.push_back({as_id(field(c, "left", "cycle"), "left"),
                                      as_id(field(c, "right", "cycle"), "right"),
                                      as_id(field(c, "produced", "cycle"), "produced")});
            }
            break;
        }
        case PlanMode::exact:
            forbid({"inputs", "ancillas", "cycles"});
            doc.n1 = as_count(field(j, "n1", "plan document"), "n1");
            doc.n2 = as_count(field(j, "n2", "plan document"), "n2");
            break;
        case PlanMode::incremental:
        case PlanMode::exponential:
            forbid({"inputs", "ancillas", "cycles", "n1", "n2"});
            break;
    }
    return doc;
}

PlanDocument parse_plan_document_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw DocumentError(std::string("not valid JSON: ") + e.what());
    }
    return parse_plan_document(j);
}

json to_json(const PlanDocument &doc) {
    json j = {{"schema_version", doc.schema_version},
              {"mode", mode_name(doc.mode)},
              {"k", doc.k},
              {"target_n", doc.target_n}};
    if (doc.mode == PlanMode::explicit_cycles) {
        j["inputs"] = states_json(doc.inputs);
        j["ancillas"] = states_json(doc.ancillas);
        json cycles = json::array();
        for (const auto &c : doc.cycles) {
            cycles.push_back({{"left", c.left}, {"right", c.right}, {"produced", c.produced}});
        }
        j["cycles"] = cycles;
    }
    if (doc.mode == PlanMode::exact) {
        j["n1"] = doc.n1.value_or(0);
        j["n2"] = doc.n2.value_or(0);
    }
    j["verify_with_oracle"] = doc.verify_with_oracle;
    if (doc.dense_cap) {
        j["dense_cap"] = *doc.dense_cap;
    }
    return j;
}

ProtocolPlan to_plan(const PlanDocument &doc) {
    ProtocolPlan plan;
    try {
        switch (doc.mode) {
            case PlanMode::exact:
                plan = gen_exact_plan(doc.k, doc.n1.value_or(0), doc.n2.value_or(0));
                break;
            case PlanMode::incremental:
                plan = gen_incremental_plan(doc.k, doc.target_n);
                break;
            case PlanMode::exponential:
                plan = gen_exponential_plan(doc.k, doc.target_n);
                break;
            case PlanMode::explicit_cycles:
                break;
        }
    } catch (const InvalidPlanError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw InvalidPlanError({{std::nullopt, e.what()}});
    }
    if (doc.mode != PlanMode::explicit_cycles) {
        // The document's target is authoritative; validation flags a disagreement.
        plan.target = {doc.k, doc.target_n};
        return plan;
    }

    plan.k = doc.k;
    plan.inputs = doc.inputs;
    plan.ancillas = doc.ancillas;
    plan.target = {doc.k, doc.target_n};
    std::map<std::string, StateRef> known;
    for (const auto *group : {&plan.inputs, &plan.ancillas}) {
        for (const auto &s : *group) {
            known.try_emplace(s.id, s);
        }
    }
    auto resolve = [&](const std::string &id) {
        auto it = known.find(id);
        // Unknown ids pass through with an empty descriptor; validate_plan reports them.
        return it == known.end() ? StateRef{id, doc.k, 0, Origin::intermediate} : it->second;
    };
    for (const auto &c : doc.cycles) {
        Cycle cycle{resolve(c.left), resolve(c.right), c.produced};
        uint32_t n = cycle.left.n + cycle.right.n;
        n = n >= 2 * doc.k ? n - 2 * doc.k : 0;
        known.try_emplace(c.produced, StateRef{c.produced, doc.k, n, Origin::intermediate});
        plan.cycles.push_back(std::move(cycle));
    }
    return plan;
}

PlanDocument to_document(const ProtocolPlan &plan) {
    PlanDocument doc;
    doc.mode = PlanMode::explicit_cycles;
    doc.k = plan.k;
    doc.target_n = plan.target.n;
    doc.inputs = plan.inputs;
    doc.ancillas = plan.ancillas;
    for (const auto &c : plan.cycles) {
        doc.cycles.push_back({c.left.id, c.right.id, c.produced_id});
    }
    return doc;
}

json fraction_json(const Rational &r) {
    return {{"num", big_json(numerator(r))}, {"den", big_json(denominator(r))}};
}

Rational fraction_from_json(const json &j) {
    check_keys(j, {"num", "den"}, "fraction");
    BigNat num = big_from_json(field(j, "num", "fraction"));
    BigNat den = big_from_json(field(j, "den", "fraction"));
    if (den == 0) {
        throw DocumentError("fraction with zero denominator");
    }
    return Rational(num, den);
}

json state_json(const StateRef &s) {
    return {{"id", s.id}, {"k", s.k}, {"n", s.n}, {"origin", origin_name(s.origin)}};
}

json ledger_json(const ResourceLedger &ledger) {
    return {{"input_states", ledger.input_states},
            {"input_qubits", ledger.input_qubits},
            {"ancilla_qubits", ledger.ancilla_qubits},
            {"consumed_qubits", ledger.consumed_qubits},
            {"cycles", ledger.cycles},
            {"output_qubits", ledger.output_qubits},
            {"depth", ledger.depth}};
}

json report_json(const ExecutionReport &report) {
    json cycles = json::array();
    for (const auto &c : report.cycles) {
        cycles.push_back({{"index", c.index},
                          {"left", c.left_id},
                          {"right", c.right_id},
                          {"produced", state_json(c.produced)},
                          {"success_probability", fraction_json(c.success_probability)},
                          {"oracle_checked", c.oracle_checked}});
    }
    json path = json::array();
    for (const auto &s : report.critical_path) {
        path.push_back(state_json(s));
    }
    return {{"cycles", cycles},
            {"cumulative_success_probability", fraction_json(report.cumulative_success)},
            {"final_state", report.final_state ? state_json(*report.final_state) : json(nullptr)},
            {"ledger", ledger_json(report.ledger)},
            {"critical_path", path}};
}

std::string report_text(const ProtocolPlan &plan, const ExecutionReport &report) {
    std::map<std::string, StateRef> refs;
    for (const auto *group : {&plan.inputs, &plan.ancillas}) {
        for (const auto &s : *group) {
            refs[s.id] = s;
        }
    }
    std::ostringstream out;
    out << "plan: k=" << plan.k << ", " << plan.cycles.size() << " cycle"
        << (plan.cycles.size() == 1 ? "" : "s") << ", target Z_" << plan.target.k << "("
        << plan.target.n << ")\n";
    for (const auto &c : report.cycles) {
        out << "cycle " << c.index << ": " << c.left_id << " " << describe(refs[c.left_id]) << " + "
            << c.right_id << " " << describe(refs[c.right_id]) << " -> " << c.produced.id << " "
            << describe(c.produced) << "  p = " << to_fraction_string(c.success_probability)
            << " (approx " << to_decimal_string(c.success_probability) << ")"
            << (c.oracle_checked ? "  [oracle ok]" : "") << "\n";
        refs[c.produced.id] = c.produced;
    }
    out << "cumulative success probability: " << to_fraction_string(report.cumulative_success)
        << " (approx " << to_decimal_string(report.cumulative_success) << ")\n";
    const auto &l = report.ledger;
    out << "ledger: input_states=" << l.input_states << " input_qubits=" << l.input_qubits
        << " ancilla_qubits=" << l.ancilla_qubits << " consumed_qubits=" << l.consumed_qubits
        << " cycles=" << l.cycles << " output_qubits=" << l.output_qubits << " depth=" << l.depth
        << "\n";
    out << "critical path:";
    for (size_t i = 0; i < report.critical_path.size(); ++i) {
        out << (i == 0 ? " " : " -> ") << describe(report.critical_path[i]);
    }
    out << "\n";
    out << "final state: " << (report.final_state ? describe(*report.final_state) : "none") << "\n";
    return out.str();
}

}  // namespace zdistill
