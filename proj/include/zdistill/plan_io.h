#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zdistill/protocol.h"

namespace zdistill {

inline constexpr uint32_t kSchemaVersion = 1;

enum class PlanMode { explicit_cycles, exact, incremental, exponential };

const char *mode_name(PlanMode mode);
std::optional<PlanMode> parse_mode(const std::string &name);

/// Cycle as written in a document: operands are referenced by id only.
struct DocCycle {
    std::string left;
    std::string right;
    std::string produced;

    bool operator==(const DocCycle &) const = default;
};

/// On-disk plan. Generator modes carry only their parameters; explicit mode
/// lists every state and cycle.
///
///   {"schema_version": 1, "mode": "explicit", "k": 1, "target_n": 4,
///    "inputs": [{"id": "s0", "n": 3}, {"id": "s1", "n": 3}],
///    "ancillas": [],
///    "cycles": [{"left": "s0", "right": "s1", "produced": "m0"}],
///    "verify_with_oracle": false}
///
/// Exact mode takes "n1" and "n2" instead of states and cycles; incremental
/// and exponential take nothing beyond k and target_n. "dense_cap" is optional.
struct PlanDocument {
    uint32_t schema_version = kSchemaVersion;
    PlanMode mode = PlanMode::explicit_cycles;
    uint32_t k = 0;
    uint32_t target_n = 0;
    std::optional<uint32_t> n1;
    std::optional<uint32_t> n2;
    std::vector<StateRef> inputs;
    std::vector<StateRef> ancillas;
    std::vector<DocCycle> cycles;
    bool verify_with_oracle = false;
    std::optional<uint32_t> dense_cap;

    bool operator==(const PlanDocument &) const = default;
};

/// Structural problems with a document (bad JSON, unknown or missing fields,
/// wrong types). Distinct from plan violations.
class DocumentError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

PlanDocument parse_plan_document(const nlohmann::ordered_json &j);
PlanDocument parse_plan_document_text(const std::string &text);
nlohmann::ordered_json to_json(const PlanDocument &doc);

/// Materializes the plan. Generator parameters that break generator
/// preconditions surface as InvalidPlanError.
ProtocolPlan to_plan(const PlanDocument &doc);

/// Explicit-mode document for a plan.
PlanDocument to_document(const ProtocolPlan &plan);

/// {"num": ..., "den": ...}; each part is a JSON integer when it fits in 64
/// bits and a decimal string otherwise.
nlohmann::ordered_json fraction_json(const Rational &r);
Rational fraction_from_json(const nlohmann::ordered_json &j);

nlohmann::ordered_json state_json(const StateRef &s);
nlohmann::ordered_json ledger_json(const ResourceLedger &ledger);
nlohmann::ordered_json report_json(const ExecutionReport &report);

/// Human-readable report; the last line names the final state.
std::string report_text(const ProtocolPlan &plan, const ExecutionReport &report);

}  // namespace zdistill
