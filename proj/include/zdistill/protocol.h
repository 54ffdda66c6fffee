#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zdistill/combinatorics.h"
#include "zdistill/dense.h"
#include "zdistill/zstate.h"

namespace zdistill {

enum class Origin { input, ancilla, intermediate };

const char *origin_name(Origin origin);

/// Names one Z_k(n) state in a plan.
struct StateRef {
    std::string id;
    uint32_t k = 0;
    uint32_t n = 0;
    Origin origin = Origin::input;

    bool operator==(const StateRef &) const = default;
};

/// One preparation + projection: left and right are consumed, producing
/// Z_k(left.n + right.n - 2k) under `produced_id`.
struct Cycle {
    StateRef left;
    StateRef right;
    std::string produced_id;

    bool operator==(const Cycle &) const = default;
};

struct Target {
    uint32_t k = 0;
    uint32_t n = 0;

    bool operator==(const Target &) const = default;
};

struct ProtocolPlan {
    uint32_t k = 0;
    std::vector<StateRef> inputs;
    std::vector<StateRef> ancillas;
    std::vector<Cycle> cycles;
    Target target;

    bool operator==(const ProtocolPlan &) const = default;
};

struct Violation {
    /// Index of the offending cycle, when the problem is local to one.
    std::optional<size_t> cycle;
    std::string message;
};

std::string to_string(const Violation &v);

/// Checks the plan without running it; an empty result means valid.
std::vector<Violation> validate_plan(const ProtocolPlan &plan);

/// Longest chain of cycles ending at `id` (0 for inputs and ancillas).
struct PlanShape {
    uint32_t depth = 0;
    /// States along one longest dependency chain, from a leaf to the result.
    std::vector<StateRef> critical_path;
};

/// Requires a valid plan.
PlanShape plan_shape(const ProtocolPlan &plan);

/// The state the plan delivers: the last cycle's product, or the lone
/// input/ancilla when there are no cycles.
std::optional<StateRef> plan_result(const ProtocolPlan &plan);

struct ResourceLedger {
    uint64_t input_states = 0;
    uint64_t input_qubits = 0;
    uint64_t ancilla_qubits = 0;
    uint64_t consumed_qubits = 0;
    uint64_t cycles = 0;
    /// Qubits still held in unconsumed states after the last cycle.
    uint64_t output_qubits = 0;
    uint32_t depth = 0;

    bool operator==(const ResourceLedger &) const = default;
};

struct CycleReport {
    size_t index = 0;
    std::string left_id;
    std::string right_id;
    StateRef produced;
    Rational success_probability;
    bool oracle_checked = false;
};

struct ExecutionReport {
    std::vector<CycleReport> cycles;
    Rational cumulative_success = 1;
    ResourceLedger ledger;
    std::optional<StateRef> final_state;
    std::vector<StateRef> critical_path;
    /// Symbolic form of the delivered state.
    BlockSum final_block;
};

struct ExecuteOptions {
    /// Re-run each cycle through the dense oracle when its width allows.
    bool verify_with_oracle = false;
    uint32_t dense_cap = kDenseCap;
};

class InvalidPlanError : public std::invalid_argument {
   public:
    explicit InvalidPlanError(std::vector<Violation> violations);
    const std::vector<Violation> &violations() const { return violations_; }

   private:
    std::vector<Violation> violations_;
};

class ExecutionError : public std::runtime_error {
   public:
    ExecutionError(size_t cycle, const std::string &what);
    size_t cycle() const { return cycle_; }

   private:
    size_t cycle_;
};

/// Runs every cycle symbolically with exact probabilities. Throws
/// InvalidPlanError for invalid plans and ExecutionError naming the cycle
/// that failed.
ExecutionReport execute_plan(const ProtocolPlan &plan, const ExecuteOptions &options = {});

/// Ancilla Z_k(4k) with Z_k(n1), then the intermediate with Z_k(n2): Z_k(n1 + n2).
ProtocolPlan gen_exact_plan(uint32_t k, uint32_t n1, uint32_t n2);

/// Grows one state by a fresh Z_k(2k + 1) per cycle.
ProtocolPlan gen_incremental_plan(uint32_t k, uint32_t n_target);

/// Doubles the excess n - 2k by pairing equal states up to the largest power
/// of two, then finishes with incremental cycles.
ProtocolPlan gen_exponential_plan(uint32_t k, uint32_t n_target);

}  // namespace zdistill
