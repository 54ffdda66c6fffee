#include "zdistill/protocol.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "zdistill/distillation.h"
#include "zdistill/oracle.h"

namespace zdistill {

const char *origin_name(Origin origin) {
    switch (origin) {
        case Origin::input:
            return "input";
        case Origin::ancilla:
            return "ancilla";
        case Origin::intermediate:
            return "intermediate";
    }
    return "?";
}

std::string to_string(const Violation &v) {
    if (v.cycle) {
        return "cycle " + std::to_string(*v.cycle) + ": " + v.message;
    }
    return v.message;
}

namespace {

std::string describe(uint32_t k, uint32_t n) {
    return "Z_" + std::to_string(k) + "(" + std::to_string(n) + ")";
}

}  // namespace

std::optional<StateRef> plan_result(const ProtocolPlan &plan) {
    if (!plan.cycles.empty()) {
        const Cycle &last = plan.cycles.back();
        uint32_t n = last.left.n + last.right.n;
        n = n >= 2 * plan.k ? n - 2 * plan.k : 0;
        return StateRef{last.produced_id, plan.k, n, Origin::intermediate};
    }
    for (const auto *group : {&plan.inputs, &plan.ancillas}) {
        for (const auto &s : *group) {
            if (s.k == plan.target.k && s.n == plan.target.n) {
                return s;
            }
        }
    }
    return std::nullopt;
}

std::vector<Violation> validate_plan(const ProtocolPlan &plan) {
    std::vector<Violation> out;
    auto fail = [&](std::optional<size_t> cycle, std::string message) {
        out.push_back({cycle, std::move(message)});
    };
    if (plan.k == 0) {
        fail(std::nullopt, "k must be at least 1");
    }
    if (plan.target.k != plan.k) {
        fail(std::nullopt, "k mismatch: target has k = " + std::to_string(plan.target.k) +
                               " but the plan has k = " + std::to_string(plan.k));
    }

    std::map<std::string, StateRef> known;
    auto declare = [&](const StateRef &s, Origin expected) {
        if (!known.emplace(s.id, s).second) {
            fail(std::nullopt, "duplicate state id '" + s.id + "'");
        }
        if (s.origin != expected) {
            fail(std::nullopt, "state '" + s.id + "' is listed as " + origin_name(expected) +
                                   " but marked " + origin_name(s.origin));
        }
        if (s.k != plan.k) {
            fail(std::nullopt, "k mismatch: state '" + s.id + "' has k = " + std::to_string(s.k) +
                                   " but the plan has k = " + std::to_string(plan.k));
        }
        if (s.n == 0 || s.n < s.k) {
            fail(std::nullopt, "state '" + s.id + "' is not a valid " + describe(s.k, s.n));
        }
    };
    for (const auto &s : plan.inputs) {
        declare(s, Origin::input);
    }
    for (const auto &s : plan.ancillas) {
        declare(s, Origin::ancilla);
    }

    std::map<std::string, size_t> produced_at;
    for (size_t i = 0; i < plan.cycles.size(); ++i) {
        produced_at.try_emplace(plan.cycles[i].produced_id, i);
    }

    std::set<std::string> consumed;
    for (size_t i = 0; i < plan.cycles.size(); ++i) {
        const Cycle &c = plan.cycles[i];
        bool operands_ok = true;
        std::vector<StateRef> resolved;
        for (const StateRef *op : {&c.left, &c.right}) {
            auto it = known.find(op->id);
            if (it == known.end()) {
                auto later = produced_at.find(op->id);
                if (later != produced_at.end() && later->second >= i) {
                    fail(i, "state '" + op->id + "' is used before it is produced");
                } else {
                    fail(i, "unknown state '" + op->id + "'");
                }
                operands_ok = false;
                continue;
            }
            const StateRef &actual = it->second;
            if (op->k != actual.k || op->n != actual.n || op->origin != actual.origin) {
                fail(i, "operand '" + op->id + "' is described as " + describe(op->k, op->n) +
                            " but the plan defines " + describe(actual.k, actual.n));
            }
            if (actual.n < 2 * actual.k) {
                fail(i, "operand '" + actual.id + "' " + describe(actual.k, actual.n) +
                            " violates n < 2k");
                operands_ok = false;
            }
            if (!consumed.insert(actual.id).second) {
                fail(i, "double consumption of '" + actual.id + "'");
                operands_ok = false;
            }
            resolved.push_back(actual);
        }
        if (resolved.size() == 2 && resolved[0].k != resolved[1].k) {
            fail(i, "k mismatch between operands '" + resolved[0].id + "' and '" + resolved[1].id +
                        "'");
            operands_ok = false;
        }
        if (known.count(c.produced_id) != 0) {
            fail(i, "duplicate state id '" + c.produced_id + "'");
            continue;
        }
        uint32_t n = 0;
        if (operands_ok && resolved.size() == 2) {
            n = resolved[0].n + resolved[1].n - 2 * resolved[0].k;
        }
        known.emplace(c.produced_id, StateRef{c.produced_id, plan.k, n, Origin::intermediate});
    }

    if (out.empty()) {
        auto result = plan_result(plan);
        if (!result) {
            fail(std::nullopt, "target " + describe(plan.target.k, plan.target.n) +
                                   " is not among the plan's states");
        } else if (result->k != plan.target.k || result->n != plan.target.n) {
            fail(std::nullopt, "target mismatch: plan produces " + describe(result->k, result->n) +
                                   " but the target is " +
                                   describe(plan.target.k, plan.target.n));
        }
    }
    return out;
}

PlanShape plan_shape(const ProtocolPlan &plan) {
    std::map<std::string, uint32_t> depth;
    std::map<std::string, StateRef> refs;
    std::map<std::string, std::pair<std::string, std::string>> parents;
    for (const auto *group : {&plan.inputs, &plan.ancillas}) {
        for (const auto &s : *group) {
            depth[s.id] = 0;
            refs[s.id] = s;
        }
    }
    for (const auto &c : plan.cycles) {
        depth[c.produced_id] = 1 + std::max(depth[c.left.id], depth[c.right.id]);
        refs[c.produced_id] =
            StateRef{c.produced_id, plan.k, c.left.n + c.right.n - 2 * plan.k, Origin::intermediate};
        parents[c.produced_id] = {c.left.id, c.right.id};
    }

    PlanShape shape;
    auto result = plan_result(plan);
    if (!result) {
        return shape;
    }
    shape.depth = depth[result->id];
    std::string at = result->id;
    while (true) {
        shape.critical_path.push_back(refs[at]);
        auto it = parents.find(at);
        if (it == parents.end()) {
            break;
        }
        const auto &[left, right] = it->second;
        at = depth[right] > depth[left] ? right : left;
    }
    std::reverse(shape.critical_path.begin(), shape.critical_path.end());
    return shape;
}

namespace {

std::string join_violations(const std::vector<Violation> &violations) {
    std::string s = "invalid plan";
    for (const auto &v : violations) {
        s += "; " + to_string(v);
    }
    return s;
}

}  // namespace

InvalidPlanError::InvalidPlanError(std::vector<Violation> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

ExecutionError::ExecutionError(size_t cycle, const std::string &what)
    : std::runtime_error("cycle " + std::to_string(cycle) + ": " + what), cycle_(cycle) {}

ExecutionReport execute_plan(const ProtocolPlan &plan, const ExecuteOptions &options) {
    auto violations = validate_plan(plan);
    if (!violations.empty()) {
        throw InvalidPlanError(std::move(violations));
    }

    std::map<std::string, BlockSum> live;
    ExecutionReport report;
    for (const auto *group : {&plan.inputs, &plan.ancillas}) {
        for (const auto &s : *group) {
            live.emplace(s.id, z_state(s.k, s.n, s.id));
        }
    }
    for (const auto &s : plan.inputs) {
        report.ledger.input_states += 1;
        report.ledger.input_qubits += s.n;
    }
    for (const auto &s : plan.ancillas) {
        report.ledger.ancilla_qubits += s.n;
    }

    for (size_t i = 0; i < plan.cycles.size(); ++i) {
        const Cycle &c = plan.cycles[i];
        const uint32_t k = plan.k;
        const uint32_t n_out = c.left.n + c.right.n - 2 * k;
        DistillOutcome outcome;
        try {
            DistillOptions opts;
            opts.output_label = c.produced_id;
            outcome = distill_step(live.at(c.left.id), live.at(c.right.id), opts);
        } catch (const std::exception &e) {
            throw ExecutionError(i, e.what());
        }
        if (!outcome.collected || outcome.post_state != z_state(k, n_out, c.produced_id)) {
            throw ExecutionError(i, "post-selected state is not " + describe(k, n_out) + ": " +
                                        outcome.post_state.to_string());
        }

        CycleReport cr;
        cr.index = i;
        cr.left_id = c.left.id;
        cr.right_id = c.right.id;
        cr.produced = StateRef{c.produced_id, k, n_out, Origin::intermediate};
        cr.success_probability = outcome.success_probability;

        if (options.verify_with_oracle && c.left.n + c.right.n <= options.dense_cap) {
            Projection projection =
                oracle_distill(k, c.left.n, c.right.n, outcome.selection, options.dense_cap);
            if (!oracle_agrees(projection, k, n_out, outcome.success_probability,
                               options.dense_cap)) {
                throw ExecutionError(i, "dense oracle disagrees: weight " +
                                            to_fraction_string(projection.weight) +
                                            " vs symbolic " +
                                            to_fraction_string(outcome.success_probability));
            }
            cr.oracle_checked = true;
        }

        live.erase(c.left.id);
        live.erase(c.right.id);
        live.emplace(c.produced_id, std::move(outcome.post_state));
        report.cumulative_success *= cr.success_probability;
        report.cycles.push_back(std::move(cr));
    }

    report.ledger.cycles = plan.cycles.size();
    report.ledger.consumed_qubits = 2ull * plan.k * plan.cycles.size();
    for (const auto &[id, state] : live) {
        report.ledger.output_qubits += state.total_width();
    }
    PlanShape shape = plan_shape(plan);
    report.ledger.depth = shape.depth;
    report.critical_path = std::move(shape.critical_path);
    report.final_state = plan_result(plan);
    if (report.final_state) {
        report.final_block = live.at(report.final_state->id);
    }
    return report;
}

namespace {

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

/// Hands out sequential ids and records the states and cycles of a plan under construction.
class PlanBuilder {
   public:
    explicit PlanBuilder(uint32_t k) { plan_.k = k; }

    StateRef fresh_base() {
        StateRef s{"s" + std::to_string(plan_.inputs.size()), plan_.k, 2 * plan_.k + 1,
                   Origin::input};
        plan_.inputs.push_back(s);
        return s;
    }

    StateRef distill(const StateRef &left, const StateRef &right) {
        StateRef out{"m" + std::to_string(plan_.cycles.size()), plan_.k,
                     left.n + right.n - 2 * plan_.k, Origin::intermediate};
        plan_.cycles.push_back({left, right, out.id});
        return out;
    }

    ProtocolPlan finish(const StateRef &result) {
        plan_.target = {result.k, result.n};
        return std::move(plan_);
    }

   private:
    ProtocolPlan plan_;
};

}  // namespace

ProtocolPlan gen_exact_plan(uint32_t k, uint32_t n1, uint32_t n2) {
    require(k >= 1, "exact plan needs k >= 1");
    require(n1 >= 2 * k && n2 >= 2 * k, "exact plan needs n1, n2 >= 2k");
    ProtocolPlan plan;
    plan.k = k;
    StateRef a{"A", k, n1, Origin::input};
    StateRef b{"B", k, n2, Origin::input};
    StateRef anc{"anc", k, 4 * k, Origin::ancilla};
    StateRef mid{"I", k, n1 + 2 * k, Origin::intermediate};
    plan.inputs = {a, b};
    plan.ancillas = {anc};
    plan.cycles = {{anc, a, mid.id}, {mid, b, "F"}};
    plan.target = {k, n1 + n2};
    return plan;
}

ProtocolPlan gen_incremental_plan(uint32_t k, uint32_t n_target) {
    require(k >= 1, "incremental plan needs k >= 1");
    require(n_target >= 2 * k + 1, "incremental plan needs n_target >= 2k + 1");
    PlanBuilder builder(k);
    StateRef acc = builder.fresh_base();
    while (acc.n < n_target) {
        StateRef fresh = builder.fresh_base();
        acc = builder.distill(acc, fresh);
    }
    return builder.finish(acc);
}

ProtocolPlan gen_exponential_plan(uint32_t k, uint32_t n_target) {
    require(k >= 1, "exponential plan needs k >= 1");
    require(n_target >= 2 * k + 1, "exponential plan needs n_target >= 2k + 1");
    PlanBuilder builder(k);
    // Z_k(2k + e) paired with itself gives Z_k(2k + 2e); a base state has e = 1.
    const uint32_t excess = n_target - 2 * k;
    const uint32_t doubled = std::bit_floor(excess);
    std::function<StateRef(uint32_t)> build = [&](uint32_t e) {
        if (e == 1) {
            return builder.fresh_base();
        }
        StateRef left = build(e / 2);
        StateRef right = build(e / 2);
        return builder.distill(left, right);
    };
    StateRef acc = build(doubled);
    for (uint32_t e = doubled; e < excess; ++e) {
        StateRef fresh = builder.fresh_base();
        acc = builder.distill(acc, fresh);
    }
    return builder.finish(acc);
}

}  // namespace zdistill
