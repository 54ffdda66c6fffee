// Writes <name>.expected.json next to every <name>.plan.json in a directory.
// Probabilities come from dense-oracle projections only; the symbolic
// distillation path is never consulted. Existing "notes" are preserved.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "zdistill/oracle.h"
#include "zdistill/plan_io.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace zdistill;

namespace {

std::string slurp(const fs::path &path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ExecutionReport oracle_report(const ProtocolPlan &plan) {
    auto violations = validate_plan(plan);
    if (!violations.empty()) {
        throw InvalidPlanError(std::move(violations));
    }
    ExecutionReport report;
    std::map<std::string, uint32_t> live;
    for (const auto &s : plan.inputs) {
        live[s.id] = s.n;
        report.ledger.input_states += 1;
        report.ledger.input_qubits += s.n;
    }
    for (const auto &s : plan.ancillas) {
        live[s.id] = s.n;
        report.ledger.ancilla_qubits += s.n;
    }
    const uint32_t k = plan.k;
    for (size_t i = 0; i < plan.cycles.size(); ++i) {
        const Cycle &c = plan.cycles[i];
        Selection sel;
        sel.from_a.resize(k);
        sel.from_b.resize(k);
        std::iota(sel.from_a.begin(), sel.from_a.end(), 0u);
        std::iota(sel.from_b.begin(), sel.from_b.end(), 0u);
        Projection p = oracle_distill(k, c.left.n, c.right.n, sel);
        const uint32_t n_out = c.left.n + c.right.n - 2 * k;
        auto ratio = proportionality(p.remainder, dense_z(k, n_out));
        if (!ratio || *ratio == 0) {
            throw std::runtime_error("cycle " + std::to_string(i) + " does not leave a Z-state");
        }
        CycleReport cr;
        cr.index = i;
        cr.left_id = c.left.id;
        cr.right_id = c.right.id;
        cr.produced = StateRef{c.produced_id, k, n_out, Origin::intermediate};
        cr.success_probability = p.weight;
        report.cumulative_success *= p.weight;
        report.cycles.push_back(cr);
        live.erase(c.left.id);
        live.erase(c.right.id);
        live[c.produced_id] = n_out;
        report.ledger.consumed_qubits += 2 * k;
    }
    report.ledger.cycles = plan.cycles.size();
    for (const auto &[id, n] : live) {
        report.ledger.output_qubits += n;
    }
    PlanShape shape = plan_shape(plan);
    report.ledger.depth = shape.depth;
    report.critical_path = shape.critical_path;
    report.final_state = plan_result(plan);
    return report;
}

}  // namespace

int main(int argc, char **argv) {
    if (argc != 2) {
        std::cerr << "usage: make_golden <golden-dir>\n";
        return 2;
    }
    const std::string suffix = ".plan.json";
    for (const auto &entry : fs::directory_iterator(argv[1])) {
        const std::string name = entry.path().filename().string();
        if (name.size() <= suffix.size() || !name.ends_with(suffix)) {
            continue;
        }
        const std::string stem = name.substr(0, name.size() - suffix.size());
        const fs::path out_path = entry.path().parent_path() / (stem + ".expected.json");
        try {
            ProtocolPlan plan = to_plan(parse_plan_document_text(slurp(entry.path())));
            ordered_json expected;
            if (fs::exists(out_path)) {
                ordered_json old = ordered_json::parse(slurp(out_path));
                if (old.contains("notes")) {
                    expected["notes"] = old["notes"];
                }
            }
            const ordered_json report = report_json(oracle_report(plan));
            for (const auto &[key, value] : report.items()) {
                expected[key] = value;
            }
            std::ofstream(out_path) << expected.dump(2) << "\n";
            std::cout << "wrote " << out_path.string() << "\n";
        } catch (const std::exception &e) {
            std::cerr << name << ": " << e.what() << "\n";
            return 4;
        }
    }
    return 0;
}
