#include "zdistill/cli.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "zdistill/graph.h"
#include "zdistill/plan_io.h"

namespace zdistill::cli {

namespace {

std::optional<std::string> read_file(const std::string &path, std::ostream &err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot read '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_violations(const InvalidPlanError &e, std::ostream &err) {
    err << "error: invalid plan\n";
    for (const auto &v : e.violations()) {
        err << "  " << to_string(v) << "\n";
    }
}

/// Parses and validates; returns an exit code on failure.
std::variant<ProtocolPlan, int> load_plan(const std::string &text, PlanDocument &doc,
                                          std::ostream &err) {
    try {
        doc = parse_plan_document_text(text);
    } catch (const DocumentError &e) {
        err << "error: malformed plan document: " << e.what() << "\n";
        return kBadInput;
    }
    try {
        ProtocolPlan plan = to_plan(doc);
        auto violations = validate_plan(plan);
        if (!violations.empty()) {
            throw InvalidPlanError(std::move(violations));
        }
        return plan;
    } catch (const InvalidPlanError &e) {
        print_violations(e, err);
        return kInvalidPlan;
    }
}

}  // namespace

int run_document(const std::string &text, const RunFlags &flags, std::ostream &out,
                 std::ostream &err) {
    PlanDocument doc;
    auto loaded = load_plan(text, doc, err);
    if (auto *code = std::get_if<int>(&loaded)) {
        return *code;
    }
    const ProtocolPlan &plan = std::get<ProtocolPlan>(loaded);

    ExecuteOptions options;
    options.verify_with_oracle = flags.verify_with_oracle || doc.verify_with_oracle;
    options.dense_cap = flags.dense_cap.value_or(doc.dense_cap.value_or(kDenseCap));
    if (options.dense_cap > 63) {
        err << "error: dense cap must be at most 63\n";
        return kBadInput;
    }
    try {
        ExecutionReport report = execute_plan(plan, options);
        if (flags.report == ReportFormat::json) {
            out << report_json(report).dump(2) << "\n";
        } else {
            out << report_text(plan, report);
        }
    } catch (const InvalidPlanError &e) {
        print_violations(e, err);
        return kInvalidPlan;
    } catch (const ExecutionError &e) {
        err << "error: execution failed at " << e.what() << "\n";
        return kRuntimeError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return kOk;
}

int cmd_run(const std::string &plan_path, const RunFlags &flags, std::ostream &out,
            std::ostream &err) {
    auto text = read_file(plan_path, err);
    if (!text) {
        return kBadInput;
    }
    return run_document(*text, flags, out, err);
}

int cmd_verify(const VerifyConfig &config, std::ostream &out, std::ostream &err) {
    if (config.dense_cap > 63) {
        err << "error: dense cap must be at most 63\n";
        return kBadInput;
    }
    if (config.max_n > config.dense_cap) {
        err << "error: --max-n " << config.max_n << " exceeds the dense cap " << config.dense_cap
            << "\n";
        return kBadInput;
    }
    if (config.max_k < 1) {
        err << "error: --max-k must be at least 1\n";
        return kBadInput;
    }
    std::vector<SweepResult> results;
    try {
        results = run_verification(config);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    bool all = true;
    for (const auto &r : results) {
        out << r.name << ": " << r.passed << "/" << r.total << " passed";
        if (!r.ok()) {
            out << "  FAILED first at " << *r.first_failure;
            all = false;
        }
        out << "\n";
    }
    out << (all ? "all sweeps passed" : "verification FAILED") << "\n";
    return all ? kOk : kVerificationFailed;
}

int graph_document(const std::string &text, std::ostream &out, std::ostream &err) {
    PlanDocument doc;
    auto loaded = load_plan(text, doc, err);
    if (auto *code = std::get_if<int>(&loaded)) {
        return *code;
    }
    out << plan_to_dot(std::get<ProtocolPlan>(loaded));
    return kOk;
}

int cmd_graph(const std::string &plan_path, std::ostream &out, std::ostream &err) {
    auto text = read_file(plan_path, err);
    if (!text) {
        return kBadInput;
    }
    return graph_document(*text, out, err);
}

int cmd_plan(const PlanRequest &request, std::ostream &out, std::ostream &err) {
    auto mode = parse_mode(request.mode);
    if (!mode || *mode == PlanMode::explicit_cycles) {
        err << "error: mode must be exact, incremental or exponential\n";
        return kBadInput;
    }
    PlanDocument doc;
    doc.mode = *mode;
    doc.k = request.k;
    try {
        if (*mode == PlanMode::exact) {
            if (!request.n1 || !request.n2) {
                err << "error: exact mode needs --n1 and --n2\n";
                return kBadInput;
            }
            doc.n1 = request.n1;
            doc.n2 = request.n2;
            doc.target_n = *request.n1 + *request.n2;
        } else {
            if (!request.n) {
                err << "error: " << request.mode << " mode needs --n\n";
                return kBadInput;
            }
            doc.target_n = *request.n;
        }
        ProtocolPlan plan = to_plan(doc);
        if (!request.compact) {
            doc = to_document(plan);
        }
    } catch (const InvalidPlanError &e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
    out << to_json(doc).dump(2) << "\n";
    return kOk;
}

}  // namespace zdistill::cli
