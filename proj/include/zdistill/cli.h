#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "zdistill/dense.h"
#include "zdistill/verify.h"

namespace zdistill::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kBadInput = 2,
    kInvalidPlan = 3,
    kRuntimeError = 4,
};

enum class ReportFormat { text, json };

struct RunFlags {
    ReportFormat report = ReportFormat::text;
    /// Forces oracle cross-checks on regardless of the document's flag.
    bool verify_with_oracle = false;
    std::optional<uint32_t> dense_cap;
};

int cmd_run(const std::string &plan_path, const RunFlags &flags, std::ostream &out,
            std::ostream &err);

/// Same as cmd_run on an in-memory document.
int run_document(const std::string &text, const RunFlags &flags, std::ostream &out,
                 std::ostream &err);

int cmd_verify(const VerifyConfig &config, std::ostream &out, std::ostream &err);

int cmd_graph(const std::string &plan_path, std::ostream &out, std::ostream &err);
int graph_document(const std::string &text, std::ostream &out, std::ostream &err);

struct PlanRequest {
    std::string mode;
    uint32_t k = 1;
    std::optional<uint32_t> n;
    std::optional<uint32_t> n1;
    std::optional<uint32_t> n2;
    /// Emit the generator parameters rather than the materialized cycles.
    bool compact = false;
};

int cmd_plan(const PlanRequest &request, std::ostream &out, std::ostream &err);

}  // namespace zdistill::cli
