#include "zdistill/plan_io.h"

#include "gtest/gtest.h"

using namespace zdistill;
using nlohmann::ordered_json;

namespace {

const char *kW3W3 = R"({
  "schema_version": 1, "mode": "explicit", "k": 1, "target_n": 4,
  "inputs": [{"id": "s0", "n": 3}, {"id": "s1", "n": 3}],
  "ancillas": [],
  "cycles": [{"left": "s0", "right": "s1", "produced": "m0"}],
  "verify_with_oracle": false
})";

}  // namespace

TEST(parse_plan_document, explicit_example) {
    PlanDocument doc = parse_plan_document_text(kW3W3);
    EXPECT_EQ(doc.mode, PlanMode::explicit_cycles);
    ASSERT_EQ(doc.inputs.size(), 2u);
    EXPECT_EQ(doc.inputs[0], (StateRef{"s0", 1, 3, Origin::input}));
    ProtocolPlan plan = to_plan(doc);
    EXPECT_TRUE(validate_plan(plan).empty());
    EXPECT_EQ(plan.target, (Target{1, 4}));
}

TEST(parse_plan_document, generator_modes) {
    PlanDocument exact = parse_plan_document_text(
        R"({"schema_version": 1, "mode": "exact", "k": 2, "target_n": 11, "n1": 5, "n2": 6})");
    EXPECT_EQ(to_plan(exact), gen_exact_plan(2, 5, 6));
    PlanDocument exp = parse_plan_document_text(
        R"({"schema_version": 1, "mode": "exponential", "k": 1, "target_n": 10})");
    EXPECT_EQ(to_plan(exp), gen_exponential_plan(1, 10));
}

TEST(parse_plan_document, rejects_structural_errors) {
    const char *bad[] = {
        "not json",
        R"([])",
        R"({"schema_version": 1, "mode": "incremental", "k": 1, "target_n": 6, "extra": 1})",
        R"({"schema_version": 2, "mode": "incremental", "k": 1, "target_n": 6})",
        R"({"schema_version": 1, "mode": "spiral", "k": 1, "target_n": 6})",
        R"({"schema_version": 1, "mode": "incremental", "target_n": 6})",
        R"({"schema_version": 1, "mode": "incremental", "k": -1, "target_n": 6})",
        R"({"schema_version": 1, "mode": "incremental", "k": 1.5, "target_n": 6})",
        R"({"schema_version": 1, "mode": "incremental", "k": 1, "target_n": 6, "n1": 3})",
        R"({"schema_version": 1, "mode": "exact", "k": 1, "target_n": 6, "n1": 3})",
        R"({"schema_version": 1, "mode": "incremental", "k": 1, "target_n": 6, "verify_with_oracle": 1})",
        R"({"schema_version": 1, "mode": "explicit", "k": 1, "target_n": 3,
            "inputs": [{"id": "s0", "n": 3, "color": "red"}], "cycles": []})",
        R"({"schema_version": 1, "mode": "explicit", "k": 1, "target_n": 3,
            "inputs": [{"id": "", "n": 3}], "cycles": []})",
    };
    for (const char *text : bad) {
        EXPECT_THROW(parse_plan_document_text(text), DocumentError) << text;
    }
}

TEST(to_plan, generator_preconditions_become_invalid_plan) {
    PlanDocument doc = parse_plan_document_text(
        R"({"schema_version": 1, "mode": "incremental", "k": 2, "target_n": 3})");
    EXPECT_THROW(to_plan(doc), InvalidPlanError);
}

TEST(to_plan, unknown_ids_reported_by_validation) {
    PlanDocument doc = parse_plan_document_text(R"({
      "schema_version": 1, "mode": "explicit", "k": 1, "target_n": 4,
      "inputs": [{"id": "s0", "n": 3}],
      "cycles": [{"left": "s0", "right": "ghost", "produced": "m0"}]})");
    auto vs = validate_plan(to_plan(doc));
    ASSERT_FALSE(vs.empty());
    EXPECT_NE(to_string(vs[0]).find("unknown state 'ghost'"), std::string::npos);
}

TEST(plan_document, round_trip_property) {
    for (uint32_t k = 1; k <= 3; ++k) {
        for (uint32_t n = 2 * k + 1; n <= 20; ++n) {
            for (const ProtocolPlan &plan : {gen_incremental_plan(k, n), gen_exponential_plan(k, n)}) {
                PlanDocument doc = to_document(plan);
                std::string text = to_json(doc).dump(2);
                PlanDocument back = parse_plan_document_text(text);
                ASSERT_EQ(back, doc);
                ASSERT_EQ(to_plan(back), plan);
                ASSERT_EQ(to_json(back).dump(2), text);
            }
        }
    }
}

TEST(plan_document, key_order_is_stable) {
    PlanDocument doc;
    doc.mode = PlanMode::exact;
    doc.k = 1;
    doc.target_n = 6;
    doc.n1 = 3;
    doc.n2 = 3;
    EXPECT_EQ(to_json(doc).dump(),
              R"({"schema_version":1,"mode":"exact","k":1,"target_n":6,"n1":3,"n2":3,"verify_with_oracle":false})");
}

TEST(fraction_json, small_and_big) {
    EXPECT_EQ(fraction_json(Rational(2, 9)).dump(), R"({"num":2,"den":9})");
    Rational big(BigNat(1), binom(100, 50));
    ordered_json j = fraction_json(big);
    EXPECT_TRUE(j["den"].is_string());
    EXPECT_EQ(fraction_from_json(j), big);
    EXPECT_EQ(fraction_from_json(fraction_json(Rational(-5, 419904))), Rational(-5, 419904));
    EXPECT_THROW(fraction_from_json(ordered_json::parse(R"({"num":1,"den":0})")), DocumentError);
}

TEST(report_json, exact_k1) {
    ExecutionReport r = execute_plan(gen_exact_plan(1, 3, 3));
    ordered_json j = report_json(r);
    EXPECT_EQ(j["cumulative_success_probability"].dump(), R"({"num":1,"den":24})");
    EXPECT_EQ(j["final_state"]["n"], 6);
    EXPECT_EQ(j["ledger"]["ancilla_qubits"], 4);
    EXPECT_EQ(j["ledger"]["consumed_qubits"], 4);
    EXPECT_EQ(j["cycles"].size(), 2u);
}

TEST(report_text, ends_with_final_state) {
    ProtocolPlan plan = gen_exact_plan(1, 3, 3);
    std::string text = report_text(plan, execute_plan(plan, {true, kDenseCap}));
    EXPECT_NE(text.find("p = 5/24 (approx 0.208333)  [oracle ok]"), std::string::npos);
    EXPECT_NE(text.find("cumulative success probability: 1/24"), std::string::npos);
    const std::string tail = "final state: Z_1(6)\n";
    ASSERT_GE(text.size(), tail.size());
    EXPECT_EQ(text.substr(text.size() - tail.size()), tail);
}
