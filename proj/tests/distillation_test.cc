#include "zdistill/distillation.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "zdistill/dense.h"
#include "zdistill/oracle.h"
#include "brute_force.h"

using namespace zdistill;
namespace bf = zdistill::testing;

namespace {

Selection random_selection(std::mt19937_64 &rng, uint32_t k, uint32_t n1, uint32_t n2) {
    std::vector<uint32_t> a(n1);
    std::vector<uint32_t> b(n2);
    std::iota(a.begin(), a.end(), 0u);
    std::iota(b.begin(), b.end(), 0u);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    a.resize(k);
    b.resize(k);
    return {a, b};
}

}  // namespace

TEST(x0, weights_and_norm) {
    X0Spec s1 = x0_spec(1);
    EXPECT_EQ(s1.alpha, (std::vector<Rational>{1, 1}));
    EXPECT_EQ(s1.beta_sq, Rational(1, 2));
    X0Spec s2 = x0_spec(2);
    EXPECT_EQ(s2.alpha, (std::vector<Rational>{1, Rational(1, 4), 1}));
    EXPECT_EQ(s2.beta_sq, Rational(4, 9));
    EXPECT_EQ(x0_spec(3).beta_sq, Rational(9, 20));
    EXPECT_THROW(x0_spec(0), std::invalid_argument);
}

TEST(x0, state_norm_matches_brute_force) {
    for (uint32_t k = 1; k <= 3; ++k) {
        auto [state, spec] = x0_state(k, "a", "b");
        ASSERT_EQ(norm_sq(state), 1 / spec.beta_sq);
        ASSERT_EQ(bf::bf_norm(bf::bf_x0(k)), 1 / spec.beta_sq);
        ASSERT_EQ(bf::bf_from_dense(to_dense(state)).amp, bf::bf_x0(k).amp);
    }
    EXPECT_EQ(norm_sq(x0_state(2, "a", "b").first), Rational(9, 4));
}

TEST(success_probability, examples) {
    EXPECT_EQ(success_probability(1, 3, 3), Rational(2, 9));
    EXPECT_EQ(success_probability(1, 3, 4), Rational(5, 24));
    EXPECT_EQ(success_probability(1, 4, 3), Rational(5, 24));
    EXPECT_EQ(success_probability(2, 5, 5), Rational(1, 15));
    EXPECT_EQ(success_probability(1, 10, 10), Rational(9, 100));
    EXPECT_EQ(success_probability(1, 5, 3), Rational(1, 5));
    EXPECT_THROW(success_probability(1, 1, 3), std::invalid_argument);
    EXPECT_THROW(success_probability(0, 3, 3), std::invalid_argument);
}

TEST(success_probability, decays_with_size) {
    EXPECT_GT(success_probability(1, 3, 3), success_probability(1, 10, 10));
}

TEST(distill_step, w3_w3) {
    DistillOutcome out = distill_step(z_state(1, 3, "A"), z_state(1, 3, "B"));
    EXPECT_TRUE(out.collected);
    EXPECT_EQ(out.post_state, z_state(1, 4, "A"));
    EXPECT_EQ(out.success_probability, Rational(2, 9));
    EXPECT_EQ(out.measured_sector, 1u);
    EXPECT_EQ(out.consumed_qubits, 2u);
    EXPECT_EQ(out.selection.from_a, (std::vector<uint32_t>{0}));
}

TEST(distill_step, z2_5_5_with_label) {
    DistillOptions opts;
    opts.output_label = "out";
    DistillOutcome out = distill_step(z_state(2, 5, "A"), z_state(2, 5, "B"), opts);
    EXPECT_TRUE(out.collected);
    EXPECT_EQ(out.post_state, z_state(2, 6, "out"));
    EXPECT_EQ(out.success_probability, Rational(1, 15));
    EXPECT_EQ(out.consumed_qubits, 4u);
}

TEST(distill_step, scale_of_inputs_is_irrelevant) {
    DistillOutcome out =
        distill_step(z_state(1, 3, "A") * Rational(5), z_state(1, 4, "B") * Rational(-2, 3));
    EXPECT_EQ(out.success_probability, Rational(5, 24));
}

TEST(distill_step, errors) {
    EXPECT_THROW(distill_step(z_state(1, 3, "A"), z_state(2, 5, "B")), std::invalid_argument);
    EXPECT_THROW(distill_step(z_state(2, 3, "A"), z_state(2, 5, "B")), std::invalid_argument);
    EXPECT_THROW(distill_step(z_state(0, 3, "A"), z_state(0, 3, "B")), std::invalid_argument);
    EXPECT_THROW(distill_step(z_state(1, 3, "A") + z_state(2, 3, "A"), z_state(1, 3, "B")),
                 std::invalid_argument);
    DistillOptions bad;
    bad.selection = Selection{{0, 0}, {0}};
    EXPECT_THROW(distill_step(z_state(1, 3, "A"), z_state(1, 3, "B"), bad), std::invalid_argument);
    bad.selection = Selection{{3}, {0}};
    EXPECT_THROW(distill_step(z_state(1, 3, "A"), z_state(1, 3, "B"), bad), std::invalid_argument);
}

TEST(distill_step, closed_form_and_oracle_agree_over_range) {
    for (uint32_t k = 1; k <= 3; ++k) {
        for (uint32_t n1 = 2 * k; n1 <= 8; ++n1) {
            for (uint32_t n2 = 2 * k; n2 <= 8 && n1 + n2 <= 14; ++n2) {
                DistillOutcome out = distill_step(z_state(k, n1, "A"), z_state(k, n2, "B"));
                ASSERT_TRUE(out.collected);
                ASSERT_EQ(out.post_state, z_state(k, n1 + n2 - 2 * k, "A"));
                ASSERT_EQ(out.success_probability, success_probability(k, n1, n2));
                Projection p = oracle_distill(k, n1, n2, out.selection);
                ASSERT_TRUE(oracle_agrees(p, k, n1 + n2 - 2 * k, out.success_probability))
                    << k << "," << n1 << "," << n2;
            }
        }
    }
}

TEST(distill_step, selection_invariance) {
    std::mt19937_64 rng(31);
    for (uint32_t k = 1; k <= 2; ++k) {
        for (uint32_t n1 = 2 * k; n1 <= 6; ++n1) {
            for (uint32_t n2 = 2 * k; n2 <= 6; ++n2) {
                for (int t = 0; t < 5; ++t) {
                    Selection sel = random_selection(rng, k, n1, n2);
                    DistillOptions opts;
                    opts.selection = sel;
                    DistillOutcome out = distill_step(z_state(k, n1, "A"), z_state(k, n2, "B"), opts);
                    ASSERT_EQ(out.success_probability, success_probability(k, n1, n2));
                    ASSERT_TRUE(oracle_agrees(oracle_distill(k, n1, n2, sel), k, n1 + n2 - 2 * k,
                                              out.success_probability));
                }
            }
        }
    }
}

TEST(distill_step, unit_weights_do_not_distill) {
    // All-ones weights on (2, 5, 5): the oracle remainder has amplitudes {1, 4},
    // so it is no single Z-block, and the weight drops to 1/4.
    std::vector<Rational> ones{1, 1, 1};
    DistillOptions opts;
    opts.alpha = ones;
    DistillOutcome out = distill_step(z_state(2, 5, "A"), z_state(2, 5, "B"), opts);
    EXPECT_FALSE(out.collected);
    EXPECT_EQ(out.success_probability, Rational(1, 4));
    Projection p = oracle_distill(2, 5, 5, out.selection, kDenseCap, ones);
    EXPECT_EQ(p.weight, Rational(1, 4));
    EXPECT_FALSE(oracle_agrees(p, 2, 6, p.weight));
    std::set<Rational> amps;
    for (const auto &[bits, a] : p.remainder.amplitudes) {
        amps.insert(a);
    }
    EXPECT_EQ(amps, (std::set<Rational>{1, 4}));
}
