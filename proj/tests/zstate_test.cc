#include "zdistill/zstate.h"

#include <random>

#include "gtest/gtest.h"
#include "zdistill/dense.h"
#include "brute_force.h"

using namespace zdistill;
using zdistill::testing::bf_z;

namespace {

BlockSum two_block(uint32_t ka, uint32_t na, uint32_t kb, uint32_t nb) {
    return tensor(z_state(ka, na, "A"), z_state(kb, nb, "B"));
}

/// Random small BlockSum over registers A (width wa) and B (width wb).
BlockSum random_sum(std::mt19937_64 &rng, uint32_t wa, uint32_t wb) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> terms(1, 4);
    BlockSum s = BlockSum::zero({{"A", wa}, {"B", wb}});
    int count = terms(rng);
    for (int i = 0; i < count; ++i) {
        uint32_t ka = std::uniform_int_distribution<uint32_t>(0, wa)(rng);
        uint32_t kb = std::uniform_int_distribution<uint32_t>(0, wb)(rng);
        s = s + two_block(ka, wa, kb, wb) * Rational(coeff(rng), 1 + (rng() % 3));
    }
    return s;
}

}  // namespace

TEST(z_state, w_state_has_three_terms) {
    BlockSum w = z_state(1, 3, "A");
    ASSERT_EQ(w.terms().size(), 1u);
    EXPECT_EQ(w.terms()[0].coeff, 1);
    EXPECT_EQ(to_dense(w).dump(), "001 1\n010 1\n100 1\n");
}

TEST(z_state, edge_sectors) {
    EXPECT_EQ(to_dense(z_state(0, 4, "A")).dump(), "0000 1\n");
    EXPECT_EQ(to_dense(z_state(2, 2, "A")).dump(), "11 1\n");
    EXPECT_THROW(z_state(3, 2, "A"), std::invalid_argument);
}

TEST(z_state, text_form) {
    EXPECT_EQ(z_state(1, 3, "A").to_string(), "1 * Z_1^A(3)");
    EXPECT_EQ(BlockSum::zero({{"A", 2}}).to_string(), "0");
    EXPECT_EQ(BlockSum::unit().to_string(), "1 * I");
    BlockSum s = (two_block(1, 2, 0, 1) * Rational(1, 2)) + two_block(0, 2, 1, 1);
    EXPECT_EQ(s.to_string(), "1 * Z_0^A(2) ⊗ Z_1^B(1)\n1/2 * Z_1^A(2) ⊗ Z_0^B(1)");
}

TEST(tensor, single_term_two_blocks) {
    BlockSum t = tensor(z_state(1, 3, "A"), z_state(1, 3, "B"));
    ASSERT_EQ(t.terms().size(), 1u);
    EXPECT_EQ(t.terms()[0].product.blocks.size(), 2u);
    EXPECT_EQ(t.registers().size(), 2u);
}

TEST(tensor, unit_is_identity) {
    BlockSum a = z_state(2, 5, "A") * Rational(3, 7);
    EXPECT_EQ(tensor(a, BlockSum::unit()), a);
    EXPECT_EQ(tensor(BlockSum::unit(), a), a);
}

TEST(tensor, bilinear) {
    BlockSum x = z_state(1, 2, "A");
    BlockSum y = z_state(2, 2, "A") * Rational(-1, 3);
    BlockSum z = z_state(1, 3, "B");
    EXPECT_EQ(tensor(x + y, z), tensor(x, z) + tensor(y, z));
    EXPECT_EQ(tensor(x + y, z).terms().size(), 2u);
}

TEST(tensor, overlapping_labels_rejected) {
    EXPECT_THROW(tensor(z_state(1, 3, "A"), z_state(1, 2, "A")), std::invalid_argument);
}

TEST(inner_product, examples) {
    EXPECT_EQ(inner_product(z_state(3, 6, "A"), z_state(3, 6, "A")), 20);
    EXPECT_EQ(inner_product(z_state(1, 3, "A"), z_state(2, 3, "A")), 0);
    // Frozen from the brute-force vector of W(2) (x) W(2).
    auto bf = zdistill::testing::bf_tensor(bf_z(1, 2), bf_z(1, 2));
    ASSERT_EQ(zdistill::testing::bf_norm(bf), 4);
    EXPECT_EQ(norm_sq(two_block(1, 2, 1, 2)), 4);
}

TEST(inner_product, mismatched_registers) {
    EXPECT_THROW(inner_product(z_state(1, 3, "A"), z_state(1, 3, "B")), std::invalid_argument);
    EXPECT_THROW(inner_product(z_state(1, 3, "A"), z_state(1, 4, "A")), std::invalid_argument);
}

TEST(norm_sq, examples) {
    EXPECT_EQ(norm_sq(z_state(2, 4, "A")), 6);
    EXPECT_EQ(norm_sq(BlockSum::zero({{"A", 3}})), 0);
}

TEST(norm_sq, equals_binomial) {
    for (uint32_t n = 0; n <= 16; ++n) {
        for (uint32_t k = 0; k <= n; ++k) {
            ASSERT_EQ(norm_sq(z_state(k, n, "A")), Rational(binom(n, k)));
        }
    }
}

TEST(inner_product, sectors_orthogonal) {
    for (uint32_t n = 0; n <= 10; ++n) {
        for (uint32_t j = 0; j <= n; ++j) {
            for (uint32_t l = 0; l <= n; ++l) {
                if (j != l) {
                    ASSERT_EQ(inner_product(z_state(j, n, "A"), z_state(l, n, "A")), 0);
                }
            }
        }
    }
}

TEST(inner_product, matches_dense_for_random_sums) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        BlockSum a = random_sum(rng, 3, 2);
        BlockSum b = random_sum(rng, 3, 2);
        ASSERT_EQ(inner_product(a, b), dense_inner(to_dense(a), to_dense(b)));
    }
}

TEST(contract, partial_bra) {
    // <Z_1^A(1)| (Z_1^A(1) Z_0^B(2) + Z_0^A(1) Z_1^B(2)) = Z_0^B(2)
    BlockSum s = split_register(z_state(1, 3, "q"), "q", 1, {"A", "B"});
    BlockSum r = contract(z_state(1, 1, "A"), s);
    EXPECT_EQ(r, z_state(0, 2, "B"));
    EXPECT_THROW(contract(z_state(1, 2, "A"), s), std::invalid_argument);
}

TEST(split_register, w3_at_one) {
    BlockSum s = split_register(z_state(1, 3, "q"), "q", 1, {"L", "R"});
    BlockSum expected = tensor(z_state(1, 1, "L"), z_state(0, 2, "R")) +
                        tensor(z_state(0, 1, "L"), z_state(1, 2, "R"));
    EXPECT_EQ(s, expected);
}

TEST(split_register, at_zero_gives_empty_left) {
    BlockSum s = split_register(z_state(2, 5, "q"), "q", 0, {"L", "R"});
    ASSERT_EQ(s.terms().size(), 1u);
    EXPECT_EQ(s, tensor(z_state(0, 0, "L"), z_state(2, 5, "R")));
}

TEST(split_register, z2_4_at_two) {
    BlockSum s = split_register(z_state(2, 4, "q"), "q", 2, {"L", "R"});
    ASSERT_EQ(s.terms().size(), 3u);
    for (const auto &t : s.terms()) {
        EXPECT_EQ(t.coeff, 1);
    }
    // 1 + 4 + 1 dense summands, all distinct.
    EXPECT_EQ(to_dense(s).amplitudes.size(), 6u);
    EXPECT_TRUE(same_amplitudes(to_dense(s), dense_z(2, 4)));
}

TEST(split_register, errors) {
    BlockSum z = z_state(1, 3, "q");
    EXPECT_THROW(split_register(z, "x", 1, {"L", "R"}), std::invalid_argument);
    EXPECT_THROW(split_register(z, "q", 1, {"L", "L"}), std::invalid_argument);
    EXPECT_THROW(split_register(z, "q", 4, {"L", "R"}), std::invalid_argument);
    BlockSum two = tensor(z, z_state(1, 2, "B"));
    EXPECT_THROW(split_register(two, "q", 1, {"B", "R"}), std::invalid_argument);
}

TEST(split_register, exact_for_all_small_cases) {
    for (uint32_t N = 0; N <= 12; ++N) {
        for (uint32_t k = 0; k <= N; ++k) {
            DenseState expected = dense_z(k, N);
            for (uint32_t M = 0; M <= N; ++M) {
                BlockSum s = split_register(z_state(k, N, "q"), "q", M, {"L", "R"});
                ASSERT_TRUE(same_amplitudes(to_dense(s), expected)) << N << "," << k << "," << M;
                size_t nonzero = 0;
                for (uint32_t j = 0; j <= k; ++j) {
                    nonzero += binom(M, j) * binom(N - M, k - j) != 0 ? 1 : 0;
                }
                ASSERT_EQ(s.terms().size(), nonzero);
            }
        }
    }
}

TEST(split_register, preserves_other_registers) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        BlockSum a = random_sum(rng, 4, 2);
        // "A" precedes "B", and L < R both precede "B" too, so the qubit order is unchanged.
        BlockSum s = split_register(a, "A", 1 + i % 3, {"A0", "A1"});
        ASSERT_EQ(to_dense(s).amplitudes, to_dense(a).amplitudes);
    }
}

TEST(merge_registers, inverts_split) {
    BlockSum s = split_register(z_state(1, 3, "q"), "q", 1, {"L", "R"});
    MergeResult m = merge_registers(s, "L", "R", "q");
    EXPECT_TRUE(m.collected);
    EXPECT_EQ(m.state, z_state(1, 3, "q"));
}

TEST(merge_registers, incomplete_pattern_not_collectible) {
    BlockSum single = tensor(z_state(1, 1, "L"), z_state(1, 2, "R"));
    MergeResult m = merge_registers(single, "L", "R", "q");
    EXPECT_FALSE(m.collected);
    EXPECT_EQ(m.state, single);
}

TEST(merge_registers, unequal_coefficients_not_collectible) {
    BlockSum s = tensor(z_state(1, 1, "L"), z_state(0, 2, "R")) +
                 tensor(z_state(0, 1, "L"), z_state(1, 2, "R")) * Rational(2);
    EXPECT_FALSE(merge_registers(s, "L", "R", "q").collected);
}

TEST(merge_registers, collects_scaled_sum_of_splits) {
    // c * sum_j Z_j^A(N1-k) Z_{k-j}^B(N2-k) -> c * Z_k(N1+N2-2k), here k=2, N1=5, N2=6.
    const uint32_t k = 2;
    BlockSum s = BlockSum::zero({{"A", 3}, {"B", 4}});
    for (uint32_t j = 0; j <= k; ++j) {
        s = s + tensor(z_state(j, 3, "A"), z_state(k - j, 4, "B"));
    }
    Rational c(4, 9);
    MergeResult m = merge_registers(s * c, "A", "B", "out");
    EXPECT_TRUE(m.collected);
    EXPECT_EQ(m.state, z_state(k, 7, "out") * c);
}

TEST(merge_registers, groups_by_remaining_registers) {
    BlockSum s = tensor(split_register(z_state(2, 4, "q"), "q", 1, {"L", "R"}),
                        z_state(1, 2, "C") + z_state(2, 2, "C"));
    MergeResult m = merge_registers(s, "L", "R", "q");
    EXPECT_TRUE(m.collected);
    EXPECT_EQ(m.state, tensor(z_state(2, 4, "q"), z_state(1, 2, "C") + z_state(2, 2, "C")));
}

TEST(merge_registers, errors) {
    BlockSum s = split_register(z_state(1, 3, "q"), "q", 1, {"L", "R"});
    EXPECT_THROW(merge_registers(s, "L", "X", "q"), std::invalid_argument);
    EXPECT_THROW(merge_registers(s, "L", "L", "q"), std::invalid_argument);
}

TEST(merge_registers, round_trip_property) {
    for (uint32_t N = 0; N <= 12; ++N) {
        for (uint32_t k = 0; k <= N; ++k) {
            for (uint32_t M = 0; M <= N; ++M) {
                BlockSum z = z_state(k, N, "q");
                MergeResult m = merge_registers(split_register(z, "q", M, {"L", "R"}), "L", "R", "q");
                ASSERT_TRUE(m.collected);
                ASSERT_EQ(m.state, z);
            }
        }
    }
}

TEST(bit_flip, examples) {
    EXPECT_EQ(bit_flip(z_state(1, 3, "A")), z_state(2, 3, "A"));
    EXPECT_EQ(bit_flip(z_state(3, 6, "A")), z_state(3, 6, "A"));
}

TEST(bit_flip, involution_and_norm) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        BlockSum a = random_sum(rng, 3, 3);
        ASSERT_EQ(bit_flip(bit_flip(a)), a);
        ASSERT_EQ(norm_sq(bit_flip(a)), norm_sq(a));
        ASSERT_EQ(to_dense(bit_flip(a)), dense_bit_flip(to_dense(a)));
    }
}

TEST(canonical_form, idempotent_and_order_independent) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        BlockSum a = random_sum(rng, 2, 3);
        std::vector<BlockSum::Term> terms = a.terms();
        std::shuffle(terms.begin(), terms.end(), rng);
        // Split one term into two halves so merging is exercised too.
        if (!terms.empty()) {
            terms.push_back(terms.front());
            terms.front().coeff /= 2;
            terms.back().coeff /= 2;
        }
        BlockSum again = BlockSum::from_terms(a.registers(), terms);
        ASSERT_EQ(again, a);
        ASSERT_EQ(BlockSum::from_terms(again.registers(), again.terms()), again);
    }
}

TEST(canonical_form, cancels_to_zero) {
    BlockSum z = z_state(1, 3, "A");
    BlockSum zero = z + z * Rational(-1);
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(zero.registers().size(), 1u);
}
