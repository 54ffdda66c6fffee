#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zdistill/dense.h"

namespace zdistill {

struct VerifyConfig {
    uint32_t max_n = 12;
    uint32_t max_k = 3;
    uint64_t seed = 1;
    uint32_t dense_cap = kDenseCap;
    /// Debug: project onto X0 with every weight set to 1. The distillation
    /// sweeps are expected to fail.
    bool corrupt_alpha = false;
};

struct SweepResult {
    std::string name;
    uint64_t passed = 0;
    uint64_t total = 0;
    /// First failing tuple, as text.
    std::optional<std::string> first_failure;

    bool ok() const { return passed == total; }
};

/// Exhaustive cross-checks of the block algebra against the dense oracle.
/// Cells are evaluated in a fixed order, so results depend only on the config.
std::vector<SweepResult> run_verification(const VerifyConfig &config);

SweepResult sweep_vandermonde(uint32_t max_n);
SweepResult sweep_norm(uint32_t max_n, uint32_t dense_cap);
SweepResult sweep_composition(uint32_t max_n, uint32_t dense_cap);
SweepResult sweep_bit_flip(uint32_t max_n, uint32_t dense_cap);
SweepResult sweep_permutation(uint32_t max_n, uint64_t seed, uint32_t dense_cap);
/// All k <= max_k and 2k <= n1, n2 with n1 + n2 <= max_n + 2.
SweepResult sweep_distillation(uint32_t max_n, uint32_t max_k, uint32_t dense_cap,
                               bool corrupt_alpha);
SweepResult sweep_selection(uint32_t max_n, uint32_t max_k, uint64_t seed, uint32_t dense_cap,
                            bool corrupt_alpha);

}  // namespace zdistill
