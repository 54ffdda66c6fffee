#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zdistill/combinatorics.h"
#include "zdistill/zstate.h"

namespace zdistill {

/// The projection target on k qubits of A and k qubits of B:
/// sum_j alpha_j Z_{k-j}^A(k) Z_j^B(k), with beta_sq its inverse squared norm.
struct X0Spec {
    uint32_t k = 0;
    std::vector<Rational> alpha;
    Rational beta_sq;
};

/// Standard weights alpha_j = C(k, j)^-2.
X0Spec x0_spec(uint32_t k);

/// Same structure with caller-chosen weights; used for negative controls.
X0Spec x0_spec_with_alpha(uint32_t k, std::vector<Rational> alpha);

/// Unnormalized X0 state over registers labelled `label_a` and `label_b`,
/// each of width k. Rejects k == 0.
std::pair<BlockSum, X0Spec> x0_state(uint32_t k, const std::string &label_a,
                                     const std::string &label_b);

BlockSum x0_state(const X0Spec &spec, const std::string &label_a, const std::string &label_b);

/// Which qubits (by index within each input register) feed the projection.
struct Selection {
    std::vector<uint32_t> from_a;
    std::vector<uint32_t> from_b;
};

struct DistillOptions {
    /// Defaults to the first k qubits of each input.
    std::optional<Selection> selection;
    /// Label of the distilled register; defaults to the label of the first input.
    std::optional<std::string> output_label;
    /// Overrides the X0 weights. Anything but C(k, j)^-2 generally breaks collection.
    std::optional<std::vector<Rational>> alpha;
};

struct DistillOutcome {
    /// Unnormalized state left after post-selection. On success this is the
    /// single block Z_k(N1 + N2 - 2k).
    BlockSum post_state;
    Rational success_probability;
    /// Excitation sector of the 2k measured qubits that survives (always k).
    uint32_t measured_sector = 0;
    uint32_t consumed_qubits = 0;
    /// False when the contracted state does not regroup into one Z-block.
    bool collected = false;
    Selection selection;
};

/// Post-selected 2k-qubit projection of Z_k(N1) (x) Z_k(N2) onto X0(2k).
///
/// Both inputs must be a single block c * Z_k(N) with equal k >= 1 and
/// N >= 2k. The computation splits each input at k, contracts the selected
/// halves against X0 and merges what is left.
DistillOutcome distill_step(const BlockSum &a, const BlockSum &b, const DistillOptions &options = {});

/// beta_sq * C(n1 + n2 - 2k, k) / (C(n1, k) C(n2, k)).
Rational success_probability(uint32_t k, uint32_t n1, uint32_t n2);

}  // namespace zdistill
