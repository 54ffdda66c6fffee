#include "zdistill/distillation.h"

#include <algorithm>
#include <stdexcept>

namespace zdistill {

namespace {

constexpr const char *kSelA = "a.sel";
constexpr const char *kRestA = "a.rest";
constexpr const char *kSelB = "b.sel";
constexpr const char *kRestB = "b.rest";

void check_selection(const std::vector<uint32_t> &picked, uint32_t k, uint32_t width,
                     const char *side) {
    std::vector<uint32_t> sorted = picked;
    std::sort(sorted.begin(), sorted.end());
    bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (picked.size() != k || !distinct || (!sorted.empty() && sorted.back() >= width)) {
        throw std::invalid_argument(std::string("distill_step: selection from ") + side +
                                    " must name k distinct qubits of that input");
    }
}

Selection first_k(uint32_t k) {
    Selection s;
    for (uint32_t i = 0; i < k; ++i) {
        s.from_a.push_back(i);
        s.from_b.push_back(i);
    }
    return s;
}

}  // namespace

X0Spec x0_spec_with_alpha(uint32_t k, std::vector<Rational> alpha) {
    if (k == 0) {
        throw std::invalid_argument("X0 needs k >= 1");
    }
    if (alpha.size() != k + 1) {
        throw std::invalid_argument("X0 needs exactly k + 1 weights");
    }
    Rational norm = 0;
    for (uint32_t j = 0; j <= k; ++j) {
        Rational c(binom(k, j));
        norm += alpha[j] * alpha[j] * c * c;
    }
    if (norm == 0) {
        throw std::invalid_argument("X0 weights are all zero");
    }
    return X0Spec{k, std::move(alpha), 1 / norm};
}

X0Spec x0_spec(uint32_t k) {
    if (k == 0) {
        throw std::invalid_argument("X0 needs k >= 1");
    }
    std::vector<Rational> alpha;
    for (uint32_t j = 0; j <= k; ++j) {
        Rational c(binom(k, j));
        alpha.push_back(1 / (c * c));
    }
    return x0_spec_with_alpha(k, std::move(alpha));
}

BlockSum x0_state(const X0Spec &spec, const std::string &label_a, const std::string &label_b) {
    RegisterId ra{label_a, spec.k};
    RegisterId rb{label_b, spec.k};
    std::vector<BlockSum::Term> terms;
    for (uint32_t j = 0; j <= spec.k; ++j) {
        terms.push_back({spec.alpha[j], BlockProduct{{ZBlock{ra, spec.k - j}, ZBlock{rb, j}}}});
    }
    return BlockSum::from_terms({ra, rb}, std::move(terms));
}

std::pair<BlockSum, X0Spec> x0_state(uint32_t k, const std::string &label_a,
                                     const std::string &label_b) {
    X0Spec spec = x0_spec(k);
    BlockSum state = x0_state(spec, label_a, label_b);
    return {std::move(state), std::move(spec)};
}

DistillOutcome distill_step(const BlockSum &a, const BlockSum &b, const DistillOptions &options) {
    auto block_a = a.single_block();
    auto block_b = b.single_block();
    if (!block_a || !block_b) {
        throw std::invalid_argument("distill_step: each input must be a single Z-block");
    }
    const uint32_t k = block_a->second.k;
    const uint32_t n1 = block_a->second.reg.width;
    const uint32_t n2 = block_b->second.reg.width;
    if (block_b->second.k != k) {
        throw std::invalid_argument("distill_step: mismatched excitation numbers " +
                                    std::to_string(k) + " and " +
                                    std::to_string(block_b->second.k));
    }
    if (k == 0) {
        throw std::invalid_argument("distill_step: k = 0 states carry no entanglement to distill");
    }
    if (n1 < 2 * k || n2 < 2 * k) {
        throw std::invalid_argument("distill_step: inputs need at least 2k qubits");
    }

    Selection selection = options.selection.value_or(first_k(k));
    check_selection(selection.from_a, k, n1, "A");
    check_selection(selection.from_b, k, n2, "B");

    X0Spec spec = options.alpha ? x0_spec_with_alpha(k, *options.alpha) : x0_spec(k);
    BlockSum target = x0_state(spec, kSelA, kSelB);

    // Full symmetry of Z_k(N) makes every choice of selected qubits equivalent
    // to taking the first k, so the symbolic path always splits at M = k.
    BlockSum split_a = split_register(relabel(a, block_a->second.reg.label, "a"), "a", k,
                                      {kSelA, kRestA});
    BlockSum split_b = split_register(relabel(b, block_b->second.reg.label, "b"), "b", k,
                                      {kSelB, kRestB});
    BlockSum joint = tensor(split_a, split_b);
    BlockSum remainder = contract(target, joint);

    DistillOutcome out;
    out.selection = std::move(selection);
    out.measured_sector = k;
    out.consumed_qubits = 2 * k;
    out.success_probability = norm_sq(remainder) * spec.beta_sq / (norm_sq(a) * norm_sq(b));

    std::string label = options.output_label.value_or(block_a->second.reg.label);
    MergeResult merged = merge_registers(remainder, kRestA, kRestB, label);
    out.collected = merged.collected && merged.state.single_block().has_value();
    out.post_state = std::move(merged.state);
    return out;
}

Rational success_probability(uint32_t k, uint32_t n1, uint32_t n2) {
    if (k == 0 || n1 < 2 * k || n2 < 2 * k) {
        throw std::invalid_argument("success_probability: requires k >= 1 and n1, n2 >= 2k");
    }
    Rational numerator(binom(n1 + n2 - 2 * k, k));
    Rational denominator(binom(n1, k) * binom(n2, k));
    return x0_spec(k).beta_sq * numerator / denominator;
}

}  // namespace zdistill
