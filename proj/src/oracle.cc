#include "zdistill/oracle.h"

#include <stdexcept>

namespace zdistill {

DenseState dense_pair(uint32_t k, uint32_t n1, uint32_t n2, uint32_t cap) {
    if (n1 + n2 > cap) {
        throw std::out_of_range("dense_pair: " + std::to_string(n1 + n2) +
                                " qubits exceed the cap of " + std::to_string(cap));
    }
    DenseState a = dense_z(k, n1, cap, "A");
    DenseState b = dense_z(k, n2, cap, "B");
    DenseState out;
    out.registers = {a.registers.front(), b.registers.front()};
    for (const auto &[bits_a, amp_a] : a.amplitudes) {
        for (const auto &[bits_b, amp_b] : b.amplitudes) {
            out.amplitudes.emplace(bits_a | (bits_b << n1), amp_a * amp_b);
        }
    }
    return out;
}

Projection oracle_distill(uint32_t k, uint32_t n1, uint32_t n2, const Selection &selection,
                          uint32_t cap, const std::optional<std::vector<Rational>> &alpha) {
    if (selection.from_a.size() != k || selection.from_b.size() != k) {
        throw std::invalid_argument("oracle_distill: selection must pick k qubits per side");
    }
    X0Spec spec = alpha ? x0_spec_with_alpha(k, *alpha) : x0_spec(k);
    DenseState target = to_dense(x0_state(spec, "a.sel", "b.sel"), cap);
    std::vector<uint32_t> qubits;
    for (uint32_t q : selection.from_a) {
        qubits.push_back(q);
    }
    for (uint32_t q : selection.from_b) {
        qubits.push_back(n1 + q);
    }
    return dense_project(dense_pair(k, n1, n2, cap), qubits, target);
}

bool oracle_agrees(const Projection &projection, uint32_t k, uint32_t n_out,
                   const Rational &expected, uint32_t cap) {
    if (projection.weight != expected) {
        return false;
    }
    auto ratio = proportionality(projection.remainder, dense_z(k, n_out, cap));
    return ratio.has_value() && *ratio != 0;
}

}  // namespace zdistill
