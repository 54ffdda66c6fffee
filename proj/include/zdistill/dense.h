#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zdistill/combinatorics.h"
#include "zdistill/zstate.h"

namespace zdistill {

/// Default ceiling on the total qubit count of a DenseState.
inline constexpr uint32_t kDenseCap = 22;

/// Brute-force state vector with exact rational amplitudes.
///
/// Qubit i (counting across registers in order) is bit i of the key. Only
/// nonzero amplitudes are stored.
struct DenseState {
    std::vector<RegisterId> registers;
    std::map<uint64_t, Rational> amplitudes;

    uint32_t width() const;
    Rational amplitude(uint64_t bits) const;
    /// Adds to an amplitude, erasing the entry when it cancels to zero.
    void add(uint64_t bits, const Rational &value);

    /// `bitstring amplitude` lines sorted by bitstring; the character at
    /// position i is qubit i.
    std::string dump() const;

    bool operator==(const DenseState &) const = default;
};

std::string bits_to_string(uint64_t bits, uint32_t width);

/// Z_k(n) on a single register named `label`, enumerating only the C(n, k)
/// weight-k strings.
DenseState dense_z(uint32_t k, uint32_t n, uint32_t cap = kDenseCap,
                   const std::string &label = "q");

/// Expands a BlockSum with registers laid out in the BlockSum's (label-sorted) order.
DenseState to_dense(const BlockSum &a, uint32_t cap = kDenseCap);

/// Sum over strings of the amplitude products. Requires identical register layouts.
Rational dense_inner(const DenseState &a, const DenseState &b);

/// Same total width and same amplitude map, ignoring register names.
bool same_amplitudes(const DenseState &a, const DenseState &b);

/// If a == c * b for some nonzero rational c, returns c.
std::optional<Rational> proportionality(const DenseState &a, const DenseState &b);

struct Projection {
    /// Unnormalized state left on the unmeasured qubits.
    DenseState remainder;
    /// Born probability of the target outcome for the normalized input and target.
    Rational weight;
};

/// Post-selects `qubits` onto `target`: remainder(y) = sum_x target(x) state(x, y).
/// Bit i of the target corresponds to qubits[i]. The remainder keeps the
/// unmeasured qubits in their original order; registers shrink accordingly
/// and empty ones are dropped.
Projection dense_project(const DenseState &state, std::span<const uint32_t> qubits,
                         const DenseState &target);

/// Moves qubit i to position perm[i]. The register list is kept as is.
DenseState permute_qubits(const DenseState &state, std::span<const uint32_t> perm);

/// Complements every bit.
DenseState dense_bit_flip(const DenseState &state);

}  // namespace zdistill
