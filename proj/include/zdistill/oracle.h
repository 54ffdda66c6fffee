#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zdistill/dense.h"
#include "zdistill/distillation.h"

namespace zdistill {

/// Z_k(n1) on register "A" (qubits 0..n1-1) followed by Z_k(n2) on "B".
DenseState dense_pair(uint32_t k, uint32_t n1, uint32_t n2, uint32_t cap = kDenseCap);

/// Brute-force counterpart of distill_step: projects the selected qubits of
/// dense_pair(k, n1, n2) onto to_dense(X0(2k)). Selected A qubits map to
/// target bits 0..k-1 and B qubits to bits k..2k-1.
Projection oracle_distill(uint32_t k, uint32_t n1, uint32_t n2, const Selection &selection,
                          uint32_t cap = kDenseCap,
                          const std::optional<std::vector<Rational>> &alpha = std::nullopt);

/// Whether an oracle projection matches the distillation claim: the remainder
/// is a nonzero multiple of Z_k(n1 + n2 - 2k) and the weight is `expected`.
bool oracle_agrees(const Projection &projection, uint32_t k, uint32_t n_out,
                   const Rational &expected, uint32_t cap = kDenseCap);

}  // namespace zdistill
