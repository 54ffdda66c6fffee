#pragma once

#include <string>

#include "zdistill/protocol.h"

namespace zdistill {

/// Graphviz DOT for a plan. Z-states are rounded boxes labelled "Z_k(n)",
/// projections are arrow-shaped (cds) nodes labelled with the qubits they
/// consume, and edges carry the k qubits selected from each operand.
/// Output depends only on the plan, so it is byte-stable.
std::string plan_to_dot(const ProtocolPlan &plan);

}  // namespace zdistill
