#pragma once

#include <Eigen/Dense>

#include "qfo/evolution.hpp"

namespace qfo {

struct GateScore {
    double fidelity = 0.0;
    double success = 0.0;
    int dim = 0;
};

/// Tr(O^dag O) / d.
double success_probability(const GateOperator& op);

/// |Tr(O^dag G)|^2 / (Tr(O^dag O) Tr(G^dag G)). Invariant under global
/// phase and positive scaling of O. Undefined (throws) for O = 0.
double fidelity(const GateOperator& op, const Eigen::MatrixXcd& target);

GateScore score_gate(const GateOperator& op, const Eigen::MatrixXcd& target);

/// Target gates with exact entries. Basis order as in GateOperator.
Eigen::MatrixXcd hadamard_target();
Eigen::MatrixXcd cnot_target();
Eigen::MatrixXcd identity_target(int dim);

}  // namespace qfo
