#include "qfo/metrics.hpp"

#include <cmath>

namespace qfo {

double success_probability(const GateOperator& op) {
    if (op.matrix.rows() != op.matrix.cols())
        throw error("gate operator must be square");
    return (op.matrix.adjoint() * op.matrix).trace().real() / op.dim();
}

double fidelity(const GateOperator& op, const Eigen::MatrixXcd& target) {
    if (op.matrix.rows() != target.rows() || op.matrix.cols() != target.cols())
        throw error("operator and target dimensions differ");
    double oo = (op.matrix.adjoint() * op.matrix).trace().real();
    if (oo <= 0.0) throw error("fidelity of the zero operator is undefined");
    double gg = (target.adjoint() * target).trace().real();
    cplx og = (op.matrix.adjoint() * target).trace();
    return std::norm(og) / (oo * gg);
}

GateScore score_gate(const GateOperator& op, const Eigen::MatrixXcd& target) {
    return GateScore{fidelity(op, target), success_probability(op), op.dim()};
}

Eigen::MatrixXcd hadamard_target() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd h(2, 2);
    h << s, s, s, -s;
    return h;
}

Eigen::MatrixXcd cnot_target() {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(4, 4);
    c(0, 0) = 1.0;
    c(1, 1) = 1.0;
    c(2, 3) = 1.0;
    c(3, 2) = 1.0;
    return c;
}

Eigen::MatrixXcd identity_target(int dim) {
    return Eigen::MatrixXcd::Identity(dim, dim);
}

}  // namespace qfo
