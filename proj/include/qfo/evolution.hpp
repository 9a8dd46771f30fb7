#pragma once

#include <Eigen/Dense>

#include "qfo/layers.hpp"
#include "qfo/modes.hpp"

namespace qfo {

/// Coincidence post-selection: keep exactly one photon in the control
/// mode pair and one in the target mode pair. Modes are lattice labels.
struct CoincidenceProjector {
    int control_down = 0;
    int control_up = 0;
    int target_down = 0;
    int target_up = 0;

    static CoincidenceProjector for_qubits(const QubitLayout& layout,
                                           int control, int target);
    void validate() const;
};

/// Extracted d x d gate operator (d = 2 or 4), sub-unitary in general.
/// Basis order follows the lattice labels high-to-low: (up, down) for
/// one qubit, (uu, ud, du, dd) for two. Entry (out, in).
struct GateOperator {
    Eigen::MatrixXcd matrix;

    int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Heisenberg-picture evolution: each creation operator a_n^dag is
/// replaced by sum_l T[n][l] d_l^dag and the product re-expanded.
PhotonicState evolve(const PhotonicState& state, const ModeTransform& t);

/// Matrix permanent via Ryser's formula (Gray-code order). dim <= 12.
cplx permanent(const Eigen::MatrixXcd& a);

/// per(T_sub) / sqrt(prod in! * prod out!), the multi-photon transition
/// amplitude; independent oracle for evolve.
cplx transition_amplitude(const OccupationPattern& in,
                          const OccupationPattern& out, const ModeTransform& t);

PhotonicState coincidence_project(const PhotonicState& state,
                                  const CoincidenceProjector& proj);

GateOperator extract_single_qubit_operator(const ModeTransform& t,
                                           const QubitLayout& layout, int b);

GateOperator extract_two_qubit_operator(const ModeTransform& t,
                                        const QubitLayout& layout, int control,
                                        int target);

/// One-photon reduced density matrix rho[l][l'] = <a_{l'}^dag a_l>,
/// internal index order. Hermitian with trace n * norm^2.
Eigen::MatrixXcd reduced_one_photon_density(const PhotonicState& state);

}  // namespace qfo
