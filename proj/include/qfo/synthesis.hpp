#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qfo/metrics.hpp"
#include "qfo/optimize.hpp"

namespace qfo {

enum class GateKind { SingleQubit, TwoQubit };

/// Target gate plus the knobs of the two-stage phase-profile search.
/// Single-qubit problems may list several qubit indices; the same target
/// is then required at each of them through one shared stack.
struct SynthesisProblem {
    GateKind kind = GateKind::SingleQubit;
    Eigen::MatrixXcd target;
    std::vector<int> qubits{0};  // single-qubit placements
    int control = 0;             // two-qubit placement
    int target_qubit = 0;
    ModeWindow window{16, 8};
    int harmonics = 7;
    bool share_pupils = true;
    std::vector<double> mu_schedule{0.1, 0.3, 1.0};
    int restarts = 16;
    std::uint64_t seed = 1;
    double fidelity_floor = 0.9999;
    double convergence_eps = 1e-10;
    int threads = 1;

    void validate() const;
    int param_count() const;
    QubitLayout layout() const;
};

struct PlacedOperator {
    std::vector<int> qubits;  // one label, or {control, target}
    GateOperator op;
    GateScore score;
};

struct RestartStats {
    double stage1_fidelity = 0.0;
    double fidelity = 0.0;
    double success = 0.0;
    int evaluations = 0;
};

struct GateReport {
    bool converged = false;
    PupilProfile pupil1;
    DiagonalPhases diag;
    std::optional<PupilProfile> pupil2;  // absent when pupils are shared
    std::vector<PlacedOperator> operators;
    double fidelity = 0.0;  // min over placements
    double success = 0.0;   // mean over placements
    int best_restart = -1;
    long long evaluations = 0;
    std::vector<RestartStats> restarts;
    Eigen::VectorXd params;
};

struct DecodedProfiles {
    PupilProfile pupil1;
    DiagonalPhases diag;
    PupilProfile pupil2;
};

/// Parameter layout: [S_1..S_R, C_1..C_R (, second pupil likewise), phi_0..phi_{M-1}].
DecodedProfiles decode_params(const Eigen::VectorXd& params,
                              const SynthesisProblem& problem);

/// (fidelity, success) of the stack encoded by `params`: min fidelity and
/// mean success over the problem's placements.
std::pair<double, double> objective(const Eigen::VectorXd& params,
                                    const SynthesisProblem& problem);

/// Evaluates profiles into per-placement operators and scores.
std::vector<PlacedOperator> evaluate_profiles(const DecodedProfiles& profiles,
                                              const SynthesisProblem& problem);

/// Two-stage search: maximize fidelity to the floor, then maximize
/// F + mu * S under a quadratic penalty on the fidelity deficit.
/// Best-of-restarts; bit-reproducible for a fixed seed.
GateReport synthesize(const SynthesisProblem& problem);

}  // namespace qfo
