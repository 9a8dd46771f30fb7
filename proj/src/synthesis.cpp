#include "qfo/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace qfo {

namespace {
constexpr double kPenaltyWeight = 1e3;
// Stage-2 fidelity anchor. The trade toward success is only allowed to
// pull fidelity this far down, independent of the (looser) convergence
// floor used for stage-1 acceptance.
constexpr double kStage2Floor = 0.9999;
}

void SynthesisProblem::validate() const {
    if (harmonics < 0) throw error("negative pupil harmonic count");
    if (window.size < 2 * harmonics + 1)
        throw error("mode count below the Nyquist bound 2R+1");
    if (kind == GateKind::SingleQubit) {
        if (target.rows() != 2 || target.cols() != 2)
            throw error("single-qubit target must be 2x2");
        if (qubits.empty()) throw error("no qubit placements given");
    } else {
        if (target.rows() != 4 || target.cols() != 4)
            throw error("two-qubit target must be 4x4");
        if (control == target_qubit)
            throw error("control and target qubits must differ");
    }
    if (restarts < 1) throw error("at least one restart required");
    if (mu_schedule.empty()) throw error("empty mu schedule");
    layout().validate();
}

int SynthesisProblem::param_count() const {
    return 2 * harmonics * (share_pupils ? 1 : 2) + window.size;
}

QubitLayout SynthesisProblem::layout() const {
    QubitLayout l;
    l.window = window;
    if (kind == GateKind::SingleQubit)
        l.qubits = qubits;
    else
        l.qubits = {control, target_qubit};
    return l;
}

DecodedProfiles decode_params(const Eigen::VectorXd& params,
                              const SynthesisProblem& problem) {
    if (params.size() != problem.param_count())
        throw error("parameter vector length mismatch");
    const int r = problem.harmonics;
    const int m = problem.window.size;

    auto read_pupil = [&](int base) {
        PupilProfile p;
        p.harmonics = r;
        p.sin_coeffs.assign(params.data() + base, params.data() + base + r);
        p.cos_coeffs.assign(params.data() + base + r, params.data() + base + 2 * r);
        return p;
    };

    DecodedProfiles d;
    d.pupil1 = read_pupil(0);
    d.pupil2 = problem.share_pupils ? d.pupil1 : read_pupil(2 * r);
    const int phi_base = 2 * r * (problem.share_pupils ? 1 : 2);
    d.diag.phi.assign(params.data() + phi_base, params.data() + phi_base + m);
    return d;
}

std::vector<PlacedOperator> evaluate_profiles(const DecodedProfiles& profiles,
                                              const SynthesisProblem& problem) {
    const int m = problem.window.size;
    ModeTransform stack =
        compose_8f(profiles.pupil1, profiles.diag, profiles.pupil2, m);
    QubitLayout layout = problem.layout();

    std::vector<PlacedOperator> ops;
    if (problem.kind == GateKind::SingleQubit) {
        for (int b : problem.qubits) {
            PlacedOperator po;
            po.qubits = {b};
            po.op = extract_single_qubit_operator(stack, layout, b);
            po.score = score_gate(po.op, problem.target);
            ops.push_back(std::move(po));
        }
    } else {
        PlacedOperator po;
        po.qubits = {problem.control, problem.target_qubit};
        po.op = extract_two_qubit_operator(stack, layout, problem.control,
                                           problem.target_qubit);
        po.score = score_gate(po.op, problem.target);
        ops.push_back(std::move(po));
    }
    return ops;
}

std::pair<double, double> objective(const Eigen::VectorXd& params,
                                    const SynthesisProblem& problem) {
    auto ops = evaluate_profiles(decode_params(params, problem), problem);
    double f_min = 1.0, s_sum = 0.0;
    for (const auto& po : ops) {
        f_min = std::min(f_min, po.score.fidelity);
        s_sum += po.score.success;
    }
    return {f_min, s_sum / ops.size()};
}

namespace {

struct RestartOutcome {
    Eigen::VectorXd params;
    double fidelity = 0.0;
    double success = 0.0;
    RestartStats stats;
};

RestartOutcome run_restart(const SynthesisProblem& problem, int restart_idx) {
    std::mt19937_64 rng(problem.seed ^
                        (0x9e3779b97f4a7c15ULL * (restart_idx + 1)));
    std::uniform_real_distribution<double> uni(-std::numbers::pi,
                                               std::numbers::pi);
    Eigen::VectorXd x0(problem.param_count());
    for (int i = 0; i < x0.size(); ++i) x0(i) = uni(rng);

    std::atomic<long long> evals{0};
    auto infidelity = [&](const Eigen::VectorXd& x) {
        ++evals;
        return 1.0 - objective(x, problem).first;
    };

    // Stage 1: push fidelity to the floor.
    OptimResult coarse = nelder_mead(infidelity, x0, 0.7, 2000, 1e-12);
    OptimResult polished = bfgs_fd(infidelity, coarse.x, 400, 1e-11);

    RestartOutcome out;
    out.params = polished.x;
    auto [f1, s1] = objective(polished.x, problem);
    out.fidelity = f1;
    out.success = s1;
    out.stats.stage1_fidelity = f1;

    if (f1 >= problem.fidelity_floor) {
        // Stage 2: trade toward success under a fidelity-deficit penalty,
        // then restore back onto the unity-fidelity manifold. Single-qubit
        // problems may keep a traded point above the anchor; post-selected
        // two-qubit gates keep only restored points, since their
        // fidelity-success frontier crosses the physical post-selection
        // bound as soon as the fidelity leaves unity.
        const double anchor = std::max(problem.fidelity_floor, kStage2Floor);
        const bool manifold_only = problem.kind == GateKind::TwoQubit;
        Eigen::VectorXd x = polished.x;
        auto consider = [&](const Eigen::VectorXd& p, double f, double s) {
            bool better = f >= anchor && (out.fidelity < anchor ||
                                          s > out.success + 1e-15);
            if (better) {
                out.params = p;
                out.fidelity = f;
                out.success = s;
            }
        };
        for (double mu : problem.mu_schedule) {
            auto penalty = [&](const Eigen::VectorXd& p) {
                ++evals;
                auto [f, s] = objective(p, problem);
                double deficit = std::max(0.0, anchor - f);
                return -(f + mu * s) + kPenaltyWeight * deficit * deficit;
            };
            OptimResult traded = bfgs_fd(penalty, x, 400, 1e-11);
            if (!manifold_only) {
                auto [f, s] = objective(traded.x, problem);
                consider(traded.x, f, s);
            }
            OptimResult restored = bfgs_fd(infidelity, traded.x, 400, 1e-12);
            auto [f, s] = objective(restored.x, problem);
            consider(restored.x, f, s);
            x = restored.x;  // continuation across the mu schedule
        }
    }

    out.stats.fidelity = out.fidelity;
    out.stats.success = out.success;
    out.stats.evaluations = static_cast<int>(evals.load());
    return out;
}

/// Feasible candidates rank above infeasible; feasible by success, then
/// fidelity; infeasible by fidelity. Ties break toward the lower index.
bool outranks(const RestartOutcome& a, const RestartOutcome& b, double floor) {
    bool fa = a.fidelity >= floor, fb = b.fidelity >= floor;
    if (fa != fb) return fa;
    if (fa) {
        if (a.success != b.success) return a.success > b.success;
        return a.fidelity > b.fidelity;
    }
    return a.fidelity > b.fidelity;
}

}  // namespace

GateReport synthesize(const SynthesisProblem& problem) {
    problem.validate();

    std::vector<RestartOutcome> outcomes(problem.restarts);
    const int workers =
        std::max(1, std::min(problem.threads, problem.restarts));
    if (workers == 1) {
        for (int i = 0; i < problem.restarts; ++i)
            outcomes[i] = run_restart(problem, i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < problem.restarts;
                     i = next.fetch_add(1))
                    outcomes[i] = run_restart(problem, i);
            });
        for (auto& t : pool) t.join();
    }

    int best = 0;
    for (int i = 1; i < problem.restarts; ++i)
        if (outranks(outcomes[i], outcomes[best], problem.fidelity_floor))
            best = i;

    GateReport report;
    report.params = outcomes[best].params;
    DecodedProfiles profiles = decode_params(report.params, problem);
    report.pupil1 = profiles.pupil1;
    report.diag = profiles.diag;
    if (!problem.share_pupils) report.pupil2 = profiles.pupil2;
    report.operators = evaluate_profiles(profiles, problem);
    report.fidelity = outcomes[best].fidelity;
    report.success = outcomes[best].success;
    report.converged = report.fidelity >= problem.fidelity_floor;
    report.best_restart = best;
    for (const auto& o : outcomes) {
        report.restarts.push_back(o.stats);
        report.evaluations += o.stats.evaluations;
    }
    return report;
}

}  // namespace qfo
