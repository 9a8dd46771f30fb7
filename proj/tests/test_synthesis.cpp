#include <fstream>

#include "doctest.h"
#include "qfo/json_io.hpp"
#include "qfo/synthesis.hpp"
#include "test_util.hpp"

using namespace qfo;

namespace {

SynthesisProblem small_identity_problem() {
    SynthesisProblem p;
    p.kind = GateKind::SingleQubit;
    p.target = identity_target(2);
    p.qubits = {0};
    p.window = {8, 4};
    p.harmonics = 2;
    p.restarts = 2;
    p.seed = 7;
    p.fidelity_floor = 0.999;
    return p;
}

bool fixture_exists(const std::string& name) {
    std::ifstream in(std::string(QFO_FIXTURE_DIR) + "/" + name);
    return in.good();
}

}  // namespace

TEST_CASE("parameter layout and decode") {
    SynthesisProblem p = small_identity_problem();
    CHECK(p.param_count() == 2 * 2 + 8);  // shared pupils

    p.share_pupils = false;
    CHECK(p.param_count() == 2 * (2 * 2) + 8);

    Eigen::VectorXd params = Eigen::VectorXd::LinSpaced(p.param_count(), 0.0, 1.0);
    auto prof = decode_params(params, p);
    CHECK(prof.pupil1.harmonics == 2);
    CHECK(prof.pupil1.sin_coeffs.size() == 2);
    CHECK(prof.diag.phi.size() == 8);
    CHECK(prof.pupil1.sin_coeffs[0] == params(0));
    CHECK(prof.pupil2.cos_coeffs[1] == params(7));
    CHECK(prof.diag.phi[0] == params(8));

    p.share_pupils = true;
    auto shared = decode_params(params.head(p.param_count()), p);
    CHECK(shared.pupil1.sin_coeffs == shared.pupil2.sin_coeffs);
    CHECK(shared.pupil1.cos_coeffs == shared.pupil2.cos_coeffs);
}

TEST_CASE("objective of the zero stack") {
    // flat pupils + zero modulator give the identity 8f stack, so the
    // identity target is met exactly
    SynthesisProblem p = small_identity_problem();
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(p.param_count());
    auto [f, s] = objective(zero, p);
    CHECK(f == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("objective stays within [0, 1]") {
    SynthesisProblem p = small_identity_problem();
    p.target = hadamard_target();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x(p.param_count());
        for (int i = 0; i < x.size(); ++i) x(i) = uni(rng);
        auto [f, s] = objective(x, p);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-12);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0 + 1e-12);
    }
}

TEST_CASE("objective is invariant under a global modulator shift") {
    SynthesisProblem p = small_identity_problem();
    p.target = hadamard_target();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd x(p.param_count());
    for (int i = 0; i < x.size(); ++i) x(i) = uni(rng);
    auto [f0, s0] = objective(x, p);
    Eigen::VectorXd shifted = x;
    shifted.tail(8).array() += 0.81;
    auto [f1, s1] = objective(shifted, p);
    CHECK(f1 == doctest::Approx(f0).epsilon(1e-12));
    CHECK(s1 == doctest::Approx(s0).epsilon(1e-12));
}

TEST_CASE("synthesize converges on the identity target") {
    SynthesisProblem p = small_identity_problem();
    auto report = synthesize(p);
    CHECK(report.converged);
    CHECK(report.fidelity >= 0.999);
    CHECK(report.success >= 0.9);
    REQUIRE(report.operators.size() == 1);
    CHECK(report.operators[0].score.fidelity == doctest::Approx(report.fidelity));
    CHECK(report.restarts.size() == 2);
    CHECK(report.best_restart >= 0);

    // scores recompute from the persisted profiles
    DecodedProfiles prof{report.pupil1, report.diag,
                         report.pupil2 ? *report.pupil2 : report.pupil1};
    auto placed = evaluate_profiles(prof, p);
    REQUIRE(placed.size() == 1);
    CHECK(std::abs(placed[0].score.fidelity - report.fidelity) < 1e-9);
    CHECK(std::abs(placed[0].score.success - report.success) < 1e-9);
}

TEST_CASE("synthesize is reproducible for a fixed seed") {
    SynthesisProblem p = small_identity_problem();
    auto a = synthesize(p);
    auto b = synthesize(p);
    CHECK(a.params == b.params);
    CHECK(a.fidelity == b.fidelity);
    CHECK(a.success == b.success);
    CHECK(a.best_restart == b.best_restart);

    // restart threading must not change the selected solution
    p.threads = 2;
    auto c = synthesize(p);
    CHECK(c.params == a.params);
    CHECK(c.best_restart == a.best_restart);
}

TEST_CASE("problem validation") {
    SynthesisProblem p = small_identity_problem();
    p.window = {4, 2};  // Nyquist violated for R = 2
    CHECK_THROWS_AS(p.validate(), error);

    p = small_identity_problem();
    p.qubits = {7};  // modes outside the window
    CHECK_THROWS_AS(p.validate(), error);

    p = small_identity_problem();
    p.kind = GateKind::TwoQubit;
    p.target = cnot_target();
    p.control = 0;
    p.target_qubit = 0;  // control == target
    CHECK_THROWS_AS(p.validate(), error);
}

TEST_CASE("persisted Hadamard profiles meet the published scores") {
    REQUIRE(fixture_exists("hadamard_pupil.json"));
    auto pupil = jsonio::pupil_from_json(
        jsonio::read_file(std::string(QFO_FIXTURE_DIR) + "/hadamard_pupil.json"));
    auto diag = jsonio::diag_from_json(
        jsonio::read_file(std::string(QFO_FIXTURE_DIR) + "/hadamard_diag.json"));

    SynthesisProblem p;
    p.kind = GateKind::SingleQubit;
    p.target = hadamard_target();
    p.qubits = {1, 0, -1};
    p.window = {16, 8};
    p.harmonics = pupil.harmonics;
    auto placed = evaluate_profiles({pupil, diag, pupil}, p);
    REQUIRE(placed.size() == 3);
    double mean_s = 0.0;
    for (const auto& pl : placed) {
        CHECK(pl.score.fidelity >= 0.9999);
        mean_s += pl.score.success / 3.0;
    }
    CHECK(mean_s >= 0.98);
}

TEST_CASE("persisted CNOT profiles meet the published scores") {
    REQUIRE(fixture_exists("cnot_pupil.json"));
    auto pupil = jsonio::pupil_from_json(
        jsonio::read_file(std::string(QFO_FIXTURE_DIR) + "/cnot_pupil.json"));
    auto diag = jsonio::diag_from_json(
        jsonio::read_file(std::string(QFO_FIXTURE_DIR) + "/cnot_diag.json"));

    SynthesisProblem p;
    p.kind = GateKind::TwoQubit;
    p.target = cnot_target();
    p.control = 0;
    p.target_qubit = -1;
    p.window = {16, 8};
    p.harmonics = pupil.harmonics;
    p.fidelity_floor = 0.995;
    auto placed = evaluate_profiles({pupil, diag, pupil}, p);
    REQUIRE(placed.size() == 1);
    CHECK(placed[0].score.fidelity >= 0.995);
    CHECK(placed[0].score.success >= 0.9 / 9.0);
    CHECK(placed[0].score.success <= 1.0 / 9.0 + 1e-6);
}
