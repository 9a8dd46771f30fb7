#include "qfo/commands.hpp"

#include <filesystem>
#include <functional>
#include <optional>

#include "json.hpp"
#include "qfo/json_io.hpp"
#include "qfo/propagation.hpp"
#include "qfo/synthesis.hpp"

namespace qfo::cmd {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct config_error : error {
    using error::error;
};

Eigen::MatrixXcd parse_matrix(const json& j) {
    const auto rows = j.size();
    Eigen::MatrixXcd m(rows, rows);
    for (size_t r = 0; r < rows; ++r) {
        if (j[r].size() != rows) throw config_error("target matrix not square");
        for (size_t c = 0; c < rows; ++c)
            m(static_cast<int>(r), static_cast<int>(c)) =
                cplx{j[r][c][0].get<double>(), j[r][c][1].get<double>()};
    }
    return m;
}

/// Resolves target + kind. Named targets imply the kind.
void parse_target(const json& cfg, SynthesisProblem& problem) {
    const json& target = cfg.at("target");
    if (target.is_string()) {
        std::string name = target.get<std::string>();
        if (name == "hadamard") {
            problem.target = hadamard_target();
            problem.kind = GateKind::SingleQubit;
        } else if (name == "cnot") {
            problem.target = cnot_target();
            problem.kind = GateKind::TwoQubit;
        } else if (name == "identity") {
            problem.target = identity_target(2);
            problem.kind = GateKind::SingleQubit;
        } else {
            throw config_error("unknown target name: " + name);
        }
    } else {
        problem.target = parse_matrix(target);
        problem.kind = problem.target.rows() == 2 ? GateKind::SingleQubit
                                                  : GateKind::TwoQubit;
    }
    if (cfg.contains("kind")) {
        std::string kind = cfg.at("kind").get<std::string>();
        if (kind == "single_qubit")
            problem.kind = GateKind::SingleQubit;
        else if (kind == "two_qubit")
            problem.kind = GateKind::TwoQubit;
        else
            throw config_error("unknown kind: " + kind);
    }
}

SynthesisProblem parse_problem(const json& cfg) {
    SynthesisProblem p;
    parse_target(cfg, p);
    p.window.size = cfg.value("M", 16);
    p.window.offset = cfg.value("offset", p.window.size / 2);
    p.harmonics = cfg.value("R", 7);
    p.share_pupils = cfg.value("share_pupils", true);
    if (cfg.contains("mu")) p.mu_schedule = cfg.at("mu").get<std::vector<double>>();
    p.restarts = cfg.value("restarts", 16);
    p.seed = cfg.value("seed", 1ull);
    p.fidelity_floor = cfg.value("fidelity_floor",
                                 p.kind == GateKind::TwoQubit ? 0.995 : 0.9999);
    if (p.kind == GateKind::SingleQubit) {
        if (cfg.contains("qubits"))
            p.qubits = cfg.at("qubits").get<std::vector<int>>();
    } else {
        p.control = cfg.value("control", 0);
        p.target_qubit = cfg.value("target_qubit", -1);
    }
    return p;
}

void write_report_bundle(const fs::path& dir, const GateReport& report,
                         const std::string& echo) {
    fs::create_directories(dir);
    jsonio::write_file((dir / "gate_report.json").string(),
                       jsonio::report_to_json(report, echo));
    jsonio::write_file((dir / "pupil.json").string(),
                       jsonio::pupil_to_json(report.pupil1));
    jsonio::write_file((dir / "diag.json").string(),
                       jsonio::diag_to_json(report.diag));
    if (report.pupil2)
        jsonio::write_file((dir / "pupil2.json").string(),
                           jsonio::pupil_to_json(*report.pupil2));
}

struct SceneConfig {
    SceneParams params;
    std::string train = "8f";
    double dz = 0.0;
    PupilProfile pupil1;
    DiagonalPhases diag;
    PupilProfile pupil2;
    QubitLayout layout;
    std::vector<std::pair<int, std::pair<cplx, cplx>>> inputs;  // b -> (down, up)
    std::optional<std::pair<int, int>> projector;
    double continuation_dz = 0.0;
};

std::pair<cplx, cplx> parse_qubit_state(const json& j) {
    const double s = 1.0 / std::sqrt(2.0);
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (name == "up") return {cplx{0.0}, cplx{1.0}};
        if (name == "down") return {cplx{1.0}, cplx{0.0}};
        if (name == "+") return {cplx{s}, cplx{s}};
        if (name == "-") return {cplx{-s}, cplx{s}};
        throw config_error("unknown qubit state: " + name);
    }
    auto dn = j.at("down").get<std::vector<double>>();
    auto up = j.at("up").get<std::vector<double>>();
    return {cplx{dn.at(0), dn.at(1)}, cplx{up.at(0), up.at(1)}};
}

SceneConfig parse_scene(const json& cfg, const fs::path& base) {
    SceneConfig sc;
    if (cfg.contains("scene")) {
        const json& s = cfg.at("scene");
        sc.params.lattice = s.value("lattice", 100e-6);
        sc.params.wavelength = s.value("lambda", 650e-9);
        sc.params.focal = s.value("focal", 2.5e-2);
        sc.params.waist = s.value("waist", 10e-6);
        sc.params.grid.points = s.value("grid_points", 4096);
        sc.params.grid.extent = s.value("grid_extent", 3.2e-3);
        sc.params.z_samples = s.value("z_samples", 64);
        sc.params.window.size = s.value("M", 16);
        sc.params.window.offset = s.value("offset", sc.params.window.size / 2);
    }
    sc.train = cfg.value("train", "8f");
    sc.dz = cfg.value("dz", sc.params.focal);
    sc.continuation_dz = cfg.value("continuation_dz", sc.params.focal);

    auto load_rel = [&](const std::string& p) {
        fs::path path(p);
        if (path.is_relative()) path = base / path;
        return jsonio::read_file(path.string());
    };
    if (sc.train == "4f" || sc.train == "8f")
        sc.pupil1 = jsonio::pupil_from_json(load_rel(cfg.at("pupil").get<std::string>()));
    if (sc.train == "8f") {
        sc.diag = jsonio::diag_from_json(load_rel(cfg.at("diag").get<std::string>()));
        sc.pupil2 = cfg.contains("pupil2")
                        ? jsonio::pupil_from_json(
                              load_rel(cfg.at("pupil2").get<std::string>()))
                        : sc.pupil1;
    }

    sc.layout.window = sc.params.window;
    for (const auto& q : cfg.at("input").at("qubits")) {
        int b = q.at("b").get<int>();
        sc.layout.qubits.push_back(b);
        sc.inputs.emplace_back(b, parse_qubit_state(q.at("state")));
    }
    sc.layout.validate();

    if (cfg.contains("projector")) {
        sc.projector = {cfg.at("projector").at("control").get<int>(),
                        cfg.at("projector").at("target").get<int>()};
    }
    return sc;
}

Outcome guard(const std::function<Outcome()>& body) {
    try {
        return body();
    } catch (const config_error& e) {
        return {1, e.what()};
    } catch (const json::exception& e) {
        return {1, e.what()};
    } catch (const physics_error& e) {
        return {3, e.what()};
    } catch (const error& e) {
        return {1, e.what()};
    } catch (const std::exception& e) {
        return {4, e.what()};
    }
}

}  // namespace

Outcome run_synth(const std::string& config_json, const std::string& out_dir,
                  long long seed_override, int threads) {
    return guard([&]() -> Outcome {
        json cfg = json::parse(config_json);
        SynthesisProblem problem = parse_problem(cfg);
        if (seed_override >= 0) {
            problem.seed = static_cast<std::uint64_t>(seed_override);
            cfg["seed"] = problem.seed;  // echo reflects the effective seed
        }
        problem.threads = threads;
        problem.validate();
        GateReport report = synthesize(problem);
        write_report_bundle(out_dir, report, cfg.dump());
        if (!report.converged)
            return {2, "stage-1 fidelity floor not reached; best fidelity " +
                           jsonio::format_double(report.fidelity)};
        return {0, "fidelity " + jsonio::format_double(report.fidelity) +
                       ", success " + jsonio::format_double(report.success)};
    });
}

Outcome run_eval(const std::string& config_json, const std::string& out_dir) {
    return guard([&]() -> Outcome {
        json cfg = json::parse(config_json);
        SynthesisProblem problem = parse_problem(cfg);
        problem.validate();

        fs::path base = cfg.value("base_dir", std::string("."));
        auto load = [&](const std::string& key) {
            fs::path p(cfg.at(key).get<std::string>());
            if (p.is_relative()) p = base / p;
            return jsonio::read_file(p.string());
        };
        DecodedProfiles profiles;
        profiles.pupil1 = jsonio::pupil_from_json(load("pupil"));
        profiles.diag = jsonio::diag_from_json(load("diag"));
        profiles.pupil2 = cfg.contains("pupil2")
                              ? jsonio::pupil_from_json(load("pupil2"))
                              : profiles.pupil1;
        if (static_cast<int>(profiles.diag.phi.size()) != problem.window.size)
            throw config_error("diagonal profile length does not match M");

        GateReport report;
        report.pupil1 = profiles.pupil1;
        report.diag = profiles.diag;
        if (cfg.contains("pupil2")) report.pupil2 = profiles.pupil2;
        report.operators = evaluate_profiles(profiles, problem);
        report.fidelity = 1.0;
        for (const auto& po : report.operators) {
            report.fidelity = std::min(report.fidelity, po.score.fidelity);
            report.success += po.score.success;
        }
        report.success /= report.operators.size();
        report.converged = true;
        fs::create_directories(out_dir);
        jsonio::write_file((fs::path(out_dir) / "gate_report.json").string(),
                           jsonio::report_to_json(report, cfg.dump()));
        return {0, "fidelity " + jsonio::format_double(report.fidelity) +
                       ", success " + jsonio::format_double(report.success)};
    });
}

Outcome run_propagate(const std::string& config_json, const std::string& out_dir) {
    return guard([&]() -> Outcome {
        json cfg = json::parse(config_json);
        fs::path base = cfg.value("base_dir", std::string("."));
        SceneConfig sc = parse_scene(cfg, base);

        std::vector<PhotonicState> factors;
        for (const auto& [b, amps] : sc.inputs)
            factors.push_back(
                make_qubit_state(sc.layout, b, amps.first, amps.second));
        PhotonicState input = factors.size() == 1 ? factors.front()
                                                  : product_state(factors);

        PropagationScene scene =
            sc.train == "free" ? make_free_scene(sc.params, sc.dz)
            : sc.train == "4f" ? make_4f_scene(sc.params, sc.pupil1)
            : sc.train == "8f"
                ? make_8f_scene(sc.params, sc.pupil1, sc.diag, sc.pupil2)
                : throw config_error("unknown train: " + sc.train);

        fs::create_directories(out_dir);
        IntensityMap map =
            propagate_scene(scene, reduced_one_photon_density(input));
        jsonio::write_intensity_csv((fs::path(out_dir) / "intensity.csv").string(), map);
        jsonio::write_intensity_pgm((fs::path(out_dir) / "intensity.pgm").string(), map);

        if (sc.projector) {
            if (sc.train != "8f")
                throw config_error("projector requires the 8f train");
            ModeTransform stack = compose_8f(sc.pupil1, sc.diag, sc.pupil2,
                                             sc.params.window.size);
            PhotonicState out_state = evolve(input, stack);
            auto proj = CoincidenceProjector::for_qubits(
                sc.layout, sc.projector->first, sc.projector->second);
            PhotonicState projected = coincidence_project(out_state, proj);
            jsonio::write_file(
                (fs::path(out_dir) / "projected_state.json").string(),
                jsonio::state_to_json(projected));

            PropagationScene cont = make_free_scene(sc.params, sc.continuation_dz);
            IntensityMap pmap =
                propagate_scene(cont, reduced_one_photon_density(projected));
            jsonio::write_intensity_csv(
                (fs::path(out_dir) / "projected.csv").string(), pmap);
            jsonio::write_intensity_pgm(
                (fs::path(out_dir) / "projected.pgm").string(), pmap);
        }
        return {0, "intensity map written"};
    });
}

std::string format_report(const std::string& report_json) {
    return jsonio::format_report(report_json);
}

}  // namespace qfo::cmd
