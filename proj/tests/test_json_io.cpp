#include "doctest.h"
#include "qfo/json_io.hpp"
#include "test_util.hpp"

using namespace qfo;

TEST_CASE("doubles serialize round-trip exactly") {
    for (double v : {0.0, 1.0, -0.1, 1.0 / 3.0, 6.5e-7, 1e300, -2.5e-308}) {
        std::string s = jsonio::format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("pupil profile JSON round trip") {
    PupilProfile p{3, {0.1, -0.2, 0.3}, {1.0 / 3.0, 0.0, -7.25}, 12345.678};
    auto text = jsonio::pupil_to_json(p);
    auto back = jsonio::pupil_from_json(text);
    CHECK(back.harmonics == p.harmonics);
    CHECK(back.sin_coeffs == p.sin_coeffs);
    CHECK(back.cos_coeffs == p.cos_coeffs);
    CHECK(back.kappa_x == p.kappa_x);
    // emission is deterministic
    CHECK(jsonio::pupil_to_json(back) == text);

    CHECK_THROWS(jsonio::pupil_from_json("{\"R\":2,\"sin\":[0.1],\"cos\":[0,0]}"));
}

TEST_CASE("diagonal phases JSON round trip") {
    DiagonalPhases d{{0.0, -3.14159, 0.5, 1.0 / 7.0}};
    auto back = jsonio::diag_from_json(jsonio::diag_to_json(d));
    CHECK(back.phi == d.phi);
}

TEST_CASE("photonic state JSON round trip") {
    ModeWindow w{4, 2};
    PhotonicState s(w, 2);
    s.set_amplitude({1, 1, 0, 0}, {0.25, -0.5});
    s.set_amplitude({0, 0, 2, 0}, {1.0 / 3.0, 0.0});
    auto back = jsonio::state_from_json(jsonio::state_to_json(s), w);
    CHECK(back.photon_number() == 2);
    CHECK(back.terms() == s.terms());
}

TEST_CASE("gate report JSON structure") {
    GateReport r;
    r.converged = true;
    r.fidelity = 0.9999;
    r.success = 0.5;
    r.pupil1 = PupilProfile{1, {0.1}, {0.2}, 0.0};
    r.diag = DiagonalPhases{{0.0, 0.1}};
    PlacedOperator po;
    po.qubits = {0};
    po.op.matrix = hadamard_target();
    po.score = {0.9999, 0.5, 2};
    r.operators.push_back(po);
    r.best_restart = 0;
    r.restarts.push_back({0.9, 0.9999, 0.5, 123});

    auto text = jsonio::report_to_json(r, "{\"target\":\"hadamard\"}");
    CHECK(text.find("\"converged\":true") != std::string::npos);
    CHECK(text.find("\"basis\":\"up,down\"") != std::string::npos);
    CHECK(text.find("\"problem\":") != std::string::npos);
    CHECK(text.find("\"stats\":") != std::string::npos);
    // omitted echo and stats
    GateReport bare = r;
    bare.restarts.clear();
    auto short_text = jsonio::report_to_json(bare, "");
    CHECK(short_text.find("\"problem\":") == std::string::npos);
    CHECK(short_text.find("\"stats\":") == std::string::npos);

    auto pretty = jsonio::format_report(text);
    CHECK(pretty.find("converged: yes") != std::string::npos);
    CHECK(pretty.find("e^{") != std::string::npos);
    CHECK(pretty.find("O[0]") != std::string::npos);
}

TEST_CASE("intensity CSV layout") {
    IntensityMap map;
    map.z = {0.0, 0.5};
    map.x = {-1.0, 0.0, 1.0};
    map.intensity.resize(2, 3);
    map.intensity << 0.0, 1.0, 0.25, 0.5, 0.125, 0.0;
    std::string path = "/tmp/qfo_test_intensity.csv";
    jsonio::write_intensity_csv(path, map);
    auto text = jsonio::read_file(path);
    CHECK(text == "z,-1,0,1\n0,0,1,0.25\n0.5,0.5,0.125,0\n");

    std::string pgm = "/tmp/qfo_test_intensity.pgm";
    jsonio::write_intensity_pgm(pgm, map);
    auto raw = jsonio::read_file(pgm);
    CHECK(raw.rfind("P5\n3 2\n255\n", 0) == 0);
    CHECK(raw.size() == std::string("P5\n3 2\n255\n").size() + 6);
    CHECK(static_cast<unsigned char>(raw[raw.size() - 5]) == 255);  // peak
}
