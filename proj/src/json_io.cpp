#include "qfo/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qfo::jsonio {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string double_array(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out + "]";
}

std::string int_array(const std::vector<int>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

std::string matrix_polar(const Eigen::MatrixXcd& m) {
    std::string out = "[";
    for (int r = 0; r < m.rows(); ++r) {
        if (r) out += ",";
        out += "[";
        for (int c = 0; c < m.cols(); ++c) {
            if (c) out += ",";
            out += "{\"mag\":" + format_double(std::abs(m(r, c))) +
                   ",\"phase\":" + format_double(std::arg(m(r, c))) + "}";
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace

std::string pupil_to_json(const PupilProfile& p) {
    return "{\"R\":" + std::to_string(p.harmonics) +
           ",\"sin\":" + double_array(p.sin_coeffs) +
           ",\"cos\":" + double_array(p.cos_coeffs) +
           ",\"kappa_x\":" + format_double(p.kappa_x) + "}";
}

PupilProfile pupil_from_json(const std::string& text) {
    json j = json::parse(text);
    PupilProfile p;
    p.harmonics = j.at("R").get<int>();
    p.sin_coeffs = j.at("sin").get<std::vector<double>>();
    p.cos_coeffs = j.at("cos").get<std::vector<double>>();
    p.kappa_x = j.value("kappa_x", 0.0);
    p.validate();
    return p;
}

std::string diag_to_json(const DiagonalPhases& d) {
    return "{\"phi\":" + double_array(d.phi) + "}";
}

DiagonalPhases diag_from_json(const std::string& text) {
    json j = json::parse(text);
    return DiagonalPhases{j.at("phi").get<std::vector<double>>()};
}

std::string state_to_json(const PhotonicState& s) {
    std::string out = "{\"n\":" + std::to_string(s.photon_number()) + ",\"terms\":[";
    bool first = true;
    for (const auto& [pattern, amp] : s.terms()) {
        if (!first) out += ",";
        first = false;
        out += "{\"pattern\":" + int_array(pattern) +
               ",\"re\":" + format_double(amp.real()) +
               ",\"im\":" + format_double(amp.imag()) + "}";
    }
    return out + "]}";
}

PhotonicState state_from_json(const std::string& text, ModeWindow window) {
    json j = json::parse(text);
    PhotonicState s(window, j.at("n").get<int>());
    for (const auto& term : j.at("terms")) {
        OccupationPattern p = term.at("pattern").get<std::vector<int>>();
        s.set_amplitude(p, cplx{term.at("re").get<double>(),
                                term.at("im").get<double>()});
    }
    return s;
}

std::string report_to_json(const GateReport& report,
                           const std::string& config_echo) {
    std::string out = "{";
    out += "\"converged\":" + std::string(report.converged ? "true" : "false");
    out += ",\"fidelity\":" + format_double(report.fidelity);
    out += ",\"success\":" + format_double(report.success);
    out += ",\"operators\":[";
    for (size_t i = 0; i < report.operators.size(); ++i) {
        const auto& po = report.operators[i];
        if (i) out += ",";
        out += "{\"qubits\":" + int_array(po.qubits);
        out += ",\"basis\":\"" +
               std::string(po.op.dim() == 2 ? "up,down" : "uu,ud,du,dd") + "\"";
        out += ",\"matrix\":" + matrix_polar(po.op.matrix);
        out += ",\"fidelity\":" + format_double(po.score.fidelity);
        out += ",\"success\":" + format_double(po.score.success);
        out += ",\"d\":" + std::to_string(po.score.dim) + "}";
    }
    out += "],\"profiles\":{\"pupil\":" + pupil_to_json(report.pupil1);
    out += ",\"diag\":" + diag_to_json(report.diag);
    if (report.pupil2) out += ",\"pupil2\":" + pupil_to_json(*report.pupil2);
    out += "}";
    if (!report.restarts.empty()) {
        out += ",\"stats\":{\"best_restart\":" + std::to_string(report.best_restart);
        out += ",\"evaluations\":" + std::to_string(report.evaluations);
        out += ",\"restarts\":[";
        for (size_t i = 0; i < report.restarts.size(); ++i) {
            const auto& r = report.restarts[i];
            if (i) out += ",";
            out += "{\"stage1_fidelity\":" + format_double(r.stage1_fidelity) +
                   ",\"fidelity\":" + format_double(r.fidelity) +
                   ",\"success\":" + format_double(r.success) +
                   ",\"evaluations\":" + std::to_string(r.evaluations) + "}";
        }
        out += "]}";
    }
    if (!config_echo.empty()) {
        // normalized re-dump keeps the echo byte-stable
        out += ",\"problem\":" + json::parse(config_echo).dump();
    }
    return out + "}";
}

std::string format_report(const std::string& report_json) {
    json j = json::parse(report_json);
    std::ostringstream os;
    os << "converged: " << (j.at("converged").get<bool>() ? "yes" : "no") << "\n";
    char line[128];
    std::snprintf(line, sizeof(line), "fidelity: %.6f  success: %.6f\n",
                  j.at("fidelity").get<double>(), j.at("success").get<double>());
    os << line;
    for (const auto& op : j.at("operators")) {
        os << "\nO";
        for (int q : op.at("qubits").get<std::vector<int>>()) os << "[" << q << "]";
        std::snprintf(line, sizeof(line), "  (basis %s, F=%.6f, S=%.6f)\n",
                      op.at("basis").get<std::string>().c_str(),
                      op.at("fidelity").get<double>(),
                      op.at("success").get<double>());
        os << line;
        for (const auto& row : op.at("matrix")) {
            os << "  ";
            for (const auto& entry : row) {
                std::snprintf(line, sizeof(line), "%7.3f e^{%+.3fi}  ",
                              entry.at("mag").get<double>(),
                              entry.at("phase").get<double>());
                os << line;
            }
            os << "\n";
        }
    }
    return os.str();
}

void write_intensity_csv(const std::string& path, const IntensityMap& map) {
    std::string out = "z";
    for (double x : map.x) out += "," + format_double(x);
    out += "\n";
    for (size_t r = 0; r < map.z.size(); ++r) {
        out += format_double(map.z[r]);
        for (int c = 0; c < map.intensity.cols(); ++c)
            out += "," + format_double(map.intensity(static_cast<int>(r), c));
        out += "\n";
    }
    write_file(path, out);
}

void write_intensity_pgm(const std::string& path, const IntensityMap& map) {
    const int h = static_cast<int>(map.intensity.rows());
    const int w = static_cast<int>(map.intensity.cols());
    double peak = map.intensity.maxCoeff();
    if (peak <= 0.0) peak = 1.0;
    std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + static_cast<size_t>(w) * h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            int v = static_cast<int>(std::lround(255.0 * map.intensity(r, c) / peak));
            out.push_back(static_cast<char>(std::clamp(v, 0, 255)));
        }
    write_file(path, out);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw error("cannot write file: " + path);
    out << content;
}

}  // namespace qfo::jsonio
