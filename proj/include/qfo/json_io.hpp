#pragma once

#include <string>

#include "qfo/propagation.hpp"
#include "qfo/synthesis.hpp"

namespace qfo::jsonio {

/// %.17g; round-trips doubles exactly and keeps output byte-stable.
std::string format_double(double v);

std::string pupil_to_json(const PupilProfile& p);
PupilProfile pupil_from_json(const std::string& text);

std::string diag_to_json(const DiagonalPhases& d);
DiagonalPhases diag_from_json(const std::string& text);

std::string state_to_json(const PhotonicState& s);
PhotonicState state_from_json(const std::string& text, ModeWindow window);

/// Report plus a verbatim echo of the problem configuration.
/// Pass an empty echo to omit it (eval reports).
std::string report_to_json(const GateReport& report, const std::string& config_echo);

/// Human-readable magnitude * e^{i phase} rendering of a report.
std::string format_report(const std::string& report_json);

void write_intensity_csv(const std::string& path, const IntensityMap& map);
void write_intensity_pgm(const std::string& path, const IntensityMap& map);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qfo::jsonio
