#pragma once

#include <string>

namespace qfo::cmd {

/// Process-style status codes shared with the CLI:
/// 0 ok, 1 config error, 2 optimization failure, 3 physics-validity failure,
/// 4 internal error.
struct Outcome {
    int status = 0;
    std::string message;
};

Outcome run_synth(const std::string& config_json, const std::string& out_dir,
                  long long seed_override, int threads);
Outcome run_eval(const std::string& config_json, const std::string& out_dir);
Outcome run_propagate(const std::string& config_json, const std::string& out_dir);

/// Pretty-prints a gate report (throws qfo::error on malformed input).
std::string format_report(const std::string& report_json);

}  // namespace qfo::cmd
