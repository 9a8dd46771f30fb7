// CLI front end. Talks to the core exclusively through the C API.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qfo/qfo.h"

namespace {

std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        std::exit(QFO_ERR_CONFIG);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("QFO_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiport quantum Fourier-optical gate toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    long long seed = -1;
    int threads = 0;

    auto add_common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--config", config_path, "JSON configuration file")
            ->required();
        if (needs_out)
            sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads (env QFO_THREADS)");
    };

    CLI::App* synth = app.add_subcommand("synth", "optimize phase profiles for a target gate");
    add_common(synth, true);
    synth->add_option("--seed", seed, "override the config seed");

    CLI::App* eval = app.add_subcommand("eval", "score persisted profiles against a target");
    add_common(eval, true);

    CLI::App* propagate = app.add_subcommand("propagate", "render intensity maps for a scene");
    add_common(propagate, true);

    CLI::App* show = app.add_subcommand("show", "pretty-print a gate report");
    show->add_option("--config", config_path, "gate report JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<qfo_ctx, decltype(&qfo_ctx_free)> ctx(qfo_ctx_new(),
                                                          &qfo_ctx_free);
    if (!ctx) {
        std::cerr << "error: context allocation failed\n";
        return QFO_ERR_INTERNAL;
    }
    qfo_ctx_set_threads(ctx.get(), resolve_threads(threads));
    qfo_ctx_set_seed(ctx.get(), seed);

    const std::string config = read_file_or_die(config_path);
    qfo_status status = QFO_OK;
    if (synth->parsed()) {
        status = qfo_synth(ctx.get(), config.c_str(), out_dir.c_str());
    } else if (eval->parsed()) {
        status = qfo_eval(ctx.get(), config.c_str(), out_dir.c_str());
    } else if (propagate->parsed()) {
        status = qfo_propagate(ctx.get(), config.c_str(), out_dir.c_str());
    } else if (show->parsed()) {
        char* text = qfo_format_report(ctx.get(), config.c_str());
        if (!text) {
            std::cerr << "error: " << qfo_ctx_last_error(ctx.get()) << "\n";
            return QFO_ERR_CONFIG;
        }
        std::cout << text;
        qfo_string_free(text);
        return QFO_OK;
    }

    if (status != QFO_OK)
        std::cerr << "error: " << qfo_ctx_last_error(ctx.get()) << "\n";
    return status;
}
