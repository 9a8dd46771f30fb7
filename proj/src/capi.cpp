#include "qfo/qfo.h"

#include <cstring>
#include <string>

#include "qfo/commands.hpp"

struct qfo_ctx {
    std::string last_error;
    int threads = 1;
    long long seed_override = -1;
};

namespace {

qfo_status finish(qfo_ctx* ctx, const qfo::cmd::Outcome& outcome) {
    ctx->last_error = outcome.status == 0 ? std::string{} : outcome.message;
    return static_cast<qfo_status>(outcome.status);
}

}  // namespace

extern "C" {

qfo_ctx* qfo_ctx_new(void) { return new (std::nothrow) qfo_ctx; }

void qfo_ctx_free(qfo_ctx* ctx) { delete ctx; }

const char* qfo_ctx_last_error(const qfo_ctx* ctx) {
    return ctx ? ctx->last_error.c_str() : "";
}

void qfo_ctx_set_threads(qfo_ctx* ctx, int threads) {
    if (ctx) ctx->threads = threads > 0 ? threads : 1;
}

void qfo_ctx_set_seed(qfo_ctx* ctx, long long seed) {
    if (ctx) ctx->seed_override = seed;
}

qfo_status qfo_synth(qfo_ctx* ctx, const char* config_json, const char* out_dir) {
    if (!ctx || !config_json || !out_dir) return QFO_ERR_CONFIG;
    return finish(ctx, qfo::cmd::run_synth(config_json, out_dir,
                                           ctx->seed_override, ctx->threads));
}

qfo_status qfo_eval(qfo_ctx* ctx, const char* config_json, const char* out_dir) {
    if (!ctx || !config_json || !out_dir) return QFO_ERR_CONFIG;
    return finish(ctx, qfo::cmd::run_eval(config_json, out_dir));
}

qfo_status qfo_propagate(qfo_ctx* ctx, const char* config_json,
                         const char* out_dir) {
    if (!ctx || !config_json || !out_dir) return QFO_ERR_CONFIG;
    return finish(ctx, qfo::cmd::run_propagate(config_json, out_dir));
}

char* qfo_format_report(qfo_ctx* ctx, const char* report_json) {
    if (!ctx || !report_json) return nullptr;
    try {
        std::string text = qfo::cmd::format_report(report_json);
        char* out = static_cast<char*>(std::malloc(text.size() + 1));
        if (!out) return nullptr;
        std::memcpy(out, text.c_str(), text.size() + 1);
        ctx->last_error.clear();
        return out;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return nullptr;
    }
}

void qfo_string_free(char* s) { std::free(s); }

const char* qfo_version(void) { return "0.1.0"; }

}  // extern "C"
