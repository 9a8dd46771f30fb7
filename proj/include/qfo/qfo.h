/* C interface to the quantum Fourier-optics gate toolkit.
 *
 * All entry points are driven by JSON configuration strings and write
 * their artifacts (reports, profiles, intensity maps) under an output
 * directory. Status codes mirror the CLI exit codes.
 */
#ifndef QFO_H
#define QFO_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qfo_status {
    QFO_OK = 0,
    QFO_ERR_CONFIG = 1,       /* malformed or inconsistent configuration */
    QFO_ERR_OPTIMIZATION = 2, /* synthesis missed the stage-1 fidelity floor */
    QFO_ERR_PHYSICS = 3,      /* paraxial / aliasing validity violated */
    QFO_ERR_INTERNAL = 4
} qfo_status;

/* Opaque context: carries thread/seed settings and the last error text. */
typedef struct qfo_ctx qfo_ctx;

qfo_ctx* qfo_ctx_new(void);
void qfo_ctx_free(qfo_ctx* ctx);

/* Message from the most recent failing call on this context.
 * Valid until the next call on the same context. */
const char* qfo_ctx_last_error(const qfo_ctx* ctx);

/* Worker threads for synthesis restarts. <= 0 means single-threaded. */
void qfo_ctx_set_threads(qfo_ctx* ctx, int threads);

/* Seed override applied to subsequent qfo_synth calls; < 0 clears it. */
void qfo_ctx_set_seed(qfo_ctx* ctx, long long seed);

/* Two-stage gate synthesis. Writes gate_report.json, pupil.json,
 * diag.json (and pupil2.json when pupils are not shared) to out_dir. */
qfo_status qfo_synth(qfo_ctx* ctx, const char* config_json, const char* out_dir);

/* Re-scores persisted profiles against a target; never optimizes. */
qfo_status qfo_eval(qfo_ctx* ctx, const char* config_json, const char* out_dir);

/* Scalar-wave propagation; writes intensity.csv / intensity.pgm and,
 * with a projector configured, projected.csv / projected.pgm. */
qfo_status qfo_propagate(qfo_ctx* ctx, const char* config_json,
                         const char* out_dir);

/* Pretty-printed report (magnitude * e^{i phase} matrices). Returns a
 * heap string to release with qfo_string_free, or NULL on error. */
char* qfo_format_report(qfo_ctx* ctx, const char* report_json);
void qfo_string_free(char* s);

const char* qfo_version(void);

#ifdef __cplusplus
}
#endif

#endif /* QFO_H */
