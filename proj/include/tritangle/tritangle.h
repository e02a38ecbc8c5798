/* tritangle: entanglement measures and dynamics for a three-qubit
 * Heisenberg XXZ chain with DM interaction.
 *
 * Every call returns a tt_status; on failure tt_last_error() holds a message
 * for the calling thread. Handles returned through out-pointers are owned by
 * the caller and released with the matching *_free function.
 *
 * Strings are written with tt_copy semantics: `buf` receives at most cap-1
 * characters plus a terminator, `*len` (if non-null) receives the full
 * length, and TT_ERR_INVALID_ARGUMENT is returned when cap is too small.
 */
#ifndef TRITANGLE_H
#define TRITANGLE_H

#include <stddef.h>

#if defined(_WIN32)
#define TT_API __declspec(dllexport)
#else
#define TT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tt_status {
    TT_OK = 0,
    TT_ERR_INVALID_ARGUMENT = 1,
    TT_ERR_DOMAIN = 2,
    TT_ERR_RANK = 3,
    TT_ERR_NOT_CONVERGED = 4,
    TT_ERR_IO = 5,
    TT_ERR_INTERNAL = 6
} tt_status;

typedef enum tt_mform { TT_MFORM_STANDARD = 0, TT_MFORM_SINGLE_CROSS = 1, TT_MFORM_WEIGHTED = 2 } tt_mform;

typedef struct tt_state tt_state;
typedef struct tt_channel tt_channel;
typedef struct tt_sweep tt_sweep;
typedef struct tt_oracle_report tt_oracle_report;

typedef struct tt_hamiltonian {
    double J;
    double Delta;
    double D;
    double B;
} tt_hamiltonian;

typedef struct tt_report {
    double c_ab, c_ac, c_bc;
    double c2_a_bc, c2_b_ac, c2_c_ab;
    double tau, gtc, fill; /* valid only when the has_ flag is set */
    int has_tau, has_gtc, has_fill;
    double s_lin;
    char path[24];    /* pure, rank2, spectral, spectral-degenerate */
    char warning[96]; /* empty unless an eigenvalue sits near the rank threshold */
} tt_report;

TT_API const char* tt_last_error(void);
TT_API const char* tt_status_name(tt_status s);
TT_API const char* tt_version(void);

/* states: ghz, gghz:a, w, wbar, wwbar:theta[,phi], gw:a,b, mix-ghz:w1,w2, mix-w:w */
TT_API tt_status tt_state_parse(const char* spec, tt_state** out);
/* 64 entries each, row-major; validated (Hermitian, unit trace, PSD) */
TT_API tt_status tt_state_from_matrix(const double* re, const double* im, tt_state** out);
TT_API tt_status tt_state_matrix(const tt_state* s, double* re, double* im);
TT_API void tt_state_free(tt_state* s);

TT_API tt_status tt_evolve_schrodinger(const tt_state* in, const tt_hamiltonian* h, double t, tt_state** out);
TT_API tt_status tt_evolve_milburn(const tt_state* in, const tt_hamiltonian* h, double gamma, double t, tt_state** out);

/* channels: pdc:d, adc:d, gadc:d,p, ntd:lambda; placement q1, q2, q3, all */
TT_API tt_status tt_channel_parse(const char* spec, tt_channel** out);
TT_API void tt_channel_free(tt_channel* c);
TT_API tt_status tt_channel_apply(const tt_channel* c, const tt_state* in, const char* placement, tt_state** out);
TT_API tt_status tt_dephasing_lambda(double b, double tau, double t, double* out);

TT_API tt_status tt_measure(const tt_state* s, tt_mform form, tt_report* out);
TT_API tt_status tt_report_csv_header(const char* param_name, char* buf, size_t cap, size_t* len);
TT_API tt_status tt_measure_csv(const tt_state* s, tt_mform form, double param, char* buf, size_t cap, size_t* len);

/* scenarios (closed-form oracle families) */
TT_API size_t tt_scenario_count(void);
TT_API const char* tt_scenario_name(size_t i);
TT_API const char* tt_scenario_params(size_t i);
TT_API const char* tt_scenario_domain(size_t i);

TT_API size_t tt_figure_count(void);
TT_API const char* tt_figure_id(size_t i);
/* writes <fig>_<panel>.csv under out_dir; the path list is newline separated */
TT_API tt_status tt_run_figure(const char* fig, const char* out_dir, char* paths, size_t cap, size_t* len);

/* grid sweep over one scenario: full report plus closed-form columns */
TT_API tt_status tt_sweep_new(const char* scenario, tt_sweep** out);
TT_API void tt_sweep_free(tt_sweep* s);
TT_API tt_status tt_sweep_set_param(tt_sweep* s, const char* name, double value);
TT_API tt_status tt_sweep_add_axis(tt_sweep* s, const char* name, double start, double stop, int steps);
TT_API tt_status tt_sweep_write(const tt_sweep* s, const char* path);
TT_API tt_status tt_sweep_csv(const tt_sweep* s, char* buf, size_t cap, size_t* len);

/* numeric pipeline against closed forms on the default grid */
TT_API tt_status tt_validate_oracle(const char* scenario, tt_oracle_report** out);
TT_API void tt_oracle_report_free(tt_oracle_report* r);
TT_API int tt_oracle_report_pass(const tt_oracle_report* r);
TT_API size_t tt_oracle_report_points(const tt_oracle_report* r);
TT_API double tt_oracle_report_seconds(const tt_oracle_report* r);
TT_API size_t tt_oracle_report_field_count(const tt_oracle_report* r);
/* name and worst point stay valid until the report is freed; tolerance < 0
   marks the pointwise 10 w^4 rule */
TT_API tt_status tt_oracle_report_field(const tt_oracle_report* r, size_t i, const char** name, double* max_dev,
                                        double* tolerance, int* pass, const char** worst);

#ifdef __cplusplus
}
#endif

#endif
