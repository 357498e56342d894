/* rsp.h
 *
 * C interface to the remote-state-preparation simulator. The library
 * simulates preparation of a qubit cos(theta)|0> + sin(theta) e^{i phi}|1>
 * over shared (generally non-maximally) entangled channels, and evaluates
 * the closed-form entanglement-resource trade-offs.
 *
 * All objects returned through rsp_*_create / rsp_run* calls are opaque and
 * must be released with the matching rsp_*_free. Functions returning
 * rsp_status never throw; on failure rsp_last_error() carries a detail
 * message for the calling thread.
 */

#ifndef RSP_H
#define RSP_H

#ifndef RSP_API
#if defined(_WIN32) || defined(__CYGWIN__)
#if defined(rsp_EXPORTS)
#define RSP_API __declspec(dllexport)
#else
#define RSP_API __declspec(dllimport)
#endif
#elif defined(__GNUC__) && (__GNUC__ >= 4)
#define RSP_API __attribute__((visibility("default")))
#else
#define RSP_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsp_status {
    RSP_OK = 0,
    RSP_ERR_INVALID_ARGUMENT = 1, /* malformed call: null pointer, bad size */
    RSP_ERR_DOMAIN = 2,           /* parameter outside a formula's domain   */
    RSP_ERR_CENTRAL_GAP = 3,      /* theta uncovered at this schedule depth */
    RSP_ERR_INFEASIBLE_PLAN = 4,  /* POVM success probability too small     */
    RSP_ERR_INTERNAL = 5
} rsp_status;

typedef enum rsp_protocol {
    RSP_PROTOCOL_EXPLICIT = 0,
    RSP_PROTOCOL_IMPROVED1 = 1,
    RSP_PROTOCOL_APPENDIX_B = 2,
    RSP_PROTOCOL_IMPROVED2 = 3,
    RSP_PROTOCOL_GHZ = 4
} rsp_protocol;

typedef enum rsp_convention {
    RSP_FIDELITY_PROBABILITY = 0, /* <phi|rho|phi> */
    RSP_FIDELITY_OVERLAP = 1      /* |<actual|phi>| */
} rsp_convention;

typedef struct rsp_outcome rsp_outcome;
typedef struct rsp_plan rsp_plan;
typedef struct rsp_mc_report rsp_mc_report;

typedef struct rsp_branch_info {
    int cbit_count;     /* 1, or 2 for the GHZ protocol */
    int cbits[2];
    double probability;
    int failed;         /* POVM failure branch; fidelity not defined */
    double fidelity;    /* valid only when failed == 0 */
} rsp_branch_info;

typedef struct rsp_mc_branch_info {
    int cbit_count;
    int cbits[2];
    long long count;
    double frequency;
    int failed;
    double fidelity;    /* valid only when failed == 0 */
} rsp_mc_branch_info;

RSP_API const char* rsp_version(void);
RSP_API const char* rsp_status_name(rsp_status status);
/* Detail message of the calling thread's most recent failure ("" if none). */
RSP_API const char* rsp_last_error(void);

/* ---- schedule and resource formulas ---- */

/* A_n = arcsin((2q-1)^n)/2; requires 1/2 < q < 1, n >= 0. */
RSP_API rsp_status rsp_schedule_value(double q, int n, double* value);
/* Central-gap half-width A_N = pi/4 - arcsin((1 - 10^-m)/sqrt(2)), m >= 1. */
RSP_API rsp_status rsp_accuracy_gap(int m, double* gap_half_width);
/* Real-valued channel counts; ceil for integer depths. */
RSP_API rsp_status rsp_depth_appendix_a(double q, int m, double* n_real);
RSP_API rsp_status rsp_depth_improved1(double q, double f_min, double* n_real);
RSP_API rsp_status rsp_depth_appendix_b(double q, double f_min, double* n_real);

/* ---- protocol runs (exact branch enumeration) ---- */

/* Runs explicit, improved1, appendixB or ghz. depth is the schedule depth
 * (ignored by ghz, as is q). Use rsp_run_with_plan for improved2. */
RSP_API rsp_status rsp_run(rsp_protocol protocol, double theta, double phi,
                           double q, int depth, rsp_outcome** out);
RSP_API rsp_status rsp_run_with_plan(double theta, double phi,
                                     const rsp_plan* plan, rsp_outcome** out);
RSP_API void rsp_outcome_free(rsp_outcome* outcome);

RSP_API double rsp_outcome_simulated_fidelity(const rsp_outcome* outcome);
RSP_API int rsp_outcome_has_analytic_fidelity(const rsp_outcome* outcome);
RSP_API double rsp_outcome_analytic_fidelity(const rsp_outcome* outcome);
RSP_API int rsp_outcome_has_chi(const rsp_outcome* outcome);
RSP_API double rsp_outcome_chi(const rsp_outcome* outcome);
RSP_API rsp_convention rsp_outcome_convention(const rsp_outcome* outcome);
RSP_API double rsp_outcome_average_fidelity(const rsp_outcome* outcome);
RSP_API int rsp_outcome_has_success_probability(const rsp_outcome* outcome);
RSP_API double rsp_outcome_success_probability(const rsp_outcome* outcome);
RSP_API int rsp_outcome_branch_count(const rsp_outcome* outcome);
RSP_API rsp_status rsp_outcome_branch(const rsp_outcome* outcome, int index,
                                      rsp_branch_info* info);

/* ---- greedy channel compression ---- */

RSP_API rsp_status rsp_plan_create(double q, int n_channels, double p_success,
                                   rsp_plan** out);
RSP_API void rsp_plan_free(rsp_plan* plan);

RSP_API int rsp_plan_section_count(const rsp_plan* plan);       /* M */
RSP_API int rsp_plan_deepest(const rsp_plan* plan);             /* N */
RSP_API double rsp_plan_success_probability(const rsp_plan* plan);
/* Section k (0-based, deepest first): head channel index and covered range. */
RSP_API rsp_status rsp_plan_section(const rsp_plan* plan, int k, int* head,
                                    int* lo, int* hi);
/* theta intervals served by section k: [lower_lo, lower_hi] and the mirrored
 * [upper_lo, upper_hi]. */
RSP_API rsp_status rsp_plan_section_theta(const rsp_plan* plan, int k,
                                          double* lower_lo, double* lower_hi,
                                          double* upper_lo, double* upper_hi);

/* ---- Monte Carlo mode ---- */

/* Samples the exact branch decomposition; identical seeds give identical
 * reports. p_success is improved2's POVM probability (ignored otherwise). */
RSP_API rsp_status rsp_monte_carlo(rsp_protocol protocol, double theta,
                                   double phi, double q, int depth,
                                   double p_success, long long trials,
                                   unsigned long long seed,
                                   rsp_mc_report** out);
RSP_API void rsp_mc_report_free(rsp_mc_report* report);

RSP_API long long rsp_mc_report_trials(const rsp_mc_report* report);
RSP_API double rsp_mc_report_mean_fidelity(const rsp_mc_report* report);
RSP_API double rsp_mc_report_success_rate(const rsp_mc_report* report);
RSP_API int rsp_mc_report_branch_count(const rsp_mc_report* report);
RSP_API rsp_status rsp_mc_report_branch(const rsp_mc_report* report, int index,
                                        rsp_mc_branch_info* info);

#ifdef __cplusplus
}
#endif

#endif /* RSP_H */
