/* C interface for the noma-secrecy library. Generated by cbindgen; do not edit. */

#ifndef NOMA_SECRECY_H
#define NOMA_SECRECY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call in this interface.
typedef enum NsStatus {
  // The call succeeded.
  NS_OK = 0,
  // A required pointer was null or a string argument was malformed.
  NS_ERR_INVALID_ARGUMENT = 1,
  // A parameter value lies outside its valid range.
  NS_ERR_CONFIG = 2,
  // A configuration file could not be parsed.
  NS_ERR_PARSE = 3,
  // A file could not be read.
  NS_ERR_IO = 4,
  // A numerical routine failed to reach its accuracy target.
  NS_ERR_NUMERICAL = 5,
  // An internal invariant failed. The library state stays consistent, but
  // the result is unusable; please report the message as a bug.
  NS_ERR_PANIC = 6,
} NsStatus;

// Opaque handle holding the downlink description (powers, geometry, fading
// statistics, thresholds) together with the proposed residual-interference
// model's sensitivity parameter `zeta`.
typedef struct NsConfig NsConfig;

// Secrecy outage probabilities for both users as produced by one evaluator
// call. The `*_std_error` fields carry the binomial standard error of a
// Monte Carlo estimate and are 0.0 for the analytic methods.
typedef struct NsSopResult {
  double s1;
  double s2;
  double s1_std_error;
  double s2_std_error;
} NsSopResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on the calling thread, or an
// empty string after a success. The pointer stays valid until the next
// library call on the same thread; copy the contents if you need them
// longer.
const char *ns_last_error_message(void);

// Creates a handle with the reference defaults: 70 dB transmit SNR over
// -90 dBm noise, users at 50 m and 100 m, equal power split, unit SINR
// threshold, 0.1 bits/s/Hz target secrecy rates, and zeta = 1e-10.
// Release with ns_config_free(). Returns null only on internal failure.
struct NsConfig *ns_config_default(void);

// Parses a `key = value` configuration file and writes a new handle to
// `out`. The caller owns the handle on `NS_OK`; on any other status `out`
// is left untouched.
enum NsStatus ns_config_load(const char *path, struct NsConfig **out);

// Deep copy of a handle, or null if `cfg` is null.
struct NsConfig *ns_config_clone(const struct NsConfig *cfg);

// Releases a handle created by this library. Null is ignored.
void ns_config_free(struct NsConfig *cfg);

// Sets the power-allocation coefficient for the near user; must lie in
// (0, 1).
enum NsStatus ns_config_set_alpha(struct NsConfig *cfg, double alpha);

// Sets the transmit SNR as a linear power ratio (total transmit power over
// noise power); must be positive.
enum NsStatus ns_config_set_transmit_snr(struct NsConfig *cfg, double snr);

// Sets the SNR received by the far user as a linear ratio, rescaling the
// transmit power accordingly; must be positive.
enum NsStatus ns_config_set_received_snr(struct NsConfig *cfg, double snr);

// Sets the SINR threshold below which cancellation stays imperfect; must be
// positive.
enum NsStatus ns_config_set_gamma_th(struct NsConfig *cfg, double gamma_th);

// Sets both users' target secrecy rates in bits/s/Hz; each must lie in
// [0, 100].
enum NsStatus ns_config_set_target_rates(struct NsConfig *cfg, double r1, double r2);

// Sets both user distances in meters; each must be positive.
enum NsStatus ns_config_set_distances(struct NsConfig *cfg, double d1_m, double d2_m);

// Sets the proposed model's sensitivity parameter; must be positive and
// finite.
enum NsStatus ns_config_set_zeta(struct NsConfig *cfg, double zeta);

// Reads the power-allocation coefficient; NaN if `cfg` is null.
double ns_config_alpha(const struct NsConfig *cfg);

// Reads the transmit SNR as a linear ratio; NaN if `cfg` is null.
double ns_config_transmit_snr(const struct NsConfig *cfg);

// Reads the far user's received SNR as a linear ratio; NaN if `cfg` is
// null.
double ns_config_received_snr(const struct NsConfig *cfg);

// Reads the SINR threshold; NaN if `cfg` is null.
double ns_config_gamma_th(const struct NsConfig *cfg);

// Reads the proposed model's sensitivity parameter; NaN if `cfg` is null.
double ns_config_zeta(const struct NsConfig *cfg);

// Semi-analytic secrecy outage probabilities under the proposed
// residual-interference model.
enum NsStatus ns_sop_exact(const struct NsConfig *cfg, struct NsSopResult *out);

// Semi-analytic secrecy outage probabilities under perfect cancellation.
enum NsStatus ns_sop_exact_perfect(const struct NsConfig *cfg, struct NsSopResult *out);

// High-SNR closed-form approximation under the proposed model.
enum NsStatus ns_sop_asymptotic(const struct NsConfig *cfg, struct NsSopResult *out);

// High-SNR closed-form approximation under perfect cancellation.
enum NsStatus ns_sop_asymptotic_perfect(const struct NsConfig *cfg, struct NsSopResult *out);

// Monte Carlo secrecy outage probabilities for any residual-interference
// model. `model` takes the same descriptors as the CLI: `proposed`,
// `proposed:<zeta>`, `fixed:<beta>`, `constant:<g21>:<g12>`, or `perfect`;
// a bare `proposed` uses the handle's zeta. Runs are deterministic in
// (`n_samples`, `seed`) regardless of thread count.
enum NsStatus ns_sop_monte_carlo(const struct NsConfig *cfg,
                                 const char *model,
                                 uint64_t n_samples,
                                 uint64_t seed,
                                 struct NsSopResult *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NOMA_SECRECY_H */
