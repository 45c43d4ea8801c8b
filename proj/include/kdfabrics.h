/* Copyright 2026 The kdfabrics Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Public C interface of the kdfabrics motion-behavior library.
 *
 * A scenario (planar chain + behaviors + optional projectile + run settings)
 * is loaded from a config file into an opaque handle, then simulated, swept
 * over launch speeds, or benchmarked.  All functions returning kdf_status
 * yield KDF_OK on success; on failure kdf_last_error() describes the problem
 * in one line.  The library keeps no global state besides that thread-local
 * error message; handles are immutable after load and may be shared across
 * threads for concurrent runs.
 */

#ifndef KDFABRICS_INCLUDE_KDFABRICS_H_
#define KDFABRICS_INCLUDE_KDFABRICS_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined _WIN32
#define KDF_API __declspec(dllexport)
#else
#define KDF_API __attribute__((visibility("default")))
#endif

typedef enum kdf_status {
  KDF_OK = 0,
  KDF_ERR_INVALID = 1,  /* bad argument (null pointer, bad range, ...) */
  KDF_ERR_PARSE = 2,    /* config could not be parsed or validated */
  KDF_ERR_DIVERGED = 3, /* rollout hit the divergence guard (outputs valid) */
  KDF_ERR_IO = 4,       /* file could not be opened or written */
  KDF_ERR_INTERNAL = 5  /* numerical or internal failure */
} kdf_status;

/* Opaque parsed-and-validated scenario. */
typedef struct kdf_scenario kdf_scenario;

typedef struct kdf_run_summary {
  long steps;                  /* logged integration steps */
  int diverged;                /* 1 when the divergence guard fired */
  double divergence_time;      /* s; -1 when it did not fire */
  double final_tracking_error; /* metres (or rad norm for posture goals) */
  double min_obstacle_dist;    /* m, obstacle center to nearest tracked
                                  point while in flight; inf when no
                                  obstacle is configured */
  double max_limit_violation;  /* rad beyond the joint limits */
  double mean_iter_us;         /* control-step wall time statistics */
  double std_iter_us;
  double median_iter_us;
} kdf_run_summary;

typedef struct kdf_timing {
  double mean_ms;
  double std_ms;
  double median_ms;
  double p99_ms;
  int samples; /* timed iterations after warm-up discard */
} kdf_timing;

/* Library version, "major.minor.patch". */
KDF_API const char* kdf_version(void);

/* Fully commented reference config with every supported key at its default.
 * The returned string is static; it parses cleanly with kdf_scenario_parse.
 */
KDF_API const char* kdf_defaults(void);

/* Thread-local message describing this thread's most recent failure. */
KDF_API const char* kdf_last_error(void);

/* Parse + validate a scenario config file into *out.
 * Fails with KDF_ERR_IO when the file cannot be read and KDF_ERR_PARSE when
 * its contents are invalid; the error message names file, line, and key.
 */
KDF_API kdf_status kdf_scenario_load(const char* path, kdf_scenario** out);

/* Same, from an in-memory string; `origin` names the source in errors
 * (pass NULL for "<string>"). */
KDF_API kdf_status kdf_scenario_parse(const char* text, const char* origin,
                                      kdf_scenario** out);

KDF_API void kdf_scenario_free(kdf_scenario* scenario);

/* Scenario introspection. */
KDF_API int kdf_scenario_dof(const kdf_scenario* scenario);
KDF_API int kdf_scenario_starts(const kdf_scenario* scenario);
KDF_API unsigned kdf_scenario_seed(const kdf_scenario* scenario);
KDF_API int kdf_scenario_sweep_lo(const kdf_scenario* scenario);
KDF_API int kdf_scenario_sweep_hi(const kdf_scenario* scenario);
KDF_API const char* kdf_scenario_out_csv(const kdf_scenario* scenario);
KDF_API const char* kdf_scenario_out_summary(const kdf_scenario* scenario);
/* 1 when the config declares a projectile obstacle. */
KDF_API int kdf_scenario_has_obstacle(const kdf_scenario* scenario);
KDF_API double kdf_scenario_obstacle_radius(const kdf_scenario* scenario);

/* Simulate the scenario once.
 *
 *   groups_off  space-separated behavior-group tags to drop (e.g. "EA RE"),
 *               or NULL for none.
 *   start       -1 runs the configured initial state; k in [0, starts)
 *               runs the k-th seeded perturbation of it.
 *   speed_override  obstacle launch speed in m/s; <= 0 keeps the configured
 *               value.
 *   csv_path    when non-NULL, the full per-step trajectory is written here.
 *   out         filled on KDF_OK and on KDF_ERR_DIVERGED (the rollout is
 *               still logged up to and including the diverging step).
 */
KDF_API kdf_status kdf_scenario_run(const kdf_scenario* scenario,
                                    const char* groups_off, int start,
                                    double speed_override,
                                    const char* csv_path,
                                    kdf_run_summary* out);

/* Time `iterations` control steps (>= 100) of the scenario with the given
 * groups dropped; no logging, no integration-horizon limit. */
KDF_API kdf_status kdf_scenario_bench(const kdf_scenario* scenario,
                                      const char* groups_off, int iterations,
                                      kdf_timing* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KDFABRICS_INCLUDE_KDFABRICS_H_ */
