// Copyright 2026 The kdfabrics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// C binding over the core library.  Each call builds a fresh simulation
// from the immutable parsed config, so one handle can serve concurrent runs.

#include "kdfabrics.h"

#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "config.h"
#include "sim.h"

namespace {

thread_local std::string t_error;

void set_error(const std::string& msg) { t_error = msg; }

template <typename F>
kdf_status guarded(F&& fn) {
  try {
    return fn();
  } catch (const kdf::ConfigError& e) {
    set_error(e.what());
    return KDF_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return KDF_ERR_INVALID;
  } catch (const std::runtime_error& e) {
    set_error(e.what());
    return std::string(e.what()).rfind("write_csv:", 0) == 0 ? KDF_ERR_IO
                                                             : KDF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return KDF_ERR_INTERNAL;
  }
}

std::vector<std::string> split_tags(const char* s) {
  std::vector<std::string> out;
  if (s == nullptr) return out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// The k-th seeded start: q0 plus a uniform per-joint perturbation.  The
// generator is a function of the seed alone, so start k is reproducible
// regardless of which other starts ran before it.
kdf::Vec perturbed_q0(const kdf::ScenarioConfig& cfg, const kdf::Vec& q0,
                      int start) {
  const int n = static_cast<int>(q0.size());
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(-cfg.start_spread,
                                             cfg.start_spread);
  kdf::Vec q = q0;
  for (int k = 0; k <= start; ++k)
    for (int j = 0; j < n; ++j) {
      const double d = uni(rng);
      if (k == start) q[j] = q0[j] + d;
    }
  return q;
}

}  // namespace

struct kdf_scenario {
  kdf::ScenarioConfig cfg;
};

extern "C" {

const char* kdf_version(void) { return "1.0.0"; }

const char* kdf_defaults(void) {
  static const std::string text = kdf::emit_defaults();
  return text.c_str();
}

const char* kdf_last_error(void) { return t_error.c_str(); }

kdf_status kdf_scenario_load(const char* path, kdf_scenario** out) {
  if (path == nullptr || out == nullptr) {
    set_error("kdf_scenario_load: null argument");
    return KDF_ERR_INVALID;
  }
  *out = nullptr;
  std::ifstream f(path);
  if (!f) {
    set_error(std::string(path) + ": cannot open");
    return KDF_ERR_IO;
  }
  std::ostringstream os;
  os << f.rdbuf();
  return kdf_scenario_parse(os.str().c_str(), path, out);
}

kdf_status kdf_scenario_parse(const char* text, const char* origin,
                              kdf_scenario** out) {
  if (text == nullptr || out == nullptr) {
    set_error("kdf_scenario_parse: null argument");
    return KDF_ERR_INVALID;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<kdf_scenario>();
    handle->cfg = kdf::parse_scenario_text(
        text, origin == nullptr ? "<string>" : origin);
    handle->cfg.build();  // surface model/behavior construction errors now
    *out = handle.release();
    return KDF_OK;
  });
}

void kdf_scenario_free(kdf_scenario* scenario) { delete scenario; }

int kdf_scenario_dof(const kdf_scenario* s) {
  return s == nullptr ? 0 : static_cast<int>(s->cfg.links.size());
}

int kdf_scenario_starts(const kdf_scenario* s) {
  return s == nullptr ? 0 : s->cfg.starts;
}

unsigned kdf_scenario_seed(const kdf_scenario* s) {
  return s == nullptr ? 0 : s->cfg.seed;
}

int kdf_scenario_sweep_lo(const kdf_scenario* s) {
  return s == nullptr ? 0 : s->cfg.sweep_lo;
}

int kdf_scenario_sweep_hi(const kdf_scenario* s) {
  return s == nullptr ? 0 : s->cfg.sweep_hi;
}

const char* kdf_scenario_out_csv(const kdf_scenario* s) {
  return s == nullptr ? "" : s->cfg.out_csv.c_str();
}

const char* kdf_scenario_out_summary(const kdf_scenario* s) {
  return s == nullptr ? "" : s->cfg.out_summary.c_str();
}

int kdf_scenario_has_obstacle(const kdf_scenario* s) {
  return (s != nullptr && s->cfg.has_obstacle) ? 1 : 0;
}

double kdf_scenario_obstacle_radius(const kdf_scenario* s) {
  return (s != nullptr && s->cfg.has_obstacle) ? s->cfg.obstacle.radius : 0.;
}

kdf_status kdf_scenario_run(const kdf_scenario* scenario,
                            const char* groups_off, int start,
                            double speed_override, const char* csv_path,
                            kdf_run_summary* out) {
  if (scenario == nullptr || out == nullptr) {
    set_error("kdf_scenario_run: null argument");
    return KDF_ERR_INVALID;
  }
  if (start < -1 || start >= scenario->cfg.starts) {
    set_error("kdf_scenario_run: start index out of range");
    return KDF_ERR_INVALID;
  }
  return guarded([&]() -> kdf_status {
    kdf::Scenario sc = scenario->cfg.build(split_tags(groups_off));
    if (start >= 0) sc.q0 = perturbed_q0(scenario->cfg, sc.q0, start);
    if (speed_override > 0.) {
      if (!sc.obstacle.has_value()) {
        set_error("kdf_scenario_run: no obstacle to override the speed of");
        return KDF_ERR_INVALID;
      }
      sc.obstacle->speed = speed_override;
    }
    const kdf::RolloutResult r = kdf::rollout(sc);
    if (csv_path != nullptr) kdf::write_csv(csv_path, sc.model, r);
    out->steps = static_cast<long>(r.steps.size());
    out->diverged = r.diverged ? 1 : 0;
    out->divergence_time = r.divergence_time;
    out->final_tracking_error = r.final_tracking_error;
    out->min_obstacle_dist = r.min_obstacle_dist;
    out->max_limit_violation = r.max_limit_violation;
    out->mean_iter_us = r.mean_iter_us;
    out->std_iter_us = r.std_iter_us;
    out->median_iter_us = r.median_iter_us;
    if (r.diverged) {
      std::ostringstream os;
      os << "diverged at t=" << r.divergence_time << " s";
      set_error(os.str());
      return KDF_ERR_DIVERGED;
    }
    return KDF_OK;
  });
}

kdf_status kdf_scenario_bench(const kdf_scenario* scenario,
                              const char* groups_off, int iterations,
                              kdf_timing* out) {
  if (scenario == nullptr || out == nullptr) {
    set_error("kdf_scenario_bench: null argument");
    return KDF_ERR_INVALID;
  }
  return guarded([&] {
    kdf::Scenario sc = scenario->cfg.build(split_tags(groups_off));
    const kdf::TimingSummary t = kdf::benchmark(sc, iterations);
    out->mean_ms = t.mean_ms;
    out->std_ms = t.std_ms;
    out->median_ms = t.median_ms;
    out->p99_ms = t.p99_ms;
    out->samples = t.samples;
    return KDF_OK;
  });
}

}  // extern "C"
