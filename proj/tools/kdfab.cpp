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

// kdfab — scenario runner, launch-speed sweeper, and benchmark for the
// kdfabrics library.  Talks to the library through its public C interface
// only.
//
// Exit codes: 0 success, 1 usage error, 2 config (schema) error,
// 3 divergence, 70 internal failure, 4 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kdfabrics.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSchema = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 70;

[[noreturn]] void die(const char* category, const std::string& msg, int code) {
  std::cerr << "kdfab: " << category << ": " << msg << "\n";
  std::exit(code);
}

// Output directory: KDFAB_OUT_DIR wins over --out-dir wins over cwd.
fs::path output_dir(const std::string& flag_dir) {
  const char* env = std::getenv("KDFAB_OUT_DIR");
  if (env != nullptr && *env != '\0') return fs::path(env);
  if (!flag_dir.empty()) return fs::path(flag_dir);
  return fs::path(".");
}

// Resolve a configured/flagged file name against the output directory and
// make sure its parent exists.
std::string resolve_output(const std::string& name, const fs::path& dir) {
  fs::path p(name);
  if (!p.is_absolute()) p = dir / p;
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) die("io", "cannot create " + p.parent_path().string(), kExitIo);
  return p.string();
}

kdf_scenario* load_or_die(const std::string& path) {
  kdf_scenario* s = nullptr;
  const kdf_status st = kdf_scenario_load(path.c_str(), &s);
  if (st == KDF_OK) return s;
  if (st == KDF_ERR_IO) die("io", kdf_last_error(), kExitIo);
  if (st == KDF_ERR_PARSE) die("schema", kdf_last_error(), kExitSchema);
  die("internal", kdf_last_error(), kExitInternal);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f.good()) die("io", "cannot write " + path, kExitIo);
}

std::string format_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Non-finite values (no obstacle in flight) are reported as -1 so the JSON
// stays standard.
double finite_or(double v, double fallback) {
  return std::isfinite(v) ? v : fallback;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

json summary_json(int start, const kdf_run_summary& r) {
  return json{{"start", start},
              {"steps", r.steps},
              {"diverged", r.diverged != 0},
              {"divergence_time", r.divergence_time},
              {"final_tracking_error", r.final_tracking_error},
              {"min_obstacle_dist", finite_or(r.min_obstacle_dist, -1.)},
              {"max_limit_violation", r.max_limit_violation},
              {"mean_iter_us", r.mean_iter_us},
              {"std_iter_us", r.std_iter_us},
              {"median_iter_us", r.median_iter_us}};
}

// ---------------------------------------------------------------------------
// run: simulate every configured start, write the first trajectory as CSV
// plus a JSON summary of all of them.

int cmd_run(const std::string& config, const std::string& dir_flag,
            std::string csv_name, std::string summary_name) {
  kdf_scenario* sc = load_or_die(config);
  const fs::path dir = output_dir(dir_flag);
  if (csv_name.empty()) csv_name = kdf_scenario_out_csv(sc);
  if (summary_name.empty()) summary_name = kdf_scenario_out_summary(sc);
  const std::string csv_path = resolve_output(csv_name, dir);
  const std::string summary_path = resolve_output(summary_name, dir);

  const int starts = kdf_scenario_starts(sc);
  std::vector<int> start_ids;
  if (starts <= 1) start_ids.push_back(-1);
  else for (int k = 0; k < starts; ++k) start_ids.push_back(k);

  json runs = json::array();
  bool any_diverged = false;
  double worst_err = 0., min_dist = std::numeric_limits<double>::infinity();
  double worst_viol = 0.;
  for (size_t i = 0; i < start_ids.size(); ++i) {
    kdf_run_summary r{};
    const kdf_status st =
        kdf_scenario_run(sc, nullptr, start_ids[i], 0.,
                         i == 0 ? csv_path.c_str() : nullptr, &r);
    if (st == KDF_ERR_IO) die("io", kdf_last_error(), kExitIo);
    if (st != KDF_OK && st != KDF_ERR_DIVERGED)
      die("internal", kdf_last_error(), kExitInternal);
    any_diverged = any_diverged || st == KDF_ERR_DIVERGED;
    worst_err = std::max(worst_err, r.final_tracking_error);
    min_dist = std::min(min_dist, r.min_obstacle_dist);
    worst_viol = std::max(worst_viol, r.max_limit_violation);
    runs.push_back(summary_json(start_ids[i], r));
  }

  const json out{{"command", "run"},
                 {"config", config},
                 {"dof", kdf_scenario_dof(sc)},
                 {"starts", static_cast<int>(start_ids.size())},
                 {"any_diverged", any_diverged},
                 {"worst_final_tracking_error", worst_err},
                 {"min_obstacle_dist", finite_or(min_dist, -1.)},
                 {"max_limit_violation", worst_viol},
                 {"csv", csv_path},
                 {"runs", runs}};
  write_text(summary_path, out.dump(2) + "\n");

  std::cout << "run: " << start_ids.size() << " rollout(s), worst tracking error "
            << format_num(worst_err) << " m, max limit violation "
            << format_num(worst_viol) << " rad";
  if (std::isfinite(min_dist))
    std::cout << ", min obstacle distance " << format_num(min_dist) << " m";
  std::cout << "\n  wrote " << csv_path << " and " << summary_path << "\n";
  if (any_diverged) die("diverged", "one or more rollouts hit the speed guard",
                        kExitDiverged);
  kdf_scenario_free(sc);
  return 0;
}

// ---------------------------------------------------------------------------
// sweep: launch-speed sweep with the repeller group enabled vs dropped.

int cmd_sweep(const std::string& config, const std::string& dir_flag,
              std::string table_name, std::string summary_name,
              const std::string& speeds_flag,
              const std::string& repeller_flag) {
  bool run_on = false, run_off = false;
  for (const std::string& arm : split_on(repeller_flag, ',')) {
    if (arm == "on") run_on = true;
    else if (arm == "off") run_off = true;
    else die("usage", "--repeller takes on, off, or on,off", kExitUsage);
  }
  if (!run_on && !run_off)
    die("usage", "--repeller takes on, off, or on,off", kExitUsage);

  kdf_scenario* sc = load_or_die(config);
  if (kdf_scenario_has_obstacle(sc) == 0)
    die("schema", config + ": sweep needs an [obstacle] section", kExitSchema);
  const fs::path dir = output_dir(dir_flag);
  if (table_name.empty()) table_name = kdf_scenario_out_csv(sc);
  if (summary_name.empty()) summary_name = kdf_scenario_out_summary(sc);
  const std::string table_path = resolve_output(table_name, dir);
  const std::string summary_path = resolve_output(summary_name, dir);

  int lo = kdf_scenario_sweep_lo(sc), hi = kdf_scenario_sweep_hi(sc);
  if (!speeds_flag.empty() &&
      (std::sscanf(speeds_flag.c_str(), "%d:%d", &lo, &hi) != 2 || lo < 1 ||
       lo > hi))
    die("usage", "--speeds expects lo:hi with 1 <= lo <= hi", kExitUsage);
  const double radius = kdf_scenario_obstacle_radius(sc);
  struct Row {
    int speed;
    double on, off;   // min obstacle-center distance over the rollout
    bool hit_on, hit_off, div_on, div_off;
  };
  std::vector<Row> rows;
  bool any_diverged = false;
  for (int v = lo; v <= hi; ++v) {
    kdf_run_summary on{}, off{};
    Row r{};
    r.speed = v;
    if (run_on) {
      const kdf_status st = kdf_scenario_run(sc, nullptr, -1,
                                             static_cast<double>(v), nullptr,
                                             &on);
      if (st != KDF_OK && st != KDF_ERR_DIVERGED)
        die("internal", kdf_last_error(), kExitInternal);
      r.on = on.min_obstacle_dist;
      r.hit_on = r.on <= radius;
      r.div_on = st == KDF_ERR_DIVERGED;
    }
    if (run_off) {
      const kdf_status st = kdf_scenario_run(sc, "RE", -1,
                                             static_cast<double>(v), nullptr,
                                             &off);
      if (st != KDF_OK && st != KDF_ERR_DIVERGED)
        die("internal", kdf_last_error(), kExitInternal);
      r.off = off.min_obstacle_dist;
      r.hit_off = r.off <= radius;
      r.div_off = st == KDF_ERR_DIVERGED;
    }
    any_diverged = any_diverged || r.div_on || r.div_off;
    rows.push_back(r);
  }

  // Clearance = distance from the obstacle surface; 0 means a hit.
  auto clearance = [&](double center) { return std::max(center - radius, 0.); };
  std::string csv = "speed";
  if (run_on && run_off)
    csv +=
        ",min_dist_repeller_on,min_dist_repeller_off,clearance_on,"
        "clearance_off,hit_on,hit_off";
  else if (run_on)
    csv += ",min_dist_repeller_on,clearance_on,hit_on";
  else
    csv += ",min_dist_repeller_off,clearance_off,hit_off";
  csv += "\n";
  for (const Row& r : rows) {
    csv += std::to_string(r.speed);
    if (run_on && run_off)
      csv += "," + format_num(r.on) + "," + format_num(r.off) + "," +
             format_num(clearance(r.on)) + "," + format_num(clearance(r.off)) +
             "," + (r.hit_on ? "1" : "0") + "," + (r.hit_off ? "1" : "0");
    else if (run_on)
      csv += "," + format_num(r.on) + "," + format_num(clearance(r.on)) + "," +
             (r.hit_on ? "1" : "0");
    else
      csv += "," + format_num(r.off) + "," + format_num(clearance(r.off)) +
             "," + (r.hit_off ? "1" : "0");
    csv += "\n";
  }
  write_text(table_path, csv);

  // Sweep-level observations (paired arms only): does enabling the repeller
  // keep the obstacle at least as far (and usually strictly farther) away,
  // and does the clearance shrink monotonically with launch speed until the
  // first hit?
  bool ge_all = true;
  int strictly_better = 0;
  int first_hit = 0;  // 0 = never hit with the repeller on
  bool monotone = true;
  if (run_on) {
    for (const Row& r : rows)
      if (r.hit_on && first_hit == 0) first_hit = r.speed;
    for (size_t i = 1; i < rows.size(); ++i) {
      if (first_hit != 0 && rows[i].speed > first_hit) break;
      monotone = monotone && rows[i].on <= rows[i - 1].on;
    }
  }
  if (run_on && run_off) {
    for (const Row& r : rows) {
      ge_all = ge_all && r.on >= r.off;
      if (r.on > r.off) ++strictly_better;
    }
  }

  json jrows = json::array();
  for (const Row& r : rows) {
    json jr{{"speed", r.speed}};
    if (run_on) {
      jr["min_dist_on"] = finite_or(r.on, -1.);
      jr["clearance_on"] = finite_or(clearance(r.on), -1.);
      jr["hit_on"] = r.hit_on;
      jr["diverged_on"] = r.div_on;
    }
    if (run_off) {
      jr["min_dist_off"] = finite_or(r.off, -1.);
      jr["clearance_off"] = finite_or(clearance(r.off), -1.);
      jr["hit_off"] = r.hit_off;
      jr["diverged_off"] = r.div_off;
    }
    jrows.push_back(std::move(jr));
  }
  json out{{"command", "sweep"},
           {"config", config},
           {"speeds", json{{"lo", lo}, {"hi", hi}}},
           {"obstacle_radius", radius},
           {"speed_count", static_cast<int>(rows.size())},
           {"any_diverged", any_diverged},
           {"table", table_path},
           {"rows", jrows}};
  if (run_on) {
    out["first_hit_speed_on"] = first_hit;
    out["monotone_to_first_hit"] = monotone;
  }
  if (run_on && run_off) {
    out["repeller_on_all_ge_off"] = ge_all;
    out["strictly_better_count"] = strictly_better;
  }
  write_text(summary_path, out.dump(2) + "\n");

  std::printf("%6s", "speed");
  if (run_on) std::printf(" %16s %8s", "min dist (on)", "hit on");
  if (run_off) std::printf(" %16s %8s", "min dist (off)", "hit off");
  std::printf("\n");
  for (const Row& r : rows) {
    std::printf("%6d", r.speed);
    if (run_on) std::printf(" %16.6f %8s", r.on, r.hit_on ? "yes" : "no");
    if (run_off) std::printf(" %16.6f %8s", r.off, r.hit_off ? "yes" : "no");
    std::printf("\n");
  }
  if (run_on && run_off)
    std::cout << "sweep: on>=off " << (ge_all ? "everywhere" : "VIOLATED")
              << ", strictly better " << strictly_better << "/" << rows.size()
              << ", monotone to first hit " << (monotone ? "yes" : "NO")
              << "\n";
  std::cout << "  wrote " << table_path << " and " << summary_path << "\n";
  if (any_diverged)
    die("diverged", "one or more sweep rollouts hit the speed guard",
        kExitDiverged);
  kdf_scenario_free(sc);
  return 0;
}

// ---------------------------------------------------------------------------
// bench: control-step wall time for the standard behavior combinations.

int cmd_bench(const std::string& config, const std::string& dir_flag,
              int iterations, std::string table_name, std::string summary_name,
              const std::string& combos_flag) {
  // Each combination names the behavior groups to KEEP; everything else in
  // the group universe is dropped for that row.
  std::vector<std::string> combo_names = {"PO+BL", "PO+EA+BL", "PO+BL+RE",
                                          "PO+EA+BL+RE"};
  if (!combos_flag.empty()) {
    combo_names = split_on(combos_flag, ',');
    if (combo_names.empty())
      die("usage", "--combos expects e.g. PO+BL,PO+EA+BL+RE", kExitUsage);
  }
  std::vector<std::string> universe = {"PO", "EA", "BL", "RE"};
  for (const std::string& name : combo_names)
    for (const std::string& tag : split_on(name, '+'))
      if (std::find(universe.begin(), universe.end(), tag) == universe.end())
        universe.push_back(tag);
  auto groups_off = [&](const std::string& name) {
    const std::vector<std::string> keep = split_on(name, '+');
    std::string off;
    for (const std::string& tag : universe) {
      if (std::find(keep.begin(), keep.end(), tag) != keep.end()) continue;
      if (!off.empty()) off += ' ';
      off += tag;
    }
    return off;
  };

  kdf_scenario* sc = load_or_die(config);
  const fs::path dir = output_dir(dir_flag);
  if (table_name.empty()) table_name = kdf_scenario_out_csv(sc);
  if (summary_name.empty()) summary_name = kdf_scenario_out_summary(sc);
  const std::string table_path = resolve_output(table_name, dir);
  const std::string summary_path = resolve_output(summary_name, dir);

  std::string csv = "combination,samples,mean_ms,std_ms,median_ms,p99_ms\n";
  json jrows = json::array();
  double base_mean = 0., full_mean = 0.;
  std::printf("%14s %10s %10s %10s %10s\n", "combination", "mean ms",
              "std ms", "median ms", "p99 ms");
  for (const std::string& name : combo_names) {
    kdf_timing t{};
    const kdf_status st =
        kdf_scenario_bench(sc, groups_off(name).c_str(), iterations, &t);
    if (st == KDF_ERR_INVALID) die("usage", kdf_last_error(), kExitUsage);
    if (st != KDF_OK) die("internal", kdf_last_error(), kExitInternal);
    csv += name + "," + std::to_string(t.samples) + "," +
           format_num(t.mean_ms) + "," + format_num(t.std_ms) + "," +
           format_num(t.median_ms) + "," + format_num(t.p99_ms) + "\n";
    jrows.push_back(json{{"combination", name},
                         {"samples", t.samples},
                         {"mean_ms", t.mean_ms},
                         {"std_ms", t.std_ms},
                         {"median_ms", t.median_ms},
                         {"p99_ms", t.p99_ms}});
    if (name == "PO+BL") base_mean = t.mean_ms;
    if (name == "PO+EA+BL+RE") full_mean = t.mean_ms;
    std::printf("%14s %10.4f %10.4f %10.4f %10.4f\n", name.c_str(), t.mean_ms,
                t.std_ms, t.median_ms, t.p99_ms);
  }
  write_text(table_path, csv);

  const double scaling = base_mean > 0. ? full_mean / base_mean : 0.;
  const json out{{"command", "bench"},
                 {"config", config},
                 {"iterations", iterations},
                 {"full_over_baseline_mean", scaling},
                 {"table", table_path},
                 {"rows", jrows}};
  write_text(summary_path, out.dump(2) + "\n");
  std::cout << "bench: full/baseline mean ratio " << format_num(scaling)
            << "\n  wrote " << table_path << " and " << summary_path << "\n";
  kdf_scenario_free(sc);
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& config) {
  kdf_scenario* sc = load_or_die(config);
  std::cout << "OK: " << config << ": " << kdf_scenario_dof(sc) << " joints"
            << (kdf_scenario_has_obstacle(sc) ? ", projectile obstacle" : "")
            << "\n";
  kdf_scenario_free(sc);
  return 0;
}

int cmd_emit_defaults(const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << kdf_defaults();
    return 0;
  }
  write_text(out_file, kdf_defaults());
  std::cout << "wrote " << out_file << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kdfabrics scenario runner and benchmark"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() { return kdf_version(); });

  std::string config, dir_flag, csv_name, summary_name, table_name, out_file;
  std::string combos_flag, speeds_flag, repeller_flag = "on,off";
  int iterations = 2000;

  CLI::App* run = app.add_subcommand("run", "simulate a scenario");
  run->add_option("config", config, "scenario config file")->required();
  run->add_option("--out-dir", dir_flag,
                  "output directory (KDFAB_OUT_DIR overrides)");
  run->add_option("--csv", csv_name, "trajectory CSV name");
  run->add_option("--summary", summary_name, "summary JSON name");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "launch-speed sweep, repeller on vs off");
  sweep->add_option("config", config, "scenario config file")->required();
  sweep->add_option("--out-dir", dir_flag,
                    "output directory (KDFAB_OUT_DIR overrides)");
  sweep->add_option("--table", table_name, "sweep table CSV name");
  sweep->add_option("--summary", summary_name, "summary JSON name");
  sweep->add_option("--speeds", speeds_flag,
                    "launch-speed range lo:hi (overrides the config)");
  sweep->add_option("--repeller", repeller_flag,
                    "arms to run: on, off, or on,off");

  CLI::App* bench = app.add_subcommand(
      "bench", "time the control step for behavior combinations");
  bench->add_option("config", config, "scenario config file")->required();
  bench->add_option("--out-dir", dir_flag,
                    "output directory (KDFAB_OUT_DIR overrides)");
  bench->add_option("--iterations", iterations, "control steps per combination")
      ->check(CLI::Range(100, 10'000'000));
  bench->add_option("--table", table_name, "timing table CSV name");
  bench->add_option("--summary", summary_name, "summary JSON name");
  bench->add_option("--combos", combos_flag,
                    "behavior combinations to time, e.g. PO+BL,PO+EA+BL+RE");

  CLI::App* validate =
      app.add_subcommand("validate", "parse and validate a config");
  validate->add_option("config", config, "scenario config file")->required();

  CLI::App* defaults = app.add_subcommand(
      "emit-defaults", "print the commented reference config");
  defaults->add_option("--out", out_file, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "kdfab: usage: " << e.what() << "\n";
    return kExitUsage;
  }

  if (run->parsed()) return cmd_run(config, dir_flag, csv_name, summary_name);
  if (sweep->parsed())
    return cmd_sweep(config, dir_flag, table_name, summary_name, speeds_flag,
                     repeller_flag);
  if (bench->parsed())
    return cmd_bench(config, dir_flag, iterations, table_name, summary_name,
                     combos_flag);
  if (validate->parsed()) return cmd_validate(config);
  if (defaults->parsed()) return cmd_emit_defaults(out_file);
  return kExitUsage;
}
