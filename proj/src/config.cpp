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

#include "config.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace kdf {
namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

// A parsed [section] with its key/value lines.
struct Section {
  int line = 0;
  std::string kind;  // model | point | behavior | tree | obstacle | run
  std::string name;  // for point/behavior/tree
  std::vector<Line> entries;
};

class Parser {
 public:
  Parser(const std::string& text, std::string origin)
      : origin_(std::move(origin)) {
    lex(text);
  }

  ScenarioConfig parse();

 private:
  [[noreturn]] void fail(int line, const std::string& key,
                         const std::string& msg) const {
    std::ostringstream os;
    os << origin_ << ":" << line << ": " << key << ": " << msg;
    throw ConfigError(os.str());
  }

  void lex(const std::string& text);

  double to_double(const Line& l, const std::string& key) const {
    size_t pos = 0;
    double v = 0.;
    try {
      v = std::stod(l.value, &pos);
    } catch (const std::exception&) {
      fail(l.number, key, "expected a number, got '" + l.value + "'");
    }
    if (trim(l.value.substr(pos)) != "")
      fail(l.number, key, "trailing characters after number: '" + l.value + "'");
    return v;
  }

  int to_int(const Line& l, const std::string& key) const {
    const double v = to_double(l, key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      fail(l.number, key, "expected an integer, got '" + l.value + "'");
    return i;
  }

  bool to_bool(const Line& l, const std::string& key) const {
    if (l.value == "true") return true;
    if (l.value == "false") return false;
    fail(l.number, key, "expected true or false, got '" + l.value + "'");
  }

  std::vector<double> to_doubles(const Line& l, const std::string& key) const {
    std::vector<double> out;
    for (const std::string& tok : split_ws(l.value)) {
      try {
        size_t pos = 0;
        out.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        fail(l.number, key, "expected numbers, got '" + tok + "'");
      }
    }
    if (out.empty()) fail(l.number, key, "expected at least one number");
    return out;
  }

  std::vector<int> to_ints(const Line& l, const std::string& key) const {
    std::vector<int> out;
    for (double v : to_doubles(l, key)) {
      const int i = static_cast<int>(v);
      if (static_cast<double>(i) != v)
        fail(l.number, key, "expected integers");
      out.push_back(i);
    }
    return out;
  }

  void parse_model(const Section& s, ScenarioConfig& cfg);
  void parse_point(const Section& s, ScenarioConfig& cfg);
  void parse_behavior(const Section& s, ScenarioConfig& cfg, int index);
  void parse_tree(const Section& s, ScenarioConfig& cfg);
  void parse_obstacle(const Section& s, ScenarioConfig& cfg);
  void parse_run(const Section& s, ScenarioConfig& cfg);
  void validate(ScenarioConfig& cfg) const;

  std::string origin_;
  std::vector<Section> sections_;
  // line numbers for post-hoc validation messages
  std::map<std::string, int> key_lines_;
};

void Parser::lex(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  Section* cur = nullptr;
  while (std::getline(is, raw)) {
    ++number;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail(number, line, "unterminated section header");
      const std::vector<std::string> parts =
          split_ws(line.substr(1, line.size() - 2));
      if (parts.empty()) fail(number, line, "empty section header");
      Section s;
      s.line = number;
      s.kind = parts[0];
      if (parts.size() > 2) fail(number, line, "too many words in section header");
      if (parts.size() == 2) s.name = parts[1];
      sections_.push_back(std::move(s));
      cur = &sections_.back();
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(number, line, "expected 'key = value' or '[section]'");
    if (cur == nullptr)
      fail(number, line, "key outside any [section]");
    Line l;
    l.number = number;
    l.key = trim(line.substr(0, eq));
    l.value = trim(line.substr(eq + 1));
    if (l.key.empty()) fail(number, line, "empty key");
    cur->entries.push_back(std::move(l));
  }
}

void Parser::parse_model(const Section& s, ScenarioConfig& cfg) {
  for (const Line& l : s.entries) {
    const std::string key = "model." + l.key;
    if (l.key == "links") cfg.links = to_doubles(l, key);
    else if (l.key == "masses") cfg.masses = to_doubles(l, key);
    else if (l.key == "lower") cfg.lower = to_doubles(l, key);
    else if (l.key == "upper") cfg.upper = to_doubles(l, key);
    else if (l.key == "gravity") cfg.gravity = to_double(l, key);
    else if (l.key == "tracked_points") cfg.tracked = split_ws(l.value);
    else fail(l.number, key, "unknown key");
    key_lines_[key] = l.number;
  }
}

void Parser::parse_point(const Section& s, ScenarioConfig& cfg) {
  if (s.name.empty()) fail(s.line, "point", "control point needs a name");
  ControlPoint cp;
  for (const Line& l : s.entries) {
    const std::string key = "point." + s.name + "." + l.key;
    if (l.key == "link") cp.link = to_int(l, key);
    else if (l.key == "offset") cp.offset = to_double(l, key);
    else fail(l.number, key, "unknown key");
    key_lines_[key] = l.number;
  }
  for (const auto& [name, unused] : cfg.points)
    if (name == s.name) fail(s.line, "point." + s.name, "duplicate point name");
  cfg.points.emplace_back(s.name, cp);
}

void Parser::parse_behavior(const Section& s, ScenarioConfig& cfg, int index) {
  if (s.name.empty()) fail(s.line, "behavior", "behavior needs a name");
  BehaviorConfig b;
  b.name = s.name;
  const std::string prefix = "behaviors[" + std::to_string(index) + "].";
  bool saw_class = false;
  for (const Line& l : s.entries) {
    const std::string key = prefix + l.key;
    key_lines_[key] = l.number;
    if (l.key == "class") {
      saw_class = true;
      if (l.value == "attractor") b.spec.cls = BehaviorClass::kAttractor;
      else if (l.value == "repeller") b.spec.cls = BehaviorClass::kRepeller;
      else if (l.value == "limit-upper") b.spec.cls = BehaviorClass::kLimitUpper;
      else if (l.value == "limit-lower") b.spec.cls = BehaviorClass::kLimitLower;
      else fail(l.number, key, "unknown class '" + l.value + "'");
    } else if (l.key == "priority") b.spec.priority = to_int(l, key);
    else if (l.key == "weight") b.spec.weight = to_double(l, key);
    else if (l.key == "damping") b.spec.damping = to_double(l, key);
    else if (l.key == "active") b.spec.active = to_bool(l, key);
    else if (l.key == "group") b.group = l.value;
    else if (l.key == "lambda_e") b.spec.lambda_e = to_double(l, key);
    else if (l.key == "posture") b.spec.posture = to_bool(l, key);
    else if (l.key == "point") b.point_name = l.value;
    else if (l.key == "target") b.target = to_doubles(l, key);
    else if (l.key == "lambda_b") b.spec.lambda_b = to_double(l, key);
    else if (l.key == "lambda_om") b.spec.lambda_om = to_double(l, key);
    else if (l.key == "d_max") b.spec.d_max = to_double(l, key);
    else if (l.key == "obstacle_pos") {
      const std::vector<double> v = to_doubles(l, key);
      if (v.size() != 2) fail(l.number, key, "expected two numbers");
      b.spec.obstacle = Vec2(v[0], v[1]);
    } else if (l.key == "joints") b.joints = to_ints(l, key);
    else if (l.key == "lambda_l") b.spec.lambda_l = to_double(l, key);
    else if (l.key == "lambda_lm") b.spec.lambda_lm = to_double(l, key);
    else fail(l.number, key, "unknown key");
  }
  if (!saw_class) fail(s.line, prefix + "class", "required");
  cfg.behaviors.push_back(std::move(b));
}

void Parser::parse_tree(const Section& s, ScenarioConfig& cfg) {
  if (s.name.empty()) fail(s.line, "tree", "tree node needs a name");
  TreeNodeConfig n;
  n.name = s.name;
  for (const Line& l : s.entries) {
    const std::string key = "tree." + s.name + "." + l.key;
    key_lines_[key] = l.number;
    if (l.key == "behavior") n.behavior = l.value;
    else if (l.key == "r_outer") n.r_outer = to_double(l, key);
    else if (l.key == "r_inner") n.r_inner = to_double(l, key);
    else if (l.key == "require_closing") n.require_closing = to_bool(l, key);
    else fail(l.number, key, "unknown key");
  }
  if (n.behavior.empty())
    fail(s.line, "tree." + s.name + ".behavior", "required");
  cfg.tree.push_back(std::move(n));
}

void Parser::parse_obstacle(const Section& s, ScenarioConfig& cfg) {
  cfg.has_obstacle = true;
  for (const Line& l : s.entries) {
    const std::string key = "obstacle." + l.key;
    key_lines_[key] = l.number;
    if (l.key == "start") {
      const std::vector<double> v = to_doubles(l, key);
      if (v.size() != 2) fail(l.number, key, "expected two numbers");
      cfg.obstacle.start = Vec2(v[0], v[1]);
    } else if (l.key == "radius") cfg.obstacle.radius = to_double(l, key);
    else if (l.key == "launch_time") cfg.obstacle.launch_time = to_double(l, key);
    else if (l.key == "launch_speed") cfg.obstacle.speed = to_double(l, key);
    else if (l.key == "ballistic") cfg.obstacle.ballistic = to_bool(l, key);
    else if (l.key == "aim") cfg.obstacle_aim = l.value;
    else fail(l.number, key, "unknown key");
  }
}

void Parser::parse_run(const Section& s, ScenarioConfig& cfg) {
  for (const Line& l : s.entries) {
    const std::string key = "run." + l.key;
    key_lines_[key] = l.number;
    if (l.key == "dt") cfg.run.dt = to_double(l, key);
    else if (l.key == "duration") cfg.run.duration = to_double(l, key);
    else if (l.key == "mode") {
      if (l.value == "gated") cfg.run.mode = PolicyMode::kGated;
      else if (l.value == "strict") cfg.run.mode = PolicyMode::kStrict;
      else fail(l.number, key, "expected gated or strict");
    } else if (l.key == "eps_gate") cfg.run.eps_gate = to_double(l, key);
    else if (l.key == "divergence_speed") cfg.run.divergence_speed = to_double(l, key);
    else if (l.key == "q0") cfg.q0 = to_doubles(l, key);
    else if (l.key == "dq0") cfg.dq0 = to_doubles(l, key);
    else if (l.key == "seed") cfg.seed = static_cast<unsigned>(to_int(l, key));
    else if (l.key == "starts") cfg.starts = to_int(l, key);
    else if (l.key == "start_spread") cfg.start_spread = to_double(l, key);
    else if (l.key == "sweep_speeds") {
      const size_t colon = l.value.find(':');
      if (colon == std::string::npos)
        fail(l.number, key, "expected lo:hi, got '" + l.value + "'");
      try {
        cfg.sweep_lo = std::stoi(l.value.substr(0, colon));
        cfg.sweep_hi = std::stoi(l.value.substr(colon + 1));
      } catch (const std::exception&) {
        fail(l.number, key, "expected lo:hi, got '" + l.value + "'");
      }
    } else if (l.key == "out_csv") cfg.out_csv = l.value;
    else if (l.key == "out_summary") cfg.out_summary = l.value;
    else fail(l.number, key, "unknown key");
  }
}

ScenarioConfig Parser::parse() {
  ScenarioConfig cfg;
  bool saw_model = false, saw_run = false, saw_obstacle = false;
  int behavior_index = 0;
  for (const Section& s : sections_) {
    if (s.kind == "model") {
      if (saw_model) fail(s.line, "model", "duplicate [model] section");
      saw_model = true;
      if (!s.name.empty()) fail(s.line, "model", "[model] takes no name");
      parse_model(s, cfg);
    } else if (s.kind == "point") {
      parse_point(s, cfg);
    } else if (s.kind == "behavior") {
      parse_behavior(s, cfg, behavior_index++);
    } else if (s.kind == "tree") {
      parse_tree(s, cfg);
    } else if (s.kind == "obstacle") {
      if (saw_obstacle) fail(s.line, "obstacle", "duplicate [obstacle] section");
      saw_obstacle = true;
      if (!s.name.empty()) fail(s.line, "obstacle", "[obstacle] takes no name");
      parse_obstacle(s, cfg);
    } else if (s.kind == "run") {
      if (saw_run) fail(s.line, "run", "duplicate [run] section");
      saw_run = true;
      if (!s.name.empty()) fail(s.line, "run", "[run] takes no name");
      parse_run(s, cfg);
    } else {
      fail(s.line, s.kind, "unknown section kind");
    }
  }
  if (!saw_model) fail(1, "model", "missing [model] section");
  validate(cfg);
  return cfg;
}

void Parser::validate(ScenarioConfig& cfg) const {
  auto line_of = [&](const std::string& key) {
    auto it = key_lines_.find(key);
    return it == key_lines_.end() ? 0 : it->second;
  };
  auto check = [&](bool ok, const std::string& key, const std::string& msg) {
    if (!ok) fail(line_of(key), key, msg);
  };

  const int n = static_cast<int>(cfg.links.size());
  check(n > 0, "model.links", "required, at least one link");
  for (double v : cfg.links) check(v > 0., "model.links", "must be > 0");
  check(static_cast<int>(cfg.masses.size()) == n, "model.masses",
        "must match links count");
  for (double v : cfg.masses) check(v > 0., "model.masses", "must be > 0");
  check(static_cast<int>(cfg.lower.size()) == n, "model.lower",
        "must match links count");
  check(static_cast<int>(cfg.upper.size()) == n, "model.upper",
        "must match links count");
  for (int i = 0; i < n; ++i)
    check(cfg.lower[i] < cfg.upper[i], "model.lower",
          "lower limit must be below upper limit");
  check(cfg.gravity >= 0., "model.gravity", "must be >= 0");

  auto find_point = [&](const std::string& name) -> const ControlPoint* {
    for (const auto& [pname, cp] : cfg.points)
      if (pname == name) return &cp;
    return nullptr;
  };
  for (const auto& [pname, cp] : cfg.points) {
    const std::string key = "point." + pname;
    check(cp.link >= 0 && cp.link < n, key + ".link", "link index out of range");
    check(cp.offset >= 0. && cp.offset <= cfg.links[cp.link], key + ".offset",
          "offset outside link");
  }
  for (const std::string& t : cfg.tracked)
    check(find_point(t) != nullptr, "model.tracked_points",
          "unknown control point '" + t + "'");

  for (size_t i = 0; i < cfg.behaviors.size(); ++i) {
    const BehaviorConfig& b = cfg.behaviors[i];
    const std::string p = "behaviors[" + std::to_string(i) + "].";
    check(b.spec.priority >= 1, p + "priority", "must be >= 1");
    check(b.spec.weight > 0., p + "weight", "must be > 0");
    check(b.spec.damping >= 0., p + "damping", "must be >= 0");
    switch (b.spec.cls) {
      case BehaviorClass::kAttractor:
        check(b.spec.lambda_e > 0., p + "lambda_e", "must be > 0");
        if (b.spec.posture) {
          check(static_cast<int>(b.target.size()) == n, p + "target",
                "posture target must list one value per joint");
        } else {
          check(!b.point_name.empty(), p + "point", "required for point attractors");
          check(find_point(b.point_name) != nullptr, p + "point",
                "unknown control point '" + b.point_name + "'");
          check(b.target.size() == 2, p + "target", "point target must be x y");
        }
        check(b.joints.empty(), p + "joints", "only limit behaviors take joints");
        break;
      case BehaviorClass::kRepeller:
        check(b.spec.lambda_b > 0., p + "lambda_b", "must be > 0");
        check(b.spec.lambda_om > 0., p + "lambda_om", "must be > 0");
        check(b.spec.d_max > 0., p + "d_max", "must be > 0");
        check(!b.point_name.empty(), p + "point", "required for repellers");
        check(find_point(b.point_name) != nullptr, p + "point",
              "unknown control point '" + b.point_name + "'");
        check(b.target.empty(), p + "target", "repellers take obstacle_pos");
        check(b.joints.empty(), p + "joints", "only limit behaviors take joints");
        break;
      case BehaviorClass::kLimitUpper:
      case BehaviorClass::kLimitLower:
        check(b.spec.lambda_l > 0., p + "lambda_l", "must be > 0");
        check(b.spec.lambda_lm > 0., p + "lambda_lm", "must be > 0");
        check(!b.joints.empty(), p + "joints", "required for limit behaviors");
        for (int j : b.joints)
          check(j >= 0 && j < n, p + "joints", "joint index out of range");
        check(b.target.empty(), p + "target",
              "limits take their bound from the model");
        break;
    }
  }

  std::set<std::string> behavior_names;
  for (const BehaviorConfig& b : cfg.behaviors) {
    if (!behavior_names.insert(b.name).second)
      fail(0, "behavior." + b.name, "duplicate behavior name");
  }

  for (const TreeNodeConfig& t : cfg.tree) {
    const std::string key = "tree." + t.name;
    const BehaviorConfig* target = nullptr;
    for (const BehaviorConfig& b : cfg.behaviors)
      if (b.name == t.behavior) target = &b;
    check(target != nullptr, key + ".behavior",
          "unknown behavior '" + t.behavior + "'");
    check(target->spec.cls == BehaviorClass::kRepeller, key + ".behavior",
          "tree nodes drive repellers");
    check(t.r_outer > 0., key + ".r_outer", "must be > 0");
    check(t.r_inner >= 0. && t.r_inner <= t.r_outer, key + ".r_inner",
          "must be in [0, r_outer]");
  }

  if (cfg.has_obstacle) {
    check(cfg.obstacle.radius > 0., "obstacle.radius", "must be > 0");
    check(cfg.obstacle.speed > 0., "obstacle.launch_speed", "must be > 0");
    check(cfg.obstacle.launch_time >= 0., "obstacle.launch_time", "must be >= 0");
    check(!cfg.obstacle_aim.empty(), "obstacle.aim", "required");
    check(find_point(cfg.obstacle_aim) != nullptr, "obstacle.aim",
          "unknown control point '" + cfg.obstacle_aim + "'");
  }

  check(cfg.run.dt > 0., "run.dt", "must be > 0");
  check(cfg.run.duration > 0., "run.duration", "must be > 0");
  check(cfg.run.eps_gate > 0., "run.eps_gate", "must be > 0");
  check(cfg.run.divergence_speed > 0., "run.divergence_speed", "must be > 0");
  check(cfg.q0.empty() || static_cast<int>(cfg.q0.size()) == n, "run.q0",
        "must list one value per joint");
  check(cfg.dq0.empty() || static_cast<int>(cfg.dq0.size()) == n, "run.dq0",
        "must list one value per joint");
  check(cfg.starts >= 1, "run.starts", "must be >= 1");
  check(cfg.start_spread >= 0., "run.start_spread", "must be >= 0");
  check(cfg.sweep_lo >= 1 && cfg.sweep_lo <= cfg.sweep_hi, "run.sweep_speeds",
        "expected 1 <= lo <= hi");
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin) {
  Parser p(text, origin);
  return p.parse();
}

ScenarioConfig parse_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path + ":0: file: cannot open");
  std::ostringstream os;
  os << f.rdbuf();
  return parse_scenario_text(os.str(), path);
}

Scenario ScenarioConfig::build(const std::vector<std::string>& groups_off) const {
  auto off = [&](const std::string& g) {
    return std::find(groups_off.begin(), groups_off.end(), g) != groups_off.end();
  };
  auto group_of = [](const BehaviorConfig& b) -> std::string {
    if (!b.group.empty()) return b.group;
    switch (b.spec.cls) {
      case BehaviorClass::kAttractor: return b.spec.posture ? "PO" : "EA";
      case BehaviorClass::kRepeller: return "RE";
      default: return "BL";
    }
  };
  auto find_point = [&](const std::string& name) {
    for (const auto& [pname, cp] : points)
      if (pname == name) return cp;
    throw ConfigError("config: unknown control point '" + name + "'");
  };

  const int n = static_cast<int>(links.size());
  Scenario sc{ChainModel(links, masses,
                         Eigen::Map<const Vec>(lower.data(), lower.size()),
                         Eigen::Map<const Vec>(upper.data(), upper.size()),
                         gravity),
              Vec::Zero(n),
              Vec::Zero(n),
              {},
              {},
              {},
              run,
              {}};
  if (!q0.empty()) sc.q0 = Eigen::Map<const Vec>(q0.data(), q0.size());
  if (!dq0.empty()) sc.dq0 = Eigen::Map<const Vec>(dq0.data(), dq0.size());

  // Expand behaviors; remember each config behavior's expanded index for the
  // tree hookup.
  std::map<std::string, int> first_index;
  for (const BehaviorConfig& b : behaviors) {
    if (off(group_of(b))) continue;
    BehaviorSpec spec = b.spec;
    if (spec.cls == BehaviorClass::kAttractor && !spec.posture)
      spec.point = find_point(b.point_name);
    if (spec.cls == BehaviorClass::kRepeller)
      spec.point = find_point(b.point_name);
    if (!b.target.empty())
      spec.target = Eigen::Map<const Vec>(b.target.data(), b.target.size());
    if (spec.cls == BehaviorClass::kLimitUpper ||
        spec.cls == BehaviorClass::kLimitLower) {
      for (int j : b.joints) {
        BehaviorSpec s = spec;
        s.joint = j;
        if (first_index.find(b.name) == first_index.end())
          first_index[b.name] = static_cast<int>(sc.behaviors.size());
        sc.behaviors.push_back(std::move(s));
      }
    } else {
      first_index[b.name] = static_cast<int>(sc.behaviors.size());
      sc.behaviors.push_back(std::move(spec));
    }
  }

  for (const TreeNodeConfig& t : tree) {
    auto it = first_index.find(t.behavior);
    if (it == first_index.end()) continue;  // its group is switched off
    DodgeNode node;
    node.behavior = it->second;
    node.r_outer = t.r_outer;
    node.r_inner = t.r_inner;
    node.require_closing = t.require_closing;
    sc.tree.dodge.push_back(node);
  }

  if (has_obstacle) {
    ObstacleSpec ob = obstacle;
    ob.aim = find_point(obstacle_aim);
    sc.obstacle = ob;
  }
  for (const std::string& t : tracked) sc.tracked_points.push_back(find_point(t));
  return sc;
}

std::vector<std::string> ScenarioConfig::expanded_groups() const {
  std::vector<std::string> out;
  for (const BehaviorConfig& b : behaviors) {
    std::string g = b.group;
    if (g.empty()) {
      switch (b.spec.cls) {
        case BehaviorClass::kAttractor: g = b.spec.posture ? "PO" : "EA"; break;
        case BehaviorClass::kRepeller: g = "RE"; break;
        default: g = "BL"; break;
      }
    }
    const size_t count =
        (b.spec.cls == BehaviorClass::kLimitUpper ||
         b.spec.cls == BehaviorClass::kLimitLower)
            ? b.joints.size()
            : 1;
    for (size_t k = 0; k < count; ++k) out.push_back(g);
  }
  return out;
}

std::string emit_defaults() {
  return R"(# kdfabrics scenario configuration reference.
# Values shown are the documented defaults; a config must at least provide
# the [model] block and whatever behaviors the scenario needs.

[model]
links = 1 1              # link lengths, m (defines the DoF count)
masses = 1 1             # link tip masses, kg
lower = -3 -3            # joint lower limits, rad
upper = 3 3              # joint upper limits, rad
gravity = 9.81           # m/s^2, pulls along -y
tracked_points = ee      # control points used for obstacle clearance

[point ee]               # a named control point
link = 1                 # 0-based link index
offset = 1               # metres along the link

[behavior hold]          # a named behavior; class selects the gain set
class = attractor        # attractor | repeller | limit-upper | limit-lower
priority = 2             # rank, 1 is highest
weight = 1               # W, scales the priority metric
damping = 10             # B
active = true
posture = true           # whole-configuration attractor
target = 0 0             # q_g (posture) or x y (point attractor)
lambda_e = 10

# Attractors on a control point use:  posture = false, point = <name>,
# target = x y.
# Repellers use:  point = <name>, obstacle_pos = x y, lambda_b = 1,
# lambda_om = 1, d_max = 1 (squared metres).
# Limits use:  joints = 0 1, lambda_l = 0.25, lambda_lm = 0.25.
# The combination tag defaults to PO/EA/BL/RE by class; override with
# group = <tag>.

# [tree guard]           # activation node driving one repeller
# behavior = dodge
# r_outer = 1.5          # activate inside this obstacle distance, m
# r_inner = 0            # yield to bracing inside this distance, m
# require_closing = true # only while the obstacle approaches

# [obstacle]             # constant-velocity projectile
# start = 3 0
# radius = 0.02          # m; a pass at or below this distance is a hit
# launch_time = 0
# launch_speed = 1       # m/s
# ballistic = false      # when true the projectile falls under gravity
# aim = ee               # aimed at this point's position at launch

[run]
dt = 0.001               # s
duration = 5             # s
mode = gated             # gated | strict policy speed factor
eps_gate = 1             # floor of the gated speed factor
divergence_speed = 100   # abort when any |qd| exceeds this, rad/s
q0 = 0 0                 # initial configuration (default: zeros)
dq0 = 0 0                # initial velocity (default: zeros)
seed = 0                 # multi-start sampling seed
starts = 1               # rollouts; > 1 samples q0 perturbations
start_spread = 0         # rad, uniform per-joint perturbation for starts > 1
sweep_speeds = 1:10      # launch-speed range for the sweep command
out_csv = run.csv
out_summary = summary.json
)";
}

}  // namespace kdf
