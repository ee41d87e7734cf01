#include "tpb/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "tpb/instance.hpp"

namespace tpb {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid configuration:";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec == std::errc() && ptr == s.data() + s.size()) return true;
  // accept integral scientific notation such as 1e5
  double d = 0.0;
  if (!parse_double(s, d) || d < 1.0 || d > 9.007199254740992e15 || d != std::floor(d)) return false;
  out = static_cast<std::uint64_t>(d);
  return true;
}

// Splits "[a, b, [c, d]]" at top-level commas of the outer brackets.
bool split_list(std::string_view s, std::vector<std::string_view>& items) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return false;
  s = trim(s.substr(1, s.size() - 2));
  items.clear();
  if (s.empty()) return true;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    else if (s[i] == ']') {
      if (--depth < 0) return false;
    } else if (s[i] == ',' && depth == 0) {
      items.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) return false;
  items.push_back(trim(s.substr(start)));
  return std::none_of(items.begin(), items.end(), [](auto v) { return v.empty(); });
}

bool parse_vector(std::string_view s, Eigen::VectorXd& out) {
  std::vector<std::string_view> items;
  if (!split_list(s, items) || items.empty()) return false;
  out.resize(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i)
    if (!parse_double(items[i], out[static_cast<Eigen::Index>(i)])) return false;
  return true;
}

bool parse_u64_list(std::string_view s, std::vector<std::uint64_t>& out) {
  std::vector<std::string_view> items;
  if (!split_list(s, items) || items.empty()) return false;
  out.resize(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    if (!parse_u64(items[i], out[i])) return false;
  return true;
}

bool parse_matrix(std::string_view s, Eigen::MatrixXd& out) {
  std::vector<std::string_view> rows;
  if (!split_list(s, rows) || rows.empty()) return false;
  std::vector<Eigen::VectorXd> parsed(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!parse_vector(rows[r], parsed[r])) return false;
    if (parsed[r].size() != parsed[0].size()) return false;
  }
  out.resize(static_cast<Eigen::Index>(rows.size()), parsed[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = parsed[r].transpose();
  return true;
}

bool parse_schedule(std::string_view s, ScheduleSpec& out) {
  s = trim(s);
  if (s == "lls") {
    out = {ScheduleKind::Lls, 0, {}};
    return true;
  }
  if (s == "linear_over_n") {
    out = {ScheduleKind::LinearOverN, 0, {}};
    return true;
  }
  if (s.starts_with("poly:")) {
    std::uint64_t k = 0;
    if (!parse_u64(s.substr(5), k) || k < 1 || k > 64) return false;
    out = {ScheduleKind::Poly, k, {}};
    return true;
  }
  if (s.starts_with("custom:")) {
    std::vector<std::uint64_t> table;
    if (!parse_u64_list(s.substr(7), table)) return false;
    if (!std::is_sorted(table.begin(), table.end())) return false;
    out = {ScheduleKind::Custom, 0, std::move(table)};
    return true;
  }
  return false;
}

const std::set<std::string, std::less<>> kKnownKeys = {
    "mode",      "arms",          "preference", "weights",         "dimension",
    "arm_count", "instance_seed", "preference_norm", "schedule", "horizon",
    "trials",    "seed",          "baselines",  "checkpoints",     "bounds"};

std::string vector_text(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out + "]";
}

std::string u64_list_text(const std::vector<std::uint64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string schedule_text(const ScheduleSpec& s) {
  switch (s.kind) {
    case ScheduleKind::Lls: return "lls";
    case ScheduleKind::LinearOverN: return "linear_over_n";
    case ScheduleKind::Poly: return "poly:" + std::to_string(s.degree);
    case ScheduleKind::Custom: return "custom:" + u64_list_text(s.table);
  }
  return "lls";
}

std::string bounds_text(BoundPolicy b) {
  switch (b) {
    case BoundPolicy::Required: return "required";
    case BoundPolicy::Optional: return "optional";
    case BoundPolicy::Off: return "off";
  }
  return "required";
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string to_string(Baseline b) { return b == Baseline::Ucb1 ? "ucb1" : "random"; }
std::string to_string(Mode m) { return m == Mode::Finite ? "finite" : "sphere"; }

ExperimentConfig parse_config(std::string_view text) {
  std::vector<std::string> errors;
  std::map<std::string, std::pair<std::string, int>, std::less<>> values;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!kKnownKeys.contains(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      continue;
    }
    if (values.contains(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      continue;
    }
    values.emplace(key, std::make_pair(value, line_no));
  }

  ExperimentConfig c;
  auto bad = [&](const std::string& key, const std::string& what) {
    errors.push_back("line " + std::to_string(values.at(key).second) + ": " + key + ": " + what);
  };
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second.first;
  };

  if (auto v = get("mode")) {
    if (*v == "finite") c.mode = Mode::Finite;
    else if (*v == "sphere") c.mode = Mode::Sphere;
    else bad("mode", "expected finite or sphere");
  }
  if (auto v = get("arms")) {
    Eigen::MatrixXd U;
    if (parse_matrix(*v, U)) c.arms = std::move(U);
    else bad("arms", "expected a bracketed list of equal-length numeric rows");
  }
  if (auto v = get("preference")) {
    Eigen::VectorXd z;
    if (parse_vector(*v, z)) c.preference = std::move(z);
    else bad("preference", "expected a bracketed numeric list");
  }
  if (auto v = get("weights")) {
    Eigen::VectorXd w;
    if (parse_vector(*v, w)) c.weights = std::move(w);
    else bad("weights", "expected a bracketed numeric list");
  }

  const bool any_generator = get("dimension") || get("arm_count") || get("instance_seed") ||
                             get("preference_norm");
  if (any_generator) {
    GeneratorSpec g;
    std::uint64_t u = 0;
    if (auto v = get("dimension")) {
      if (parse_u64(*v, u)) g.dimension = u;
      else bad("dimension", "expected a positive integer");
    }
    if (auto v = get("arm_count")) {
      if (parse_u64(*v, u)) g.arm_count = u;
      else bad("arm_count", "expected a positive integer");
    }
    if (auto v = get("instance_seed")) {
      if (parse_u64(*v, u)) g.seed = u;
      else bad("instance_seed", "expected a non-negative integer");
    }
    if (auto v = get("preference_norm")) {
      double r = 0.0;
      if (parse_double(*v, r) && r > 0.0) g.preference_norm = r;
      else bad("preference_norm", "expected a positive number");
    }
    c.generator = g;
  }

  if (auto v = get("schedule")) {
    ScheduleSpec s;
    if (parse_schedule(*v, s)) c.schedule = std::move(s);
    else bad("schedule", "expected lls, linear_over_n, poly:K (K >= 1) or custom:[non-decreasing integers]");
  }
  if (auto v = get("horizon")) {
    if (!parse_u64(*v, c.horizon)) bad("horizon", "expected a positive integer");
  } else {
    errors.push_back("missing required key 'horizon'");
  }
  if (auto v = get("trials")) {
    if (!parse_u64(*v, c.trials)) bad("trials", "expected a positive integer");
  }
  if (auto v = get("seed")) {
    if (!parse_u64(*v, c.base_seed)) bad("seed", "expected a 64-bit unsigned integer");
  }
  if (auto v = get("baselines")) {
    std::string_view rest = *v;
    if (trim(rest) != "none") {
      std::set<std::string> seen;
      while (!rest.empty()) {
        auto comma = rest.find(',');
        auto item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item == "ucb1" || item == "random") {
          if (!seen.insert(std::string(item)).second) {
            bad("baselines", "duplicate baseline '" + std::string(item) + "'");
            continue;
          }
          c.baselines.push_back(item == "ucb1" ? Baseline::Ucb1 : Baseline::Random);
        } else {
          bad("baselines", "unknown baseline '" + std::string(item) + "' (expected ucb1, random or none)");
        }
      }
    }
  }
  if (auto v = get("checkpoints")) {
    if (!parse_u64_list(*v, c.checkpoints)) bad("checkpoints", "expected a bracketed list of positive integers");
  }
  if (auto v = get("bounds")) {
    if (*v == "required") c.bounds = BoundPolicy::Required;
    else if (*v == "optional") c.bounds = BoundPolicy::Optional;
    else if (*v == "off") c.bounds = BoundPolicy::Off;
    else bad("bounds", "expected required, optional or off");
  }

  if (errors.empty()) {
    try {
      validate_config(c);
    } catch (const ConfigError& e) {
      errors.insert(errors.end(), e.errors().begin(), e.errors().end());
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

void validate_config(const ExperimentConfig& c) {
  std::vector<std::string> errors;
  if (c.horizon < 1) errors.push_back("horizon must be >= 1");
  if (c.trials < 1) errors.push_back("trials must be >= 1");

  if (c.mode == Mode::Sphere) {
    if (c.arms) errors.push_back("sphere mode forbids 'arms': every unit vector is an arm");
    if (c.weights) errors.push_back("sphere mode forbids 'weights'");
    if (!c.baselines.empty()) errors.push_back("sphere mode supports no baselines (set baselines = none)");
    if (c.generator && c.generator->arm_count != 0) errors.push_back("sphere mode forbids 'arm_count'");
    if (c.preference && c.generator) errors.push_back("give either 'preference' or a generator spec, not both");
    if (!c.preference && !c.generator) errors.push_back("sphere mode needs 'preference' or 'dimension'");
    if (c.generator && c.generator->dimension < 2) errors.push_back("dimension must be >= 2 in sphere mode");
    if (c.preference) {
      try {
        SphereInstance probe_check(*c.preference);
      } catch (const std::exception& e) {
        errors.push_back(std::string("preference: ") + e.what());
      }
    }
  } else {
    if (c.arms && c.generator) errors.push_back("give either 'arms' or a generator spec, not both");
    if (!c.arms && !c.generator) errors.push_back("finite mode needs 'arms' and 'preference', or a generator spec");
    if (c.arms) {
      if (!c.preference) {
        errors.push_back("inline 'arms' needs 'preference'");
      } else if (c.preference->size() != c.arms->rows()) {
        errors.push_back("preference has " + std::to_string(c.preference->size()) + " entries but arms have " +
                         std::to_string(c.arms->rows()) + " rows");
      } else if (c.weights && c.weights->size() != c.arms->cols()) {
        errors.push_back("weights has " + std::to_string(c.weights->size()) + " entries but there are " +
                         std::to_string(c.arms->cols()) + " arms");
      } else {
        try {
          BanditInstance check(*c.arms, *c.preference, c.weights.value_or(Eigen::VectorXd()));
        } catch (const std::exception& e) {
          errors.push_back(std::string("arms: ") + e.what());
        }
      }
    }
    if (c.generator) {
      if (c.preference) errors.push_back("generator spec draws the preference; remove 'preference'");
      if (c.weights) errors.push_back("weights need inline 'arms'");
      if (c.generator->dimension < 1) errors.push_back("generator needs 'dimension' >= 1");
      if (c.generator->arm_count < c.generator->dimension)
        errors.push_back("generator needs 'arm_count' >= dimension");
    }
  }

  if (!c.checkpoints.empty()) {
    for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
      if (c.checkpoints[i] < 1 || c.checkpoints[i] > c.horizon) {
        errors.push_back("checkpoint " + std::to_string(c.checkpoints[i]) + " outside [1, horizon]");
        break;
      }
      if (i > 0 && c.checkpoints[i] <= c.checkpoints[i - 1]) {
        errors.push_back("checkpoints must be strictly increasing");
        break;
      }
    }
  }
  if (c.schedule && c.schedule->kind == ScheduleKind::Custom) {
    if (c.schedule->table.empty() || !std::is_sorted(c.schedule->table.begin(), c.schedule->table.end()))
      errors.push_back("custom schedule table must be non-empty and non-decreasing");
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "mode = " << to_string(c.mode) << '\n';
  if (c.arms) {
    out << "arms = [";
    for (Eigen::Index r = 0; r < c.arms->rows(); ++r) {
      if (r) out << ", ";
      out << vector_text(c.arms->row(r).transpose());
    }
    out << "]\n";
  }
  if (c.preference) out << "preference = " << vector_text(*c.preference) << '\n';
  if (c.weights) out << "weights = " << vector_text(*c.weights) << '\n';
  if (c.generator) {
    out << "dimension = " << c.generator->dimension << '\n';
    if (c.mode == Mode::Finite) out << "arm_count = " << c.generator->arm_count << '\n';
    out << "instance_seed = " << c.generator->seed << '\n';
    out << "preference_norm = " << format_double(c.generator->preference_norm) << '\n';
  }
  if (c.schedule) out << "schedule = " << schedule_text(*c.schedule) << '\n';
  out << "horizon = " << c.horizon << '\n';
  out << "trials = " << c.trials << '\n';
  out << "seed = " << c.base_seed << '\n';
  out << "baselines = ";
  if (c.baselines.empty()) out << "none";
  for (std::size_t i = 0; i < c.baselines.size(); ++i) out << (i ? ", " : "") << to_string(c.baselines[i]);
  out << '\n';
  if (!c.checkpoints.empty()) out << "checkpoints = " << u64_list_text(c.checkpoints) << '\n';
  out << "bounds = " << bounds_text(c.bounds) << '\n';
  return out.str();
}

std::string config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : emit_config(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ScheduleSpec effective_schedule(const ExperimentConfig& c) {
  if (c.schedule) return *c.schedule;
  return {c.mode == Mode::Finite ? ScheduleKind::Lls : ScheduleKind::LinearOverN, 0, {}};
}

Schedule make_schedule(const ScheduleSpec& spec, std::size_t dimension) {
  switch (spec.kind) {
    case ScheduleKind::Lls: return Schedule::lls();
    case ScheduleKind::LinearOverN: return Schedule::linear_over_n(dimension);
    case ScheduleKind::Poly: return Schedule::poly(static_cast<unsigned>(spec.degree));
    case ScheduleKind::Custom: return Schedule::custom(spec.table);
  }
  return Schedule::lls();
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t decade = 1; decade <= horizon; decade *= 10) {
    for (std::uint64_t t : {decade, decade * 5 / 2, decade * 5}) {
      if (t >= 1 && t < horizon && (out.empty() || t > out.back())) out.push_back(t);
    }
    if (decade > horizon / 10) break;
  }
  out.push_back(horizon);
  return out;
}

std::vector<std::uint64_t> effective_checkpoints(const ExperimentConfig& c) {
  return c.checkpoints.empty() ? default_checkpoints(c.horizon) : c.checkpoints;
}

}  // namespace tpb
