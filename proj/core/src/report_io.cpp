#include "tpb/report_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tpb {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <class T>
T parse_number(std::string_view s, const char* field) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error(std::string("malformed CSV field ") + field + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string format_csv(const ExperimentReport& r) {
  std::string out(kCsvHeader);
  out += '\n';
  const std::string n = std::to_string(r.n);
  const std::string m = r.m ? std::to_string(*r.m) : "";
  const std::string tail = "," + n + "," + m + "," + std::to_string(r.trials) + "," +
                           std::to_string(r.provenance.seed) + "\n";
  for (const auto& c : r.curves) {
    for (const auto& p : c.points) {
      out += c.policy + "," + std::to_string(p.t) + "," + format_double(p.mean) + "," + format_double(p.stderr_) +
             "," + (p.bound ? format_double(*p.bound) : "") + tail;
    }
  }
  return out;
}

void emit_csv(const ExperimentReport& report, const std::filesystem::path& path) {
  write_file(path, format_csv(report));
}

void emit_curves(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string bound_text = "t,bound\n";
  for (const auto& c : report.curves) {
    std::string text = "t,mean_regret,stderr\n";
    for (const auto& p : c.points) {
      text += std::to_string(p.t) + "," + format_double(p.mean) + "," + format_double(p.stderr_) + "\n";
      if (p.bound) bound_text += std::to_string(p.t) + "," + format_double(*p.bound) + "\n";
    }
    write_file(dir / ("curve_" + c.policy + ".csv"), text);
  }
  write_file(dir / "curve_bound.csv", bound_text);
}

std::string format_report_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(r.mode);
  j["n"] = r.n;
  j["m"] = r.m ? nlohmann::ordered_json(*r.m) : nlohmann::ordered_json(nullptr);
  j["trials"] = r.trials;
  j["horizon"] = r.horizon;
  j["schedule"] = r.schedule;
  j["bound_status"] = r.bound_status;
  if (r.constants) {
    const auto& c = *r.constants;
    j["constants"] = {{"best_value", c.best_value}, {"delta", c.delta},     {"delta_exact", c.delta_exact},
                      {"alpha_lower", c.alpha_lower}, {"alpha_upper", c.alpha_upper}, {"gamma", c.gamma},
                      {"k1", c.k1},                 {"L_prime", c.L_prime}, {"k2", c.k2},
                      {"k3", c.k3}};
  } else if (r.sphere_constants) {
    const auto& c = *r.sphere_constants;
    j["constants"] = {{"preference_norm", c.preference_norm}, {"best_value", c.best_value}, {"k1", c.k1},
                      {"k3", c.k3}};
  } else {
    j["constants"] = nullptr;
  }
  j["bound_violation"] = r.has_violation();
  j["provenance"] = {{"config_hash", r.provenance.config_hash},
                     {"seed", r.provenance.seed},
                     {"version", r.provenance.version}};
  return j.dump(2) + "\n";
}

void emit_report_json(const ExperimentReport& report, const std::filesystem::path& path) {
  write_file(path, format_report_json(report));
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  auto lines = split(text, '\n');
  if (lines.empty() || lines[0] != kCsvHeader) throw std::runtime_error("CSV header mismatch");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = split(lines[i], ',');
    if (f.size() != 9) throw std::runtime_error("CSV row " + std::to_string(i) + " has wrong field count");
    CsvRow r;
    r.policy = std::string(f[0]);
    r.checkpoint_t = parse_number<std::uint64_t>(f[1], "checkpoint_t");
    r.mean_regret = parse_number<double>(f[2], "mean_regret");
    r.stderr_ = parse_number<double>(f[3], "stderr");
    if (!f[4].empty()) r.bound = parse_number<double>(f[4], "bound");
    r.n = parse_number<std::size_t>(f[5], "n");
    if (!f[6].empty()) r.m = parse_number<std::size_t>(f[6], "m");
    r.trials = parse_number<std::uint64_t>(f[7], "trials");
    r.seed = parse_number<std::uint64_t>(f[8], "seed");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace tpb
