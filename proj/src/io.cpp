#include "bwc/io.hpp"

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bwc/errors.hpp"

namespace bwc {

namespace {

constexpr const char* kSweepHeader =
    "E_r,qq_raw,qq,cq_raw,cq,cc_raw,cc,clipped_qq,clipped_cq,clipped_cc";
constexpr const char* kSimulateHeader =
    "tau,eta,M,L,n,E,seed,success,leakage_bits,covering_distance";

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw config_error("sweep csv line " + std::to_string(line_no) +
                       ": cannot parse number '" + s + "'");
  }
  if (used != s.size())
    throw config_error("sweep csv line " + std::to_string(line_no) +
                       ": trailing characters in number '" + s + "'");
  return v;
}

bool parse_flag(const std::string& s, std::size_t line_no) {
  if (s == "0") return false;
  if (s == "1") return true;
  throw config_error("sweep csv line " + std::to_string(line_no) +
                     ": flag must be 0 or 1, got '" + s + "'");
}

}  // namespace

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << num17(r.E_r) << ',' << num17(r.qq_raw) << ',' << num17(r.qq) << ','
        << num17(r.cq_raw) << ',' << num17(r.cq) << ',' << num17(r.cc_raw)
        << ',' << num17(r.cc) << ',' << (r.clipped_qq ? 1 : 0) << ','
        << (r.clipped_cq ? 1 : 0) << ',' << (r.clipped_cc ? 1 : 0) << '\n';
  }
  return out.str();
}

std::vector<SweepRow> sweep_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line))
    throw config_error("sweep csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSweepHeader)
    throw config_error("sweep csv: header mismatch, expected '" +
                       std::string(kSweepHeader) + "', got '" + line + "'");
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_line(line);
    if (f.size() != 10)
      throw config_error("sweep csv line " + std::to_string(line_no) +
                         ": expected 10 fields, got " +
                         std::to_string(f.size()));
    SweepRow r;
    r.E_r = parse_double(f[0], line_no);
    r.qq_raw = parse_double(f[1], line_no);
    r.qq = parse_double(f[2], line_no);
    r.cq_raw = parse_double(f[3], line_no);
    r.cq = parse_double(f[4], line_no);
    r.cc_raw = parse_double(f[5], line_no);
    r.cc = parse_double(f[6], line_no);
    r.clipped_qq = parse_flag(f[7], line_no);
    r.clipped_cq = parse_flag(f[8], line_no);
    r.clipped_cc = parse_flag(f[9], line_no);
    rows.push_back(r);
  }
  return rows;
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) {
    nlohmann::ordered_json o;
    o["E_r"] = r.E_r;
    o["qq_raw"] = r.qq_raw;
    o["qq"] = r.qq;
    o["cq_raw"] = r.cq_raw;
    o["cq"] = r.cq;
    o["cc_raw"] = r.cc_raw;
    o["cc"] = r.cc;
    o["clipped_qq"] = r.clipped_qq;
    o["clipped_cq"] = r.clipped_cq;
    o["clipped_cc"] = r.clipped_cc;
    arr.push_back(std::move(o));
  }
  return arr.dump(2);
}

std::string simulate_to_csv(const std::vector<WiretapCodeReport>& reports) {
  std::ostringstream out;
  out << kSimulateHeader << '\n';
  for (const WiretapCodeReport& r : reports) {
    out << num17(r.tau) << ',' << num17(r.eta) << ',' << r.M << ',' << r.L
        << ',' << r.n << ',' << num17(r.energy_E) << ',' << r.seed << ','
        << num17(r.success) << ',' << num17(r.leakage_bits) << ','
        << num17(r.covering_distance) << '\n';
  }
  return out.str();
}

std::string simulate_to_json(const std::vector<WiretapCodeReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const WiretapCodeReport& r : reports) {
    nlohmann::ordered_json o;
    o["tau"] = r.tau;
    o["eta"] = r.eta;
    o["M"] = r.M;
    o["L"] = r.L;
    o["n"] = r.n;
    o["E"] = r.energy_E;
    o["seed"] = r.seed;
    o["success"] = r.success;
    o["leakage_bits"] = r.leakage_bits;
    o["covering_distance"] = r.covering_distance;
    arr.push_back(std::move(o));
  }
  return arr.dump(2);
}

namespace {

double as_double(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number())
    throw config_error("config: key '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t as_uint(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<double>() < 0)
    throw config_error("config: key '" + key +
                       "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

int as_int(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw config_error("config: key '" + key +
                       "' must be a nonnegative integer");
  return v.get<int>();
}

void apply_simulate(const nlohmann::json& obj, SimulateParams& sim) {
  for (const auto& [key, value] : obj.items()) {
    if (key == "M")
      sim.M = as_uint(value, key);
    else if (key == "L")
      sim.L = as_uint(value, key);
    else if (key == "n")
      sim.n = as_uint(value, key);
    else if (key == "energy_E")
      sim.energy_E = as_double(value, key);
    else if (key == "tau")
      sim.tau = as_double(value, key);
    else if (key == "eta")
      sim.eta = as_double(value, key);
    else if (key == "seed")
      sim.seed = as_uint(value, key);
    else if (key == "seed_count")
      sim.seed_count = as_uint(value, key);
    else if (key == "prune_delta")
      sim.prune_delta = as_double(value, key);
    else
      throw config_error("config: unknown key 'simulate." + key + "'");
  }
}

}  // namespace

AppConfig config_from_json(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object())
    throw config_error("config: top level must be a JSON object");
  AppConfig cfg;
  for (const auto& [key, value] : root.items()) {
    if (key == "energy_E")
      cfg.scenario.energy_E = as_double(value, key);
    else if (key == "tau_min")
      cfg.scenario.tau_min = as_double(value, key);
    else if (key == "tau_max")
      cfg.scenario.tau_max = as_double(value, key);
    else if (key == "eta_sq_fraction_min")
      cfg.scenario.eta_sq_fraction_min = as_double(value, key);
    else if (key == "eta_sq_fraction_max")
      cfg.scenario.eta_sq_fraction_max = as_double(value, key);
    else if (key == "grid_points")
      cfg.scenario.grid_points = as_int(value, key);
    else if (key == "worst_case_eta_fraction")
      cfg.scenario.worst_case_eta_fraction = as_double(value, key);
    else if (key == "symbol_rate")
      cfg.scenario.symbol_rate = as_double(value, key);
    else if (key == "coherence_window")
      cfg.scenario.coherence_window = as_double(value, key);
    else if (key == "feedback_fraction")
      cfg.scenario.feedback_fraction = as_double(value, key);
    else if (key == "simulate") {
      if (!value.is_object())
        throw config_error("config: key 'simulate' must be an object");
      apply_simulate(value, cfg.simulate);
    } else {
      throw config_error("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace bwc
