#include "seedshare/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace seedshare {

void Scenario::validate() const {
  demand.validate();
  legal.validate();
  illicit.validate();
  econ.validate();
  if (!(dt > 0.0)) {
    throw std::invalid_argument("run.dt must be > 0");
  }
  if (!(horizon >= 10.0 * dt)) {
    throw std::invalid_argument("run.horizon must be >= 10 * run.dt");
  }
  if (!(recording_interval >= dt)) {
    throw std::invalid_argument("run.recording_interval must be >= run.dt");
  }
  if (illicit.server_capacity != 0.0) {
    throw std::invalid_argument("illicit.server_capacity must be 0");
  }
  if (!(y_floor > 0.0)) {
    throw std::invalid_argument("run.y_floor must be > 0");
  }
  initial_state.validate();
  if (initial_state.adopters > demand.market_cap()) {
    throw std::invalid_argument(
        "initial.adopters must not exceed the demand market cap");
  }
}

namespace {

struct RawScenario {
  // section -> key -> (value, line number)
  std::map<std::string, std::map<std::string, std::pair<std::string, int>>>
      data;
  std::string origin;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(origin + ": " + msg);
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

RawScenario read_raw(std::istream& in, const std::string& origin) {
  RawScenario raw;
  raw.origin = origin;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        raw.fail("line " + std::to_string(lineno) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      raw.data[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      raw.fail("line " + std::to_string(lineno) + ": expected key = value");
    }
    if (section.empty()) {
      raw.fail("line " + std::to_string(lineno) + ": key outside any section");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!raw.data[section].emplace(key, std::make_pair(value, lineno)).second) {
      raw.fail("line " + std::to_string(lineno) + ": duplicate key '" +
               section + "." + key + "'");
    }
  }
  return raw;
}

// Pulls typed values out of one section while tracking which keys were
// consumed, so leftovers can be reported as unknown.
class SectionReader {
 public:
  SectionReader(const RawScenario& raw, const std::string& section)
      : raw_(raw), section_(section) {
    const auto it = raw.data.find(section);
    if (it != raw.data.end()) {
      entries_ = &it->second;
    }
  }

  bool has(const std::string& key) const {
    return entries_ && entries_->count(key) > 0;
  }

  std::string get_string(const std::string& key) {
    if (!has(key)) {
      raw_.fail("missing required key '" + section_ + "." + key + "'");
    }
    seen_.insert(key);
    return entries_->at(key).first;
  }

  double get_double(const std::string& key) {
    const std::string text = get_string(key);
    return parse_double(key, text);
  }

  double get_double_or(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
  }

  std::string get_string_or(const std::string& key,
                            const std::string& fallback) {
    return has(key) ? get_string(key) : fallback;
  }

  void finish() const {
    if (!entries_) {
      return;
    }
    for (const auto& [key, value] : *entries_) {
      if (!seen_.count(key)) {
        raw_.fail("line " + std::to_string(value.second) + ": unknown key '" +
                  section_ + "." + key + "'");
      }
    }
  }

 private:
  double parse_double(const std::string& key, const std::string& text) const {
    if (text == "inf" || text == "unbounded") {
      return std::numeric_limits<double>::infinity();
    }
    try {
      std::size_t pos = 0;
      const double v = std::stod(text, &pos);
      if (pos != text.size()) {
        throw std::invalid_argument("trailing characters");
      }
      return v;
    } catch (const std::exception&) {
      raw_.fail("key '" + section_ + "." + key + "': cannot parse number '" +
                text + "'");
    }
  }

  const RawScenario& raw_;
  std::string section_;
  const std::map<std::string, std::pair<std::string, int>>* entries_ = nullptr;
  std::set<std::string> seen_;
};

SwarmParams read_swarm(const RawScenario& raw, const std::string& section,
                       bool is_illicit) {
  SectionReader r(raw, section);
  SwarmParams sw;
  if (is_illicit) {
    const std::string enabled = r.get_string_or("enabled", "true");
    if (enabled == "true") {
      sw.enabled = true;
    } else if (enabled == "false") {
      sw.enabled = false;
    } else {
      raw.fail("key '" + section + ".enabled': expected true or false");
    }
  }
  const std::string mode = r.get_string("efficiency_mode");
  if (mode == "efficient") {
    sw.efficiency_mode = EfficiencyMode::efficient;
    sw.downloader_upload_factor = 1.0;
  } else if (mode == "inefficient") {
    sw.efficiency_mode = EfficiencyMode::inefficient;
    sw.downloader_upload_factor = 0.0;
  } else {
    raw.fail("key '" + section +
             ".efficiency_mode': expected efficient or inefficient");
  }
  sw.peer_upload = r.get_double("peer_upload");
  sw.download_cap = r.get_double_or(
      "download_cap", std::numeric_limits<double>::infinity());
  sw.server_capacity =
      is_illicit ? r.get_double_or("server_capacity", 0.0)
                 : r.get_double("server_capacity");
  sw.seed_departure_rate = r.get_double("seed_departure_rate");
  r.finish();
  return sw;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& origin) {
  const RawScenario raw = read_raw(in, origin);
  for (const auto& [section, _] : raw.data) {
    if (section != "demand" && section != "legal" && section != "illicit" &&
        section != "econ" && section != "run" && section != "initial") {
      raw.fail("unknown section '" + section + "'");
    }
  }

  Scenario sc;
  {
    SectionReader r(raw, "demand");
    const std::string kind = r.get_string("kind");
    if (kind == "bass") {
      BassParams b;
      b.p_innov = r.get_double("p_innov");
      b.q_imit = r.get_double("q_imit");
      b.market_size = r.get_double("market_size");
      sc.demand.kind = b;
    } else if (kind == "constant") {
      ConstantDemand c;
      c.rate = r.get_double("rate");
      c.max_total = r.get_double_or(
          "max_total", std::numeric_limits<double>::infinity());
      sc.demand.kind = c;
    } else {
      raw.fail("key 'demand.kind': expected bass or constant");
    }
    r.finish();
  }
  sc.legal = read_swarm(raw, "legal", false);
  sc.illicit = read_swarm(raw, "illicit", true);
  {
    SectionReader r(raw, "econ");
    sc.econ.price = r.get_double("price");
    sc.econ.share_fraction = r.get_double("share_fraction");
    sc.econ.delay_sensitivity = r.get_double("delay_sensitivity");
    sc.econ.choice_temperature =
        r.get_double_or("choice_temperature", 0.01 * sc.econ.price);
    sc.econ.base_seed_prob_legal = r.get_double("base_seed_prob_legal");
    sc.econ.base_seed_prob_illicit = r.get_double("base_seed_prob_illicit");
    sc.econ.rogue_base_prob = r.get_double("rogue_base_prob");
    sc.econ.reward_response = r.get_double("reward_response");
    sc.econ.rogue_response = r.get_double("rogue_response");
    r.finish();
  }
  {
    SectionReader r(raw, "run");
    sc.horizon = r.get_double("horizon");
    sc.dt = r.get_double_or("dt", 0.01);
    sc.recording_interval = r.get_double_or("recording_interval", 0.1);
    sc.y_floor = r.get_double_or("y_floor", 1.0);
    r.finish();
  }
  {
    SectionReader r(raw, "initial");
    sc.initial_state.x_legal = r.get_double_or("x_legal", 0.0);
    sc.initial_state.y_legal = r.get_double_or("y_legal", 0.0);
    sc.initial_state.x_illicit = r.get_double_or("x_illicit", 0.0);
    sc.initial_state.y_illicit = r.get_double_or("y_illicit", 0.0);
    sc.initial_state.adopters = r.get_double_or("adopters", 0.0);
    r.finish();
  }

  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file '" + path + "'");
  }
  return parse_scenario(in, path);
}

namespace {

std::string num(double v) {
  if (std::isinf(v)) {
    return "inf";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_swarm(std::ostream& out, const char* section, const SwarmParams& sw,
                 bool is_illicit) {
  out << '[' << section << "]\n";
  if (is_illicit) {
    out << "enabled = " << (sw.enabled ? "true" : "false") << '\n';
  }
  out << "efficiency_mode = "
      << (sw.efficiency_mode == EfficiencyMode::efficient ? "efficient"
                                                          : "inefficient")
      << '\n'
      << "peer_upload = " << num(sw.peer_upload) << '\n'
      << "download_cap = " << num(sw.download_cap) << '\n';
  if (!is_illicit) {
    out << "server_capacity = " << num(sw.server_capacity) << '\n';
  }
  out << "seed_departure_rate = " << num(sw.seed_departure_rate) << "\n\n";
}

}  // namespace

void write_scenario(const Scenario& sc, std::ostream& out) {
  out << "[demand]\n";
  if (const auto* bass = std::get_if<BassParams>(&sc.demand.kind)) {
    out << "kind = bass\n"
        << "p_innov = " << num(bass->p_innov) << '\n'
        << "q_imit = " << num(bass->q_imit) << '\n'
        << "market_size = " << num(bass->market_size) << "\n\n";
  } else {
    const auto& c = std::get<ConstantDemand>(sc.demand.kind);
    out << "kind = constant\n"
        << "rate = " << num(c.rate) << '\n'
        << "max_total = " << num(c.max_total) << "\n\n";
  }
  write_swarm(out, "legal", sc.legal, false);
  write_swarm(out, "illicit", sc.illicit, true);
  out << "[econ]\n"
      << "price = " << num(sc.econ.price) << '\n'
      << "share_fraction = " << num(sc.econ.share_fraction) << '\n'
      << "delay_sensitivity = " << num(sc.econ.delay_sensitivity) << '\n'
      << "choice_temperature = " << num(sc.econ.choice_temperature) << '\n'
      << "base_seed_prob_legal = " << num(sc.econ.base_seed_prob_legal) << '\n'
      << "base_seed_prob_illicit = " << num(sc.econ.base_seed_prob_illicit)
      << '\n'
      << "rogue_base_prob = " << num(sc.econ.rogue_base_prob) << '\n'
      << "reward_response = " << num(sc.econ.reward_response) << '\n'
      << "rogue_response = " << num(sc.econ.rogue_response) << "\n\n"
      << "[run]\n"
      << "horizon = " << num(sc.horizon) << '\n'
      << "dt = " << num(sc.dt) << '\n'
      << "recording_interval = " << num(sc.recording_interval) << '\n'
      << "y_floor = " << num(sc.y_floor) << "\n\n"
      << "[initial]\n"
      << "x_legal = " << num(sc.initial_state.x_legal) << '\n'
      << "y_legal = " << num(sc.initial_state.y_legal) << '\n'
      << "x_illicit = " << num(sc.initial_state.x_illicit) << '\n'
      << "y_illicit = " << num(sc.initial_state.y_illicit) << '\n'
      << "adopters = " << num(sc.initial_state.adopters) << '\n';
}

std::string scenario_to_string(const Scenario& sc) {
  std::ostringstream os;
  write_scenario(sc, os);
  return os.str();
}

namespace {

bool eq(const SwarmParams& a, const SwarmParams& b) {
  return a.peer_upload == b.peer_upload &&
         a.downloader_upload_factor == b.downloader_upload_factor &&
         a.download_cap == b.download_cap &&
         a.server_capacity == b.server_capacity &&
         a.seed_departure_rate == b.seed_departure_rate &&
         a.efficiency_mode == b.efficiency_mode && a.enabled == b.enabled;
}

bool eq(const MarketState& a, const MarketState& b) {
  return a.x_legal == b.x_legal && a.y_legal == b.y_legal &&
         a.x_illicit == b.x_illicit && a.y_illicit == b.y_illicit &&
         a.adopters == b.adopters && a.gross_revenue == b.gross_revenue &&
         a.shared_revenue == b.shared_revenue &&
         a.completed_legal == b.completed_legal &&
         a.completed_illicit == b.completed_illicit;
}

bool eq(const EconParams& a, const EconParams& b) {
  return a.price == b.price && a.share_fraction == b.share_fraction &&
         a.delay_sensitivity == b.delay_sensitivity &&
         a.choice_temperature == b.choice_temperature &&
         a.base_seed_prob_legal == b.base_seed_prob_legal &&
         a.base_seed_prob_illicit == b.base_seed_prob_illicit &&
         a.rogue_base_prob == b.rogue_base_prob &&
         a.reward_response == b.reward_response &&
         a.rogue_response == b.rogue_response;
}

}  // namespace

bool operator==(const Scenario& a, const Scenario& b) {
  return a.demand.kind == b.demand.kind && eq(a.legal, b.legal) &&
         eq(a.illicit, b.illicit) && eq(a.econ, b.econ) &&
         a.horizon == b.horizon && a.dt == b.dt &&
         a.recording_interval == b.recording_interval &&
         eq(a.initial_state, b.initial_state) && a.y_floor == b.y_floor;
}

}  // namespace seedshare
