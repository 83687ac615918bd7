#include "seedshare/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace seedshare {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void append_state(std::string& out, const MarketState& s) {
  out += fmt(s.x_legal) + ',' + fmt(s.y_legal) + ',' + fmt(s.x_illicit) + ',' +
         fmt(s.y_illicit) + ',' + fmt(s.adopters) + ',' +
         fmt(s.gross_revenue) + ',' + fmt(s.shared_revenue);
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = kTrajectoryHeader;
  out += '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const MarketState& s = traj.states[i];
    out += fmt(traj.times[i]) + ',';
    append_state(out, s);
    out += ',' + fmt(s.gross_revenue - s.shared_revenue) + ',' +
           fmt(s.completed_legal) + ',' + fmt(s.completed_illicit) + '\n';
  }
  return out;
}

std::string ensemble_csv(const StochasticRun& run) {
  std::string out = kEnsembleHeader;
  out += '\n';
  for (std::size_t i = 0; i < run.final_states.size(); ++i) {
    const MarketState& s = run.final_states[i];
    out += std::to_string(i) + ',' + fmt(run.net_revenues[i]) + ',' +
           fmt(s.completed_legal) + ',' + fmt(s.completed_illicit) + ',' +
           fmt(s.y_illicit) + '\n';
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out = kSweepHeader;
  out += '\n';
  for (std::size_t i = 0; i < sweep.deltas.size(); ++i) {
    out += fmt(sweep.deltas[i]) + ',' + fmt(sweep.net_revenues[i]) + '\n';
  }
  return out;
}

std::string event_log_csv(const std::vector<Event>& events) {
  std::string out = kEventLogHeader;
  out += '\n';
  for (const Event& e : events) {
    const char* kind = e.kind == Event::Kind::arrival      ? "arrival"
                       : e.kind == Event::Kind::completion ? "completion"
                                                           : "departure";
    out += fmt(e.time) + ',' + kind + ',' +
           (e.swarm == Swarm::legal ? "legal" : "illicit") + ',';
    append_state(out, e.state);
    out += ',' + fmt(e.state.completed_legal) + ',' +
           fmt(e.state.completed_illicit) + '\n';
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp + "' for writing");
    }
    out << content;
    if (!out) {
      throw std::runtime_error("write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      return columns[i];
    }
  }
  throw std::runtime_error("csv column '" + name + "' not found");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("'" + path + "' is empty");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) {
    table.header.push_back(cell);
  }
  table.columns.resize(table.header.size());
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    std::stringstream ls(line);
    std::size_t col = 0;
    while (col < table.columns.size() && std::getline(ls, cell, ',')) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
      }
      table.columns[col].push_back(v);
      ++col;
    }
    while (col < table.columns.size()) {
      table.columns[col].push_back(std::numeric_limits<double>::quiet_NaN());
      ++col;
    }
  }
  return table;
}

}  // namespace seedshare
