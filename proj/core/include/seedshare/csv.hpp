#ifndef SEEDSHARE_CSV_HPP
#define SEEDSHARE_CSV_HPP

#include <string>
#include <vector>

#include "seedshare/economics.hpp"
#include "seedshare/fluid.hpp"
#include "seedshare/stochastic.hpp"

namespace seedshare {

// Fixed column orders; headers are part of the output contract.
inline constexpr const char* kTrajectoryHeader =
    "time,x_L,y_L,x_I,y_I,A,gross,shared,net,completed_L,completed_I";
inline constexpr const char* kEnsembleHeader =
    "replication,net_revenue,completed_L,completed_I,final_y_I";
inline constexpr const char* kSweepHeader = "delta,net_revenue";
inline constexpr const char* kEventLogHeader =
    "time,event_kind,swarm,x_L,y_L,x_I,y_I,A,gross,shared,completed_L,"
    "completed_I";

std::string trajectory_csv(const Trajectory& traj);
std::string ensemble_csv(const StochasticRun& run);
std::string sweep_csv(const SweepResult& sweep);
std::string event_log_csv(const std::vector<Event>& events);

/// Writes via a temp file in the same directory, then renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

/// Parses a CSV produced by this toolkit into header + numeric columns
/// (non-numeric cells become NaN). Used by the plot command and tests.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  // column-major

  std::size_t row_count() const {
    return columns.empty() ? 0 : columns.front().size();
  }
  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace seedshare

#endif
