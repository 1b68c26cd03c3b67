#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sptkit/itebd.hpp"

namespace sptkit {

struct ScanSpec {
  double lambda_min = -3.0;
  double lambda_max = 3.0;
  int lambda_points = 121;
  double mu_min = -3.0;
  double mu_max = 3.0;
  int mu_points = 121;
  int chi = 8;
  Schedule schedule = default_schedule();
  std::uint64_t seed = 1;  // point k uses seed + k
  int jobs = 1;
};

struct ScanRow {
  double lambda = 0.0;
  double mu = 0.0;
  double energy_per_site = 0.0;
  double fidelity_per_site = 0.0;
  double min_eig_h = 0.0;
  bool in_region_analytic = false;
  bool converged = false;
  bool degenerate = false;
  std::string error;  // empty unless the point failed
};

// Rows in grid order: lambda outer, mu inner
std::vector<ScanRow> phase_scan(const ScanSpec& spec);
ScanRow scan_point(double lambda, double mu, int chi, const Schedule& schedule, std::uint64_t seed);

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows, const std::vector<std::string>& header_lines);
std::string scan_plot_script(const std::string& csv_path, const ScanSpec& spec);

}  // namespace sptkit
