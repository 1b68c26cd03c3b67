#include "sptkit/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "sptkit/errors.hpp"

namespace sptkit {
namespace {

double grid_value(double lo, double hi, int n, int k) { return n == 1 ? lo : lo + (hi - lo) * k / (n - 1); }

std::string num17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ScanRow scan_point(double lambda, double mu, int chi, const Schedule& schedule, std::uint64_t seed) {
  ScanRow row;
  row.lambda = lambda;
  row.mu = mu;
  const auto h = h_matrix(lambda, mu);
  row.min_eig_h = h.min_eig;
  row.in_region_analytic = aklt_region(lambda, mu);
  const auto ham = offset_bond_hamiltonian(lambda, mu);
  ItebdOptions opt;
  opt.chi = chi;
  opt.schedule = schedule;
  opt.seed = seed;
  try {
    const auto st = itebd_ground_state(ham, opt);
    row.converged = st.converged;
    row.energy_per_site = energy_density(st, ham);
    const auto f = fidelity_per_site(st, aklt_mps());
    row.fidelity_per_site = f.value;
    row.degenerate = f.degenerate;
  } catch (const Error& e) {
    row.error = std::string(to_string(e.code()));
    row.energy_per_site = std::nan("");
    row.fidelity_per_site = std::nan("");
  }
  return row;
}

std::vector<ScanRow> phase_scan(const ScanSpec& spec) {
  if (spec.lambda_points < 1 || spec.mu_points < 1) throw Error(ErrorCode::InvalidInput, "grid needs at least one point per axis");
  if (!(spec.lambda_max >= spec.lambda_min) || !(spec.mu_max >= spec.mu_min))
    throw Error(ErrorCode::InvalidInput, "ranges must satisfy min <= max");
  if (spec.jobs < 1) throw Error(ErrorCode::InvalidInput, "jobs must be >= 1");
  const int total = spec.lambda_points * spec.mu_points;
  std::vector<ScanRow> rows(static_cast<size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < total; k = next++) {
      const double l = grid_value(spec.lambda_min, spec.lambda_max, spec.lambda_points, k / spec.mu_points);
      const double m = grid_value(spec.mu_min, spec.mu_max, spec.mu_points, k % spec.mu_points);
      rows[static_cast<size_t>(k)] = scan_point(l, m, spec.chi, spec.schedule, spec.seed + static_cast<std::uint64_t>(k));
    }
  };
  std::vector<std::jthread> pool;
  for (int j = 1; j < std::min(spec.jobs, total); ++j) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows, const std::vector<std::string>& header_lines) {
  for (const auto& line : header_lines) os << "# " << line << '\n';
  os << "lambda,mu,energy_per_site,fidelity_per_site,min_eig_h,in_region_analytic,converged\n";
  for (const auto& r : rows) {
    os << num17(r.lambda) << ',' << num17(r.mu) << ',' << num17(r.energy_per_site) << ','
       << num17(r.fidelity_per_site) << ',' << num17(r.min_eig_h) << ',' << (r.in_region_analytic ? "true" : "false")
       << ',' << (r.error.empty() ? (r.converged ? "true" : "false") : r.error) << '\n';
  }
}

std::string scan_plot_script(const std::string& csv_path, const ScanSpec& spec) {
  std::ostringstream os;
  os << "# gnuplot: fidelity per site over (lambda, mu)\n"
     << "set datafile separator ','\n"
     << "set datafile commentschars '#'\n"
     << "set key off\n"
     << "set xlabel 'lambda'\nset ylabel 'mu'\n"
     << "set xrange [" << num17(spec.lambda_min) << ":" << num17(spec.lambda_max) << "]\n"
     << "set yrange [" << num17(spec.mu_min) << ":" << num17(spec.mu_max) << "]\n"
     << "set cbrange [0:1]\nset palette rgbformulae 33,13,10\n"
     << "set view map\n"
     << "set term pngcairo size 800,700\nset output '" << csv_path << ".png'\n"
     << "w = 2*sqrt(3)\n"
     << "splot '" << csv_path << "' every ::1 using 1:2:4 with points pointtype 5 pointsize 2 palette, \\\n"
     << "      '+' using 1:(w*$1-2):(1) with lines lc rgb 'black' lw 2, \\\n"
     << "      '+' using 1:(-w*$1-2):(1) with lines lc rgb 'black' lw 2\n";
  return os.str();
}

}  // namespace sptkit
