#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sptkit/linalg.hpp"
#include "sptkit/mps.hpp"
#include "sptkit/spin_ham.hpp"

namespace sptkit {

struct Stage {
  double dt = 0.0;
  int steps = 0;
};
using Schedule = std::vector<Stage>;

Schedule default_schedule();

struct ConvergenceEntry {
  double dt = 0.0;
  int steps_taken = 0;
  double energy = 0.0;
  double last_change = 0.0;
};

// Two-site cell ...|A|B|A|B|... in right-canonical form: site[k][s] = Gamma_k^s diag(lambda_k).
// lambda[0] sits on the A|B bond, lambda[1] on the B|A bond.
struct ItebdState {
  int chi = 0;
  std::vector<Mat> site[2];
  RVec lambda[2];
  std::vector<ConvergenceEntry> log;
  bool converged = false;

  int phys_dim() const { return static_cast<int>(site[0].size()); }
  // Vidal Gamma_k^s = site[k][s] diag(lambda_k)^{-1}
  std::vector<Mat> gamma(int k) const;
};

struct ItebdOptions {
  int chi = 8;
  Schedule schedule = default_schedule();
  std::uint64_t seed = 1;
  double truncation = 1e-12;     // relative singular-value cutoff
  double stage_tolerance = 1e-10;  // |dE| per sweep that ends a stage
  double drift_tolerance = 1e-8;   // final-stage drift above this is NoConvergence
  int min_steps = 20;
  // called after every full Trotter step with (stage index, step index, energy density)
  std::function<void(int, int, double)> on_sweep;
};

ItebdState itebd_ground_state(const TwoSiteOperator& h, const ItebdOptions& options);

// Random two-site state, canonicalized
ItebdState random_state(int d, int chi, std::uint64_t seed);
// Uniform MPS A^s placed on both sublattices, canonicalized
ItebdState from_uniform_mps(const std::vector<Mat>& a, int chi_cap = 0);

void canonicalize(ItebdState& state, double cutoff = 1e-12);
double canonical_residual(const ItebdState& state);

// Average of the two bond energies; NonCanonical above 1e-8 residual
double energy_density(const ItebdState& state, const TwoSiteOperator& h);

struct Fidelity {
  double value = 0.0;  // |Lambda_cell| = |Lambda_site|^2
  cplx cell_eigenvalue;
  double gap = 0.0;    // |Lambda_1| - |Lambda_2| of the normalized mixed transfer
  bool degenerate = false;
};

Fidelity fidelity_per_site(const ItebdState& state, const std::vector<Mat>& reference);
Fidelity fidelity_per_site(const ItebdState& state, const SymmetricMps& reference);

}  // namespace sptkit
