#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sptkit/group.hpp"

namespace sptkit {

inline constexpr std::string_view kCgPhaseConvention =
    "largest-magnitude entry real positive; first in row-major order on ties at 1e-9";

struct CgTensor {
  std::string i_label;
  std::string alpha_label;
  std::string beta_label;
  int copy = 1;  // n, 1-based
  Mat coeffs;    // (dim_i * dim_alpha) x dim_beta, rows i-major
  std::string phase_convention{kCgPhaseConvention};
};

// sum_r D'(r) seed D(r)^dagger
Mat average_intertwiner(std::span<const Mat> dprime, std::span<const Mat> d, const Mat& seed);

// Rescales m so its largest-magnitude entry is real positive.
void fix_phase(Mat& m, double tie_tol = 1e-9);

std::vector<CgTensor> compute_cg(const GroupTable& table, const Irrep& i, const Irrep& alpha,
                                 std::span<const Irrep> irreps, std::uint64_t rng_seed);

struct CgResidual {
  double intertwining = 0.0;
  double orthonormality = 0.0;
  bool ok(double tol = 1e-9) const { return intertwining < tol && orthonormality < tol; }
};

CgResidual verify_cg(const GroupTable& table, const CgTensor& cg, const Irrep& i, const Irrep& alpha,
                     const Irrep& beta);

// Columns of every tensor side by side
Mat stack_cg(std::span<const CgTensor> tensors);

}  // namespace sptkit
