#pragma once

#include <cstdint>
#include <string>

#include "sptkit/itebd.hpp"
#include "sptkit/scan.hpp"

namespace sptkit {

// One versioned table of every default; echoed into each output.
struct Defaults {
  std::string version = "sptkit-defaults/1";
  std::uint64_t seed = 1;
  std::uint64_t cg_seed = 0;
  double group_tol = 1e-10;
  int group_max_order = 4096;
  double cg_tol = 1e-9;
  double cg_degenerate_seed = 1e-8;
  int cg_retries = 5;
  double mps_tol = 1e-12;
  double injectivity_gap = 1e-6;
  double extract_tol = 1e-8;
  double zero_amplitude = 1e-14;
  double pauli_tol = 1e-10;
  int mbqc_sites = 8;
  int mbqc_max_attempts = 64;
  int junk_degeneracy = 2;
  ItebdOptions itebd;
  double canonical_tol = 1e-8;
  double degenerate_gap = 1e-10;
  ScanSpec scan;
};

const Defaults& defaults();

// The table as canonical JSON
std::string defaults_json(int indent = 2);

}  // namespace sptkit
