#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sptkit/mps.hpp"

namespace sptkit {

struct MeasurementBasis {
  std::string name;
  std::vector<std::string> labels;
  std::vector<Vec> kets;

  double gram_defect() const;
};

MeasurementBasis computational_basis(const std::vector<std::string>& labels, std::string name = "computational");
MeasurementBasis aklt_xyz_basis();
MeasurementBasis aklt_rz_basis(double theta);  // {|theta,x>, |theta,y>, |z>}
MeasurementBasis aklt_rx_basis(double theta);  // {|x>, |theta,y>, |theta,z>}
MeasurementBasis cluster_basis(double phi);    // {(|0> + e^{i phi}|1>)/sqrt2, (|0> - e^{i phi}|1>)/sqrt2}
MeasurementBasis mixing_basis();               // {(|x>+|y>)/sqrt2, (|x>-|y>)/sqrt2, |z>}

// phase * sigma_pauli
struct PauliFrame {
  int pauli = 0;
  cplx phase{1.0, 0.0};

  Mat matrix() const;
  std::string word() const;
  static std::optional<PauliFrame> identify(const Mat& m, double tol = 1e-10);
};
PauliFrame operator*(const PauliFrame& a, const PauliFrame& b);

struct MeasurementRecord {
  int site = 0;  // 1-based, counted from the right boundary
  std::string basis;
  int outcome = 0;
  std::string outcome_label;
  double p = 0.0;
  std::vector<double> probabilities;
  PauliFrame byproduct_after;
  std::optional<Mat> protected_map;  // set while the split is intact and the map factorizes
  bool split_kept = false;
};

struct LogicalFrame {
  Vec boundary;
  bool split = false;
  PauliFrame byproduct;
  std::vector<MeasurementRecord> transcript;
  int measured = 0;
};

LogicalFrame make_frame(const SymmetricMps& mps, const Vec& junk, const Vec& protected_state);

struct Forced {
  int index = 0;
};
struct Sampled {
  std::uint64_t seed = 0;
};
using OutcomeChoice = std::variant<Forced, Sampled>;

LogicalFrame measure_site(const SymmetricMps& mps, LogicalFrame frame, const MeasurementBasis& basis,
                          const OutcomeChoice& choice);

// Schmidt rank of the boundary vector across junk | protected
int junk_protected_rank(const SymmetricMps& mps, const Vec& boundary, double rel_tol = 1e-10);
// Protected factor of a product boundary vector (normalized)
Vec protected_part(const SymmetricMps& mps, const Vec& boundary);

struct Rotation {
  int axis = 3;  // 1 = x, 3 = z
  double angle = 0.0;
};
// "rz:0.785,rx:1.047", listed in application order
std::vector<Rotation> parse_gate_list(const std::string& text);
// Product of the rotations, first listed acts first
Mat gate_matrix(const std::vector<Rotation>& rotations);
// z-x-z Euler decomposition in application order: rz(c), rx(b), rz(a)
std::vector<Rotation> euler_zxz(double a, double b, double c);

enum class ResourceKind { Cluster, Aklt };
ResourceKind parse_resource_kind(const std::string& name);

struct CompileResult {
  std::vector<MeasurementRecord> transcript;
  std::vector<int> attempts;  // measurements spent per rotation
  Mat raw_product;            // product of raw protected maps, latest leftmost
  PauliFrame byproduct;
  Mat target;
  Mat corrected;  // byproduct^dagger * raw_product
  double fidelity = 0.0;
};

CompileResult compile_rotation(ResourceKind kind, const std::vector<Rotation>& targets, int max_attempts,
                               std::uint64_t seed, int idle_sites = 0);

struct ProtectionReport {
  std::string group;
  int sites = 0;
  double protected_fidelity = 0.0;
  int final_rank = 0;
  PauliFrame byproduct;
  std::vector<MeasurementRecord> transcript;
  int negative_control_rank = 0;
  bool negative_control_split_lost = false;
};

// Builds the group's spin-1 SPT model with random B, encodes a Haar-random qubit in the protected factor,
// measures n_sites in the factorizing basis and compares with the Pauli-word prediction.
ProtectionReport identity_protection_test(const std::string& group, std::uint64_t b_seed, int n_sites,
                                          std::uint64_t measurement_seed, int junk_degeneracy = 2);

MpsBuildSpec protection_model(const std::string& group, int junk_degeneracy);

}  // namespace sptkit
