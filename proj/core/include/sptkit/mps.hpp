#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sptkit/cg.hpp"
#include "sptkit/group.hpp"

namespace sptkit {

struct PhysicalSector {
  std::string label;
  int dim = 0;
  int offset = 0;
};

struct VirtualSector {
  std::string label;
  int degeneracy = 0;
  int irrep_dim = 0;
  int offset = 0;  // basis index = offset + d * irrep_dim + m
};

// B block for physical irrep p, virtual sectors alpha -> beta, CG copy n (1-based)
struct BlockKey {
  int phys = 0;
  int alpha = 0;
  int beta = 0;
  int copy = 1;
  auto operator<=>(const BlockKey&) const = default;
};
using BlockMap = std::map<BlockKey, Mat>;

// Virtual space factorized as junk (x) protected, protected being a 2D class-a irrep P with
// every sector irrep equal to J (x) P for a linear irrep J.
struct ProtectedSplit {
  std::string protected_label;
  int junk_dim = 0;
  int protected_dim = 2;
  std::vector<int> split_index;  // virtual index -> junk * protected_dim + s

  Mat to_split() const;  // permutation S with S v_virtual = v_split
};

struct SymmetricMps {
  std::string group;
  std::vector<PhysicalSector> phys;
  std::vector<VirtualSector> bond;
  std::string chi_label;
  std::string basis_note;
  std::uint64_t cg_seed = 0;
  std::vector<std::vector<Mat>> sites;  // sites[s][i]; one entry when translation invariant
  std::vector<BlockMap> blocks;          // per site, empty for raw tensors
  std::vector<CgTensor> cgs;
  std::optional<ProtectedSplit> split;

  int phys_dim() const;
  int bond_dim() const;
  bool translation_invariant() const { return sites.size() == 1; }
  const std::vector<Mat>& tensors(int site = 0) const { return sites[static_cast<size_t>(site) % sites.size()]; }
};

struct MpsBuildSpec {
  std::string group;
  std::vector<std::string> phys_irreps;
  CohomologyClass omega = CohomologyClass::Nontrivial;
  std::string chi;  // empty -> trivial irrep
  std::vector<std::pair<std::string, int>> virtual_spec;
  std::optional<BlockMap> blocks;  // unset -> random from random_seed
  std::uint64_t random_seed = 0;
  std::uint64_t cg_seed = 0;
  int sites = 1;
  std::string basis_note;
};

// Keys and shapes of every B block the build needs.
std::vector<std::pair<BlockKey, std::pair<int, int>>> required_blocks(const GroupData& group,
                                                                      const MpsBuildSpec& spec);

SymmetricMps build_mps(const GroupData& group, const MpsBuildSpec& spec);

// Recomputes every A^i from the stored B blocks and CG tensors; returns the max deviation.
double reconstruction_residual(const GroupData& group, const SymmetricMps& mps);

SymmetricMps raw_mps(std::vector<Mat> tensors, std::string basis_note);
SymmetricMps aklt_mps();     // A^i = sigma_i in {|x>,|y>,|z>}
SymmetricMps cluster_mps();  // A^0 = [[1,0],[1,0]], A^1 = [[0,1],[0,-1]]

std::optional<ProtectedSplit> detect_protected_split(const GroupData& group,
                                                     const std::vector<VirtualSector>& bond,
                                                     double tol = 1e-10);

struct Periodic {};
struct OpenBoundary {
  Vec left;
  Vec right;
};
using Boundary = std::variant<Periodic, OpenBoundary>;

cplx evaluate_amplitude(const SymmetricMps& mps, const std::vector<int>& config, const Boundary& boundary);

// Operator-Schmidt coefficients of m across (junk_dim x p) (x) (junk_dim x p)
RVec operator_schmidt_values(const Mat& m, int junk_dim, int protected_dim);
int operator_schmidt_rank(const Mat& m, int junk_dim, int protected_dim, double rel_tol = 1e-10);

// Best rank-1 term B (x) P of a matrix already in the junk (x) protected basis; P has
// tr(P^dagger P) = protected_dim and its largest entry real positive.
struct SplitFactor {
  Mat junk;
  Mat protected_;
  double residual = 0.0;
};
SplitFactor split_factor(const Mat& m_split, int junk_dim, int protected_dim);

struct Factorization {
  std::vector<Mat> junk;       // B_i
  std::vector<Mat> protected_; // P_i, normalized with tr(P^dagger P) = protected_dim
  double residual = 0.0;       // max ||A_split^i - B_i (x) P_i||
};
// Best rank-1 split of every tensor in the junk (x) protected basis.
Factorization protected_factorization(const SymmetricMps& mps, int site = 0);

// ---- symmetry actions and checks ----

struct SymmetryAction {
  std::vector<Mat> u;    // physical, per generator
  std::vector<Mat> v;    // virtual, per generator
  std::vector<cplx> chi; // per generator
};

// u(g) = (+)_p D_p(g), V(g) = (+)_a 1_{n_a} (x) D_a(g), chi(g) from the mps's chi label
SymmetryAction symmetry_action(const GroupData& group, const SymmetricMps& mps);
std::vector<Mat> physical_rep(const GroupData& group, const SymmetricMps& mps);  // every element
std::vector<Mat> virtual_rep(const GroupData& group, const std::vector<VirtualSector>& bond);

double check_onsite_invariance(const SymmetricMps& mps, const SymmetryAction& sym, int site = 0);

struct TransferSpectrum {
  cplx leading;
  double gap = 0.0;  // 1 - |second| / |leading|
  Mat fixed_point;   // right fixed point R of E(X) = sum A X A^dagger
};
TransferSpectrum transfer_spectrum(const std::vector<Mat>& a);

// Solves Atilde^i = s X^{-1} A^i X for (X, s) from the dominant eigenvector of the mixed map.
struct IntertwinerSolution {
  Mat x;
  cplx scalar;
  double residual = 0.0;
};
IntertwinerSolution solve_intertwiner(const std::vector<Mat>& a, const std::vector<Mat>& atilde,
                                      double gap_tol = 1e-6);

struct ExtractedRep {
  std::vector<Mat> v;
  std::vector<cplx> chi;
  double residual = 0.0;
};
ExtractedRep extract_virtual_rep(const SymmetricMps& mps, const std::vector<Mat>& u_generators,
                                 double tol = 1e-8);

// Recovered generators are fixed only up to a scalar each. Every choice of scalars that makes
// them a linear representation of the cover is decomposed into irreps (label -> multiplicity).
std::vector<std::map<std::string, int>> candidate_virtual_decompositions(
    const GroupData& group, const std::vector<Mat>& v_generators, double tol = 1e-6);

struct ParityReport {
  double residual = 0.0;
  int beta_p = 0;
};
ParityReport check_parity(const SymmetricMps& mps, const Mat& w, const Mat& n, int alpha_p);
struct ParitySolution {
  Mat n;
  int alpha_p = 0;
  int beta_p = 0;
  double residual = 0.0;
};
ParitySolution solve_parity(const SymmetricMps& mps, const Mat& w);

struct TimeReversalReport {
  double residual = 0.0;
  int beta_t = 0;
};
TimeReversalReport check_time_reversal(const SymmetricMps& mps, const Mat& v, const Mat& m);
struct TimeReversalSolution {
  Mat m;
  int beta_t = 0;
  double residual = 0.0;
};
TimeReversalSolution solve_time_reversal(const SymmetricMps& mps, const Mat& v);

// M N^dagger M N^dagger = c 1; returns the deviation from a unit-modulus scalar multiple
double parity_time_commutation_defect(const Mat& m, const Mat& n);

struct LGamma {
  Mat l;
  std::vector<int> permutation;  // block a -> block p(a)
  double residual = 0.0;
};
LGamma compute_lgamma(const GroupData& group, const std::vector<VirtualSector>& bond,
                      const Irrep& gamma, double tol = 1e-9);

struct BlockFormReport {
  bool holds = false;
  std::vector<Mat> blocks;  // X_a, n_a x n_a
  double residual = 0.0;
};
BlockFormReport check_block_form(const Mat& x, const Mat& l, const std::vector<VirtualSector>& bond,
                                 double tol = 1e-9);

// Physical actions in the {|x>,|y>,|z>} basis
Mat spin1_parity_action();           // -1 on the site, paired with alpha(P) = +1
Mat spin1_time_reversal_action();    // exp(-i pi S_y) K expressed on {x,y,z}
Mat spin1_pi_rotation(int axis);     // exp(-i pi S_axis), axis 1..3

}  // namespace sptkit
