#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "sptkit/linalg.hpp"

namespace sptkit {

// (S^a)_{bc} = -i eps_{abc} in the {x,y,z} basis
std::array<Mat, 3> spin1_operators();

// Columns are |x>,|y>,|z> written in the S_z basis ordered m = 1, 0, -1
Mat xyz_in_sz_basis();

// Standard spin-1 matrices in the S_z basis, m = 1, 0, -1
std::array<Mat, 3> spin1_sz_operators();

struct CoupledState {
  int s = 0;
  int m = 0;
  Vec ket;  // {x,y,z} x {x,y,z}
};

struct SpinPairBasis {
  std::vector<CoupledState> states;  // S = 2, 1, 0; m descending
  Vec phi_plus;
  Vec phi_minus;

  const Vec& ket(int s, int m) const;
  double orthonormality_defect() const;
};

SpinPairBasis spin_pair_basis();

struct TwoSiteOperator {
  Mat matrix;
  std::string label;
  std::string basis = "xyz";

  double hermiticity_defect() const;
};

struct HamiltonianTerms {
  TwoSiteOperator aklt;
  TwoSiteOperator quartic;
  TwoSiteOperator cubic;
  std::string convention;
};

HamiltonianTerms build_terms();

// H_AKLT + lambda H_c + mu H_q
TwoSiteOperator bond_hamiltonian(double lambda, double mu);
// H_AKLT + lambda H_c + mu (H_q - 2/3): AKLT energy stays -2/3 per bond in the region
TwoSiteOperator offset_bond_hamiltonian(double lambda, double mu);

Mat swap_operator(int d);
// exp(-i theta S^axis), axis in {1,2,3}
Mat so3_rotation(int axis, double theta);

struct SymmetryResidual {
  double group = 0.0;
  double swap = 0.0;
};

// Commutator with u(g) (x) u(g) over the generators of the group's physical spin-1 irrep
SymmetryResidual verify_symmetry(const TwoSiteOperator& term, std::string_view group = "A4");
double rotation_commutator(const TwoSiteOperator& term, int axis, double theta);

// Matrix elements on (|2,2>, |2,-2>, |2,0>)
Mat spin2_block(const Mat& term);

struct HMatrix {
  Mat h;
  double min_eig = 0.0;
};

HMatrix h_matrix(double lambda, double mu);
bool aklt_region(double lambda, double mu);

}  // namespace sptkit
