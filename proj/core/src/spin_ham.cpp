#include "sptkit/spin_ham.hpp"

#include <cmath>

#include "sptkit/errors.hpp"
#include "sptkit/group.hpp"

namespace sptkit {
namespace {

int sz_index(int m) { return 1 - m; }

Vec sz_pair(std::initializer_list<std::tuple<int, int, double>> terms) {
  Vec v = Vec::Zero(9);
  for (auto [m1, m2, c] : terms) v(sz_index(m1) * 3 + sz_index(m2)) += c;
  return v;
}

}  // namespace

std::array<Mat, 3> spin1_operators() {
  std::array<Mat, 3> s;
  for (int a = 0; a < 3; ++a) {
    s[a] = Mat::Zero(3, 3);
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    s[a](b, c) = -kI;
    s[a](c, b) = kI;
  }
  return s;
}

Mat xyz_in_sz_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat t(3, 3);
  t << -r, kI * r, 0,
       0, 0, 1,
       r, kI * r, 0;
  return t;
}

std::array<Mat, 3> spin1_sz_operators() {
  const double r = 1.0 / std::sqrt(2.0);
  std::array<Mat, 3> s;
  s[0] = Mat::Zero(3, 3);
  s[0] << 0, r, 0, r, 0, r, 0, r, 0;
  s[1] = Mat::Zero(3, 3);
  s[1] << 0, -kI * r, 0, kI * r, 0, -kI * r, 0, kI * r, 0;
  s[2] = Mat::Zero(3, 3);
  s[2] << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  return s;
}

const Vec& SpinPairBasis::ket(int s, int m) const {
  for (const auto& st : states)
    if (st.s == s && st.m == m) return st.ket;
  throw Error(ErrorCode::InvalidInput, "no coupled state |" + std::to_string(s) + "," + std::to_string(m) + ">");
}

double SpinPairBasis::orthonormality_defect() const {
  double worst = 0.0;
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = 0; j < states.size(); ++j)
      worst = std::max(worst, std::abs(states[i].ket.dot(states[j].ket) - (i == j ? 1.0 : 0.0)));
  return worst;
}

SpinPairBasis spin_pair_basis() {
  const double h = 1.0 / std::sqrt(2.0), s6 = 1.0 / std::sqrt(6.0), s3 = 1.0 / std::sqrt(3.0);
  // Condon-Shortley spin-1 x spin-1 table
  const std::vector<std::tuple<int, int, Vec>> sz = {
      {2, 2, sz_pair({{1, 1, 1.0}})},
      {2, 1, sz_pair({{1, 0, h}, {0, 1, h}})},
      {2, 0, sz_pair({{1, -1, s6}, {0, 0, 2 * s6}, {-1, 1, s6}})},
      {2, -1, sz_pair({{0, -1, h}, {-1, 0, h}})},
      {2, -2, sz_pair({{-1, -1, 1.0}})},
      {1, 1, sz_pair({{1, 0, h}, {0, 1, -h}})},
      {1, 0, sz_pair({{1, -1, h}, {-1, 1, -h}})},
      {1, -1, sz_pair({{0, -1, h}, {-1, 0, -h}})},
      {0, 0, sz_pair({{1, -1, s3}, {0, 0, -s3}, {-1, 1, s3}})},
  };
  const Mat t = xyz_in_sz_basis();
  const Mat to_xyz = kron(t, t).adjoint();
  SpinPairBasis basis;
  for (const auto& [s, m, v] : sz) basis.states.push_back({s, m, to_xyz * v});
  const Vec& a = basis.ket(2, 2);
  const Vec& b = basis.ket(2, -2);
  const Vec& c = basis.ket(2, 0);
  basis.phi_plus = (a + b + kI * std::sqrt(2.0) * c) / 2.0;
  basis.phi_minus = (a + b - kI * std::sqrt(2.0) * c) / 2.0;
  return basis;
}

double TwoSiteOperator::hermiticity_defect() const { return max_abs(matrix - matrix.adjoint()); }

HamiltonianTerms build_terms() {
  const auto s = spin1_operators();
  Mat ss = Mat::Zero(9, 9);
  Mat sq = Mat::Zero(9, 9);
  for (int a = 0; a < 3; ++a) {
    ss += kron(s[a], s[a]);
    sq += kron(s[a] * s[a], s[a] * s[a]);
  }
  const int x = 0, y = 1, z = 2;
  Mat hc = Mat::Zero(9, 9);
  const std::array<std::array<int, 3>, 6> left = {{{x, y, z}, {z, x, y}, {y, z, x}, {y, x, z}, {x, z, y}, {z, y, x}}};
  for (auto [p, q, r] : left) hc += kron(s[p] * s[q], s[r]);
  const std::array<std::array<int, 3>, 6> right = {{{x, y, z}, {z, x, y}, {y, z, x}, {x, z, y}, {z, y, x}, {y, x, z}}};
  for (auto [p, q, r] : right) hc += kron(s[p], s[q] * s[r]);

  HamiltonianTerms terms;
  terms.aklt = {ss + ss * ss / 3.0, "H_AKLT", "xyz"};
  terms.quartic = {sq - ss * ss / 3.0, "H_q", "xyz"};
  terms.cubic = {hc, "H_c", "xyz"};
  terms.convention = "nearest-neighbour bond operators on {x,y,z}(i) x {x,y,z}(i+1); (S^a)_bc = -i eps_abc";
  for (const auto* t : {&terms.aklt, &terms.quartic, &terms.cubic})
    if (t->hermiticity_defect() > 1e-12) throw Error(ErrorCode::CheckFailed, t->label + " is not Hermitian");
  return terms;
}

TwoSiteOperator bond_hamiltonian(double lambda, double mu) {
  const auto t = build_terms();
  return {t.aklt.matrix + lambda * t.cubic.matrix + mu * t.quartic.matrix, "H(lambda,mu)", "xyz"};
}

TwoSiteOperator offset_bond_hamiltonian(double lambda, double mu) {
  auto h = bond_hamiltonian(lambda, mu);
  h.matrix -= (2.0 / 3.0) * mu * Mat::Identity(9, 9);
  h.label = "H(lambda,mu) - 2mu/3";
  return h;
}

Mat swap_operator(int d) {
  Mat p = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(j * d + i, i * d + j) = 1.0;
  return p;
}

Mat so3_rotation(int axis, double theta) {
  if (axis < 1 || axis > 3) throw Error(ErrorCode::InvalidInput, "axis must be 1, 2 or 3");
  const Mat s = spin1_operators()[axis - 1];
  return Mat::Identity(3, 3) - kI * std::sin(theta) * s + (std::cos(theta) - 1.0) * s * s;
}

SymmetryResidual verify_symmetry(const TwoSiteOperator& term, std::string_view group) {
  if (term.matrix.rows() != 9 || term.matrix.cols() != 9)
    throw Error(ErrorCode::DimensionMismatch, "two-site spin-1 operator must be 9x9");
  std::string_view label;
  if (group == "A4") label = "3";
  else if (group == "S4") label = "3_(1)";
  else throw Error(ErrorCode::UnknownGroup, std::string(group) + " has no spin-1 irrep here");
  const GroupData gd = builtin_group(group);
  const Irrep& rep = gd.irrep(label);
  SymmetryResidual res;
  for (auto g : gd.table.generators) {
    const Mat uu = kron(rep.matrices[g], rep.matrices[g]);
    res.group = std::max(res.group, max_abs(term.matrix * uu - uu * term.matrix));
  }
  const Mat p = swap_operator(3);
  res.swap = max_abs(term.matrix - p * term.matrix * p);
  return res;
}

double rotation_commutator(const TwoSiteOperator& term, int axis, double theta) {
  const Mat r = so3_rotation(axis, theta);
  const Mat rr = kron(r, r);
  return max_abs(term.matrix * rr - rr * term.matrix);
}

Mat spin2_block(const Mat& term) {
  const auto basis = spin_pair_basis();
  Mat b(9, 3);
  b.col(0) = basis.ket(2, 2);
  b.col(1) = basis.ket(2, -2);
  b.col(2) = basis.ket(2, 0);
  return b.adjoint() * term * b;
}

HMatrix h_matrix(double lambda, double mu) {
  const cplx c = -kI * std::sqrt(6.0) * lambda;
  HMatrix out;
  out.h = Mat(3, 3);
  out.h << 2 + mu / 2, mu / 2, c,
           mu / 2, 2 + mu / 2, c,
           std::conj(c), std::conj(c), 2 + mu;
  Eigen::SelfAdjointEigenSolver<Mat> es(out.h, Eigen::EigenvaluesOnly);
  out.min_eig = es.eigenvalues()(0);
  return out;
}

bool aklt_region(double lambda, double mu) {
  const double w = 2.0 * std::sqrt(3.0) * lambda;
  return mu + w + 2.0 > 0.0 && mu - w + 2.0 > 0.0;
}

}  // namespace sptkit
