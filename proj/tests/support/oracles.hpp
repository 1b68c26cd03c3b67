#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

// Reference values computed from first principles, without calling into sptkit.
namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// One member of a linear family of MPS tensor sets: tensors[i] for physical index i.
using TensorSet = std::vector<Mat>;

Mat sigma(int k);  // 0 -> 1, 1..3 -> Pauli x, y, z
Mat kron(const Mat& a, const Mat& b);
Vec flatten(const TensorSet& set);

// Basis of the printed families, one TensorSet per free complex parameter.
// Z2xZ2: A^i = B_i (x) sigma_i, B_i free k x k.
std::vector<TensorSet> z2_family(int k);
// A4: A^i = V^{i-1} B V^{*(i-1)} (x) sigma_i, V = diag(1, w, w*) (x) 1_k, sectors ordered 2~_(0), 2~_(2), 2~_(1).
std::vector<TensorSet> a4_family(int k);
// S4 with spin 3_(1), virtual 2~_(0) + 2~_(1) + 4~ (k = 1); eight parameters.
std::vector<TensorSet> s4_family();
// D4 with spin 2_(2), virtual (2~_(1), k) + (2~_(3), k).
std::vector<TensorSet> d4_family(int k);

// Rank of the column span with singular values above rel_tol * largest.
int span_rank(const Mat& columns, double rel_tol = 1e-9);
Mat family_columns(const std::vector<TensorSet>& family);
// Least-squares distance (max abs) of a tensor set from the family span.
double family_distance(const std::vector<TensorSet>& family, const TensorSet& set);

// Single-qubit rotations written out with cos/sin.
Mat rz(double theta);
Mat rx(double theta);
// Rz(a) Rx(b) Rz(c)
Mat euler_zxz(double a, double b, double c);
// |tr(a^dagger b)| / 2
double overlap_2x2(const Mat& a, const Mat& b);

// Spin-1 pair data built in the S_z basis from ladder operators and the total-spin Casimir.
struct SpinPair {
  Mat to_xyz;    // 9 x 9 map from S_z (m1, m2 ordered 1, 0, -1) to {x,y,z} pairs
  Mat p_spin2;   // projector on total spin 2, xyz basis
  Vec s2_p2, s2_m2, s2_0;  // |2,2>, |2,-2>, |2,0> in xyz basis
  Vec phi_plus, phi_minus;
};
SpinPair spin_pair();

Mat projector(const Vec& v);

}  // namespace oracle
