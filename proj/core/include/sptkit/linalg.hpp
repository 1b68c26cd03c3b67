#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace sptkit {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

double max_abs(const Mat& m);
Mat kron(const Mat& a, const Mat& b);

// 0 -> identity, 1..3 -> sigma_x, sigma_y, sigma_z
Mat pauli(int k);
Mat hadamard();
// exp(-i theta sigma_axis / 2), axis in {1,2,3}
Mat pauli_rotation(int axis, double theta);

double unitarity_defect(const Mat& u);

// Frobenius inner product tr(a^dagger b)
cplx frob_inner(const Mat& a, const Mat& b);

// |tr(a^dagger b)| / dim for unitaries; 1 iff equal up to a global phase
double trace_fidelity(const Mat& a, const Mat& b);

// Max-abs distance after aligning b's global phase to a
double distance_up_to_phase(const Mat& a, const Mat& b);

// Eigenpair of largest modulus; second is the modulus of the runner-up (0 if size 1)
struct DominantEigen {
  cplx value;
  Vec vector;
  double second_modulus = 0.0;
};
DominantEigen dominant_eigen(const Mat& m);

// Matrix -> column-major vector and back
Vec vectorize(const Mat& m);
Mat unvectorize(const Vec& v, Eigen::Index rows, Eigen::Index cols);

// Number of singular values above rel_tol * largest
int numerical_rank(const Mat& m, double rel_tol);

}  // namespace sptkit
