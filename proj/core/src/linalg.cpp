#include "sptkit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sptkit {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat pauli(int k) {
  Mat p = Mat::Zero(2, 2);
  switch (k) {
    case 0: p(0, 0) = 1; p(1, 1) = 1; break;
    case 1: p(0, 1) = 1; p(1, 0) = 1; break;
    case 2: p(0, 1) = -kI; p(1, 0) = kI; break;
    case 3: p(0, 0) = 1; p(1, 1) = -1; break;
    default: break;
  }
  return p;
}

Mat hadamard() {
  Mat h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Mat pauli_rotation(int axis, double theta) {
  return std::cos(theta / 2) * pauli(0) - kI * std::sin(theta / 2) * pauli(axis);
}

double unitarity_defect(const Mat& u) {
  return max_abs(u.adjoint() * u - Mat::Identity(u.cols(), u.cols()));
}

cplx frob_inner(const Mat& a, const Mat& b) { return (a.adjoint() * b).trace(); }

double trace_fidelity(const Mat& a, const Mat& b) {
  return std::abs(frob_inner(a, b)) / static_cast<double>(a.rows());
}

double distance_up_to_phase(const Mat& a, const Mat& b) {
  const cplx ov = frob_inner(b, a);
  const cplx phase = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
  return max_abs(a - phase * b);
}

DominantEigen dominant_eigen(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> es(m);
  const auto& vals = es.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < vals.size(); ++k)
    if (std::abs(vals(k)) > std::abs(vals(best))) best = k;
  double second = 0.0;
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    if (k != best) second = std::max(second, std::abs(vals(k)));
  return {vals(best), es.eigenvectors().col(best), second};
}

Vec vectorize(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unvectorize(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

int numerical_rank(const Mat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * s(0)) ++r;
  return r;
}

}  // namespace sptkit
