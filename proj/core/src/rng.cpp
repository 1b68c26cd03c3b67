#include "sptkit/rng.hpp"

#include <cmath>
#include <numbers>

namespace sptkit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t k = splitmix64(key_ ^ splitmix64(stream_ + 0x632BE59BD9B4E019ULL));
  return splitmix64(k + (counter_++) * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx CounterRng::unit_disk() {
  const double r = std::sqrt(uniform());
  const double t = 2.0 * std::numbers::pi * uniform();
  return std::polar(r, t);
}

cplx CounterRng::complex_normal() {
  const double re = normal();
  return {re, normal()};
}

Mat CounterRng::unit_disk_matrix(Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = unit_disk();
  return m;
}

Vec CounterRng::haar_state(Eigen::Index dim) {
  Vec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_normal();
  return v / v.norm();
}

Mat CounterRng::haar_unitary(Eigen::Index dim) {
  Mat z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = complex_normal();
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const cplx d = r(k, k);
    q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0);
  }
  return q;
}

}  // namespace sptkit
