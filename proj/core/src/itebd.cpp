#include "sptkit/itebd.hpp"

#include <algorithm>
#include <cmath>

#include "sptkit/errors.hpp"
#include "sptkit/rng.hpp"

namespace sptkit {
namespace {

Mat hermitian_exp(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Vec w = (-t * es.eigenvalues().array()).exp().cast<cplx>();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

Mat diag(const RVec& v) { return v.cast<cplx>().asDiagonal(); }

// theta[s1*d+s2] = left * A[s1] B[s2]
std::vector<Mat> two_site(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  const auto d = a.size();
  std::vector<Mat> out(d * d);
  for (size_t s1 = 0; s1 < d; ++s1)
    for (size_t s2 = 0; s2 < d; ++s2) out[s1 * d + s2] = a[s1] * b[s2];
  return out;
}

std::vector<Mat> apply_gate(const Mat& g, const std::vector<Mat>& theta) {
  std::vector<Mat> out(theta.size(), Mat::Zero(theta[0].rows(), theta[0].cols()));
  for (size_t s = 0; s < theta.size(); ++s)
    for (size_t t = 0; t < theta.size(); ++t)
      if (g(s, t) != cplx(0.0)) out[s] += g(s, t) * theta[t];
  return out;
}

// <theta|h|theta> / <theta|theta>
cplx bond_expectation(const Mat& h, const std::vector<Mat>& theta) {
  cplx num = 0.0;
  double norm = 0.0;
  for (size_t s = 0; s < theta.size(); ++s) {
    norm += theta[s].squaredNorm();
    for (size_t t = 0; t < theta.size(); ++t) num += h(s, t) * frob_inner(theta[s], theta[t]);
  }
  return num / norm;
}

struct Split {
  std::vector<Mat> left;
  std::vector<Mat> right;
  RVec s;
};

// SVD of the (s1 l, s2 r) matricization of `weighted`; right factor is a row isometry,
// left = raw * right^dagger. Singular values normalized to unit 2-norm.
Split split_two_site(const std::vector<Mat>& raw, const std::vector<Mat>& weighted, int d, int chi_cap,
                     double cutoff) {
  const auto rows = weighted[0].rows(), cols = weighted[0].cols();
  Mat big(d * rows, d * cols);
  for (int s1 = 0; s1 < d; ++s1)
    for (int s2 = 0; s2 < d; ++s2) big.block(s1 * rows, s2 * cols, rows, cols) = weighted[s1 * d + s2];
  Eigen::BDCSVD<Mat> svd(big, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < sv.size() && sv(keep) > cutoff * sv(0)) ++keep;
  if (chi_cap > 0) keep = std::min<Eigen::Index>(keep, chi_cap);
  keep = std::max<Eigen::Index>(keep, 1);
  Split out;
  const double norm = sv.head(keep).norm();
  out.s = sv.head(keep) / norm;
  const Mat vh = svd.matrixV().leftCols(keep).adjoint();
  out.right.resize(d);
  for (int s2 = 0; s2 < d; ++s2) out.right[s2] = vh.middleCols(s2 * cols, cols);
  out.left.assign(d, Mat::Zero(raw[0].rows(), keep));
  for (int s1 = 0; s1 < d; ++s1) {
    for (int s2 = 0; s2 < d; ++s2) out.left[s1] += raw[s1 * d + s2] * out.right[s2].adjoint();
    out.left[s1] /= norm;
  }
  return out;
}

// One gate on bond (k, 1-k); updates site[k], site[1-k] and lambda[k].
void bond_update(ItebdState& st, int k, const Mat& gate, double cutoff) {
  const int d = st.phys_dim();
  const int o = 1 - k;
  const auto raw = apply_gate(gate, two_site(st.site[k], st.site[o]));
  std::vector<Mat> weighted(raw.size());
  const Mat left = diag(st.lambda[o]);
  for (size_t s = 0; s < raw.size(); ++s) weighted[s] = left * raw[s];
  auto sp = split_two_site(raw, weighted, d, st.chi, cutoff);
  st.site[k] = std::move(sp.left);
  st.site[o] = std::move(sp.right);
  st.lambda[k] = std::move(sp.s);
}

double bond_energy(const ItebdState& st, int k, const Mat& h) {
  auto theta = two_site(st.site[k], st.site[1 - k]);
  const Mat left = diag(st.lambda[1 - k]);
  for (auto& t : theta) t = left * t;
  return bond_expectation(h, theta).real();
}

double sweep_energy(const ItebdState& st, const Mat& h) { return 0.5 * (bond_energy(st, 0, h) + bond_energy(st, 1, h)); }

Mat transfer(const std::vector<Mat>& top, const std::vector<Mat>& bottom) {
  // vec(sum_s top_s X bottom_s^dagger) = sum_s conj(bottom_s) (x) top_s vec(X)
  Mat e = Mat::Zero(top[0].rows() * bottom[0].rows(), top[0].cols() * bottom[0].cols());
  for (size_t s = 0; s < top.size(); ++s) e += kron(bottom[s].conjugate(), top[s]);
  return e;
}

Mat hermitian_fixed_point(const Mat& e, Eigen::Index dim) {
  const auto dom = dominant_eigen(e);
  Mat r = unvectorize(dom.vector, dim, dim);
  const cplx tr = r.trace();
  r /= tr / std::abs(tr);
  r = 0.5 * (r + r.adjoint()).eval();
  return r / r.trace().real();
}

}  // namespace

Schedule default_schedule() { return {{0.1, 2000}, {0.03, 2000}, {0.01, 2000}, {0.003, 2000}, {0.001, 2000}}; }

std::vector<Mat> ItebdState::gamma(int k) const {
  std::vector<Mat> g;
  const RVec inv = lambda[k].cwiseInverse();
  for (const auto& b : site[k]) g.push_back(b * diag(inv));
  return g;
}

void canonicalize(ItebdState& st, double cutoff) {
  const int d = st.phys_dim();
  // merged cell tensor with left bond B|A
  const auto m = two_site(st.site[0], st.site[1]);
  const auto chi = m[0].rows();

  const Mat r = hermitian_fixed_point(transfer(m, m), chi);
  std::vector<Mat> mdag(m.size());
  for (size_t s = 0; s < m.size(); ++s) mdag[s] = m[s].adjoint();
  const Mat l = hermitian_fixed_point(transfer(mdag, mdag), chi);

  Eigen::SelfAdjointEigenSolver<Mat> er(r), el(l);
  const RVec wr = er.eigenvalues().cwiseMax(0.0);
  Eigen::Index first = 0;
  while (first < wr.size() && wr(first) <= cutoff * wr(wr.size() - 1)) ++first;
  const Eigen::Index kr = wr.size() - first;
  const Mat vr = er.eigenvectors().rightCols(kr);
  const Mat x = vr * diag(wr.tail(kr).cwiseSqrt());
  const Mat xinv = diag(wr.tail(kr).cwiseSqrt().cwiseInverse()) * vr.adjoint();
  const Mat y = diag(el.eigenvalues().cwiseMax(0.0).cwiseSqrt()) * el.eigenvectors().adjoint();

  Eigen::JacobiSVD<Mat> svd(y * x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < sv.size() && sv(keep) > cutoff * sv(0)) ++keep;
  const Mat v = svd.matrixV().leftCols(keep);
  const RVec lam = sv.head(keep) / sv.head(keep).norm();

  std::vector<Mat> mr(m.size());
  double eta = 0.0;
  for (size_t s = 0; s < m.size(); ++s) {
    mr[s] = v.adjoint() * xinv * m[s] * x * v;
    eta += (mr[s] * mr[s].adjoint()).trace().real();
  }
  eta /= static_cast<double>(keep);
  for (auto& t : mr) t /= std::sqrt(eta);

  std::vector<Mat> weighted(mr.size());
  for (size_t s = 0; s < mr.size(); ++s) weighted[s] = diag(lam) * mr[s];
  auto sp = split_two_site(mr, weighted, d, st.chi, cutoff);
  st.site[0] = std::move(sp.left);
  st.site[1] = std::move(sp.right);
  st.lambda[0] = std::move(sp.s);
  st.lambda[1] = lam;
}

double canonical_residual(const ItebdState& st) {
  double worst = 0.0;
  for (int k = 0; k < 2; ++k) {
    const auto& b = st.site[k];
    Mat right = Mat::Zero(b[0].rows(), b[0].rows());
    Mat left = Mat::Zero(b[0].cols(), b[0].cols());
    const Mat lin = diag(st.lambda[1 - k].cwiseAbs2());
    for (const auto& t : b) {
      right += t * t.adjoint();
      left += t.adjoint() * lin * t;
    }
    worst = std::max(worst, max_abs(right - Mat::Identity(right.rows(), right.cols())));
    worst = std::max(worst, max_abs(left - diag(st.lambda[k].cwiseAbs2())));
  }
  for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(st.lambda[k].squaredNorm() - 1.0));
  return worst;
}

ItebdState random_state(int d, int chi, std::uint64_t seed) {
  if (d < 1 || chi < 1) throw Error(ErrorCode::InvalidInput, "d and chi must be positive");
  CounterRng rng(seed, 0x69544542);
  ItebdState st;
  st.chi = chi;
  for (int k = 0; k < 2; ++k) {
    for (int s = 0; s < d; ++s) {
      Mat t(chi, chi);
      for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = rng.complex_normal();
      st.site[k].push_back(t);
    }
    st.lambda[k] = RVec::Constant(chi, 1.0 / std::sqrt(double(chi)));
  }
  canonicalize(st);
  return st;
}

ItebdState from_uniform_mps(const std::vector<Mat>& a, int chi_cap) {
  if (a.empty()) throw Error(ErrorCode::InvalidInput, "empty MPS");
  ItebdState st;
  st.chi = chi_cap > 0 ? chi_cap : static_cast<int>(a[0].rows());
  st.site[0] = a;
  st.site[1] = a;
  st.lambda[0] = RVec::Constant(a[0].rows(), 1.0 / std::sqrt(double(a[0].rows())));
  st.lambda[1] = st.lambda[0];
  canonicalize(st);
  return st;
}

ItebdState itebd_ground_state(const TwoSiteOperator& h, const ItebdOptions& opt) {
  const auto dd = h.matrix.rows();
  const int d = static_cast<int>(std::lround(std::sqrt(double(dd))));
  if (h.matrix.cols() != dd || d * d != dd) throw Error(ErrorCode::DimensionMismatch, "bond operator must be d^2 x d^2");
  if (h.hermiticity_defect() > 1e-12) throw Error(ErrorCode::InvalidInput, "bond operator is not Hermitian");
  if (opt.chi < 2) throw Error(ErrorCode::InvalidInput, "chi must be >= 2");
  if (opt.schedule.empty()) throw Error(ErrorCode::InvalidInput, "empty schedule");
  for (size_t i = 0; i < opt.schedule.size(); ++i) {
    const auto& st = opt.schedule[i];
    if (!(st.dt > 0.0) || st.steps < 1) throw Error(ErrorCode::InvalidInput, "schedule needs dt > 0 and steps >= 1");
    if (i > 0 && st.dt >= opt.schedule[i - 1].dt) throw Error(ErrorCode::InvalidInput, "dt values must decrease");
  }

  ItebdState st = random_state(d, opt.chi, opt.seed);
  double energy = sweep_energy(st, h.matrix);
  double change = 0.0;
  for (size_t si = 0; si < opt.schedule.size(); ++si) {
    const auto& stage = opt.schedule[si];
    const Mat half = hermitian_exp(h.matrix, stage.dt / 2);
    const Mat full = hermitian_exp(h.matrix, stage.dt);
    ConvergenceEntry entry{stage.dt, 0, energy, 0.0};
    for (int step = 0; step < stage.steps; ++step) {
      bond_update(st, 0, half, opt.truncation);
      bond_update(st, 1, full, opt.truncation);
      bond_update(st, 0, half, opt.truncation);
      const double e = sweep_energy(st, h.matrix);
      change = e - energy;
      energy = e;
      if (opt.on_sweep) opt.on_sweep(static_cast<int>(si), step, e);
      entry.steps_taken = step + 1;
      if (step + 1 >= opt.min_steps && std::abs(change) < opt.stage_tolerance) break;
    }
    entry.energy = energy;
    entry.last_change = change;
    st.log.push_back(entry);
  }
  st.converged = std::abs(change) < opt.stage_tolerance;
  if (std::abs(change) > opt.drift_tolerance)
    throw Error(ErrorCode::NoConvergence, "energy still drifting by " + std::to_string(change) + " per sweep");
  canonicalize(st);
  return st;
}

double energy_density(const ItebdState& st, const TwoSiteOperator& h) {
  const double res = canonical_residual(st);
  if (res > 1e-8) throw Error(ErrorCode::NonCanonical, "canonical residual " + std::to_string(res));
  const auto d = static_cast<Eigen::Index>(st.phys_dim());
  if (h.matrix.rows() != d * d) throw Error(ErrorCode::DimensionMismatch, "bond operator does not match the state");
  return sweep_energy(st, h.matrix);
}

Fidelity fidelity_per_site(const ItebdState& st, const std::vector<Mat>& reference) {
  if (reference.size() != st.site[0].size()) throw Error(ErrorCode::DimensionMismatch, "physical dimensions differ");
  const auto cell = two_site(st.site[0], st.site[1]);
  const auto ref = two_site(reference, reference);
  const double eta_state = std::abs(dominant_eigen(transfer(cell, cell)).value);
  const double eta_ref = std::abs(dominant_eigen(transfer(ref, ref)).value);
  const auto mixed = dominant_eigen(transfer(cell, ref));
  const double scale = std::sqrt(eta_state * eta_ref);
  Fidelity f;
  f.cell_eigenvalue = mixed.value / scale;
  f.value = std::min(1.0, std::abs(f.cell_eigenvalue));
  f.gap = (std::abs(mixed.value) - mixed.second_modulus) / scale;
  f.degenerate = f.gap < 1e-10;
  return f;
}

Fidelity fidelity_per_site(const ItebdState& st, const SymmetricMps& reference) {
  if (!reference.translation_invariant()) throw Error(ErrorCode::InvalidInput, "reference must be translation invariant");
  return fidelity_per_site(st, reference.tensors(0));
}

}  // namespace sptkit
