#include <cmath>
#include <functional>
#include <numbers>

#include "sptkit/errors.hpp"
#include "sptkit/mps.hpp"
#include "sptkit/rng.hpp"

namespace sptkit {
namespace {

Mat block_diag(const std::vector<Mat>& parts) {
  Eigen::Index n = 0;
  for (const auto& p : parts) n += p.rows();
  Mat out = Mat::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    out.block(off, off, p.rows(), p.cols()) = p;
    off += p.rows();
  }
  return out;
}

Mat physical_matrix(const GroupData& group, const SymmetricMps& mps, ElementId g) {
  std::vector<Mat> parts;
  for (const auto& p : mps.phys) parts.push_back(group.irrep(p.label).matrices[g]);
  return block_diag(parts);
}

Mat virtual_matrix(const GroupData& group, const std::vector<VirtualSector>& bond, ElementId g) {
  std::vector<Mat> parts;
  for (const auto& s : bond)
    parts.push_back(kron(Mat::Identity(s.degeneracy, s.degeneracy), group.irrep(s.label).matrices[g]));
  return block_diag(parts);
}

// vec(sum_i L^i X R^{i dagger}) = (sum_i conj(R^i) (x) L^i) vec(X)
Mat superoperator(const std::vector<Mat>& left, const std::vector<Mat>& right) {
  const auto d = left[0].rows();
  Mat e = Mat::Zero(d * d, d * d);
  for (size_t i = 0; i < left.size(); ++i) e += kron(right[i].conjugate(), left[i]);
  return e;
}

Mat normalize_to_unit_scale(Mat x) {
  const double s = std::sqrt((x.adjoint() * x).trace().real() / static_cast<double>(x.rows()));
  if (s > 0) x /= s;
  fix_phase(x);
  return x;
}

std::vector<Mat> transposed(const SymmetricMps& mps, const Mat& w) {
  const auto& a = mps.tensors();
  std::vector<Mat> out(a.size(), Mat::Zero(a[0].rows(), a[0].cols()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) out[i] += w(i, j) * a[j].transpose();
  return out;
}

std::vector<Mat> conjugated(const SymmetricMps& mps, const Mat& v) {
  const auto& a = mps.tensors();
  std::vector<Mat> out(a.size(), Mat::Zero(a[0].rows(), a[0].cols()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) out[i] += v(i, j) * a[j].conjugate();
  return out;
}

int sign_of_symmetry(const Mat& n, double tol) {
  if (max_abs(n.transpose() - n) < tol * std::max(1.0, max_abs(n))) return 1;
  if (max_abs(n.transpose() + n) < tol * std::max(1.0, max_abs(n))) return -1;
  return 0;
}

}  // namespace

std::vector<Mat> physical_rep(const GroupData& group, const SymmetricMps& mps) {
  std::vector<Mat> out;
  for (int g = 0; g < group.table.order(); ++g) out.push_back(physical_matrix(group, mps, g));
  return out;
}

std::vector<Mat> virtual_rep(const GroupData& group, const std::vector<VirtualSector>& bond) {
  std::vector<Mat> out;
  for (int g = 0; g < group.table.order(); ++g) out.push_back(virtual_matrix(group, bond, g));
  return out;
}

SymmetryAction symmetry_action(const GroupData& group, const SymmetricMps& mps) {
  SymmetryAction sym;
  for (ElementId g : group.table.generators) {
    sym.u.push_back(physical_matrix(group, mps, g));
    sym.v.push_back(virtual_matrix(group, mps.bond, g));
    sym.chi.push_back(mps.chi_label.empty() ? cplx(1.0) : group.irrep(mps.chi_label).matrices[g](0, 0));
  }
  return sym;
}

double check_onsite_invariance(const SymmetricMps& mps, const SymmetryAction& sym, int site) {
  const auto& a = mps.tensors(site);
  double worst = 0.0;
  for (size_t g = 0; g < sym.u.size(); ++g) {
    if (sym.u[g].rows() != static_cast<Eigen::Index>(a.size()) || sym.v[g].rows() != a[0].rows())
      throw Error(ErrorCode::DimensionMismatch, "symmetry action does not match the tensors");
    const Mat vinv = sym.v[g].inverse();
    for (size_t i = 0; i < a.size(); ++i) {
      Mat lhs = Mat::Zero(a[0].rows(), a[0].cols());
      for (size_t j = 0; j < a.size(); ++j) lhs += sym.u[g](i, j) * a[j];
      worst = std::max(worst, max_abs(lhs - sym.chi[g] * vinv * a[i] * sym.v[g]));
    }
  }
  return worst;
}

TransferSpectrum transfer_spectrum(const std::vector<Mat>& a) {
  const auto d = a[0].rows();
  const auto dom = dominant_eigen(superoperator(a, a));
  TransferSpectrum ts;
  ts.leading = dom.value;
  ts.gap = std::abs(dom.value) > 0 ? 1.0 - dom.second_modulus / std::abs(dom.value) : 0.0;
  Mat r = unvectorize(dom.vector, d, d);
  // fixed point is Hermitian up to phase
  const cplx tr = r.trace();
  if (std::abs(tr) > 0) r *= std::abs(tr) / tr;
  ts.fixed_point = (r + r.adjoint()) / 2.0;
  return ts;
}

IntertwinerSolution solve_intertwiner(const std::vector<Mat>& a, const std::vector<Mat>& atilde, double gap_tol) {
  const auto d = a[0].rows();
  const auto ts = transfer_spectrum(a);
  if (d > 1 && ts.gap < gap_tol)
    throw Error(ErrorCode::NonInjectiveMPS, "transfer-matrix gap " + std::to_string(ts.gap));
  const auto mixed = dominant_eigen(superoperator(atilde, a));
  const Mat x = unvectorize(mixed.vector, d, d);
  Eigen::FullPivLU<Mat> lu(x);
  if (!lu.isInvertible()) throw Error(ErrorCode::NoSolution, "mixed transfer fixed point is singular");
  IntertwinerSolution sol;
  sol.x = normalize_to_unit_scale(ts.fixed_point * lu.inverse());
  sol.scalar = mixed.value / ts.leading;
  const Mat xinv = sol.x.inverse();
  for (size_t i = 0; i < a.size(); ++i)
    sol.residual = std::max(sol.residual, max_abs(atilde[i] - sol.scalar * xinv * a[i] * sol.x));
  return sol;
}

ExtractedRep extract_virtual_rep(const SymmetricMps& mps, const std::vector<Mat>& u_generators, double tol) {
  const auto& a = mps.tensors();
  ExtractedRep out;
  for (const auto& u : u_generators) {
    if (u.rows() != static_cast<Eigen::Index>(a.size()))
      throw Error(ErrorCode::DimensionMismatch, "physical action size");
    std::vector<Mat> at(a.size(), Mat::Zero(a[0].rows(), a[0].cols()));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < a.size(); ++j) at[i] += u(i, j) * a[j];
    const auto sol = solve_intertwiner(a, at);
    if (sol.residual > tol)
      throw Error(ErrorCode::NoSolution, "intertwiner residual " + std::to_string(sol.residual));
    out.v.push_back(sol.x);
    out.chi.push_back(sol.scalar);
    out.residual = std::max(out.residual, sol.residual);
  }
  return out;
}

std::vector<std::map<std::string, int>> candidate_virtual_decompositions(const GroupData& group,
                                                                         const std::vector<Mat>& v_generators,
                                                                         double tol) {
  const auto& t = group.table;
  const int ngen = static_cast<int>(t.generators.size());
  if (static_cast<int>(v_generators.size()) != ngen) throw Error(ErrorCode::DimensionMismatch, "generator count");
  const auto dim = v_generators[0].rows();
  // per generator: order k in the cover, V^k = lambda 1, candidate scalars c with (cV)^k = 1
  std::vector<std::vector<cplx>> options(ngen);
  for (int k = 0; k < ngen; ++k) {
    int order = 1;
    ElementId g = t.generators[k];
    while (g != t.identity) {
      g = t.mult[g][t.generators[k]];
      ++order;
    }
    Mat p = Mat::Identity(dim, dim);
    for (int r = 0; r < order; ++r) p = p * v_generators[k];
    const cplx lambda = p(0, 0);
    if (max_abs(p - lambda * Mat::Identity(dim, dim)) > tol) return {};
    const cplx root = std::pow(lambda, -1.0 / order);
    for (int r = 0; r < order; ++r)
      options[k].push_back(root * std::polar(1.0, 2.0 * std::numbers::pi * r / order));
  }
  std::vector<std::map<std::string, int>> out;
  std::vector<int> pick(ngen, 0);
  std::function<void(int)> rec = [&](int k) {
    if (k == ngen) {
      std::vector<Mat> gens;
      for (int q = 0; q < ngen; ++q) gens.push_back(options[q][pick[q]] * v_generators[q]);
      std::vector<Mat> all;
      for (const auto& w : t.words) {
        Mat m = Mat::Identity(dim, dim);
        for (int q : w) m = m * gens[q];
        all.push_back(std::move(m));
      }
      for (int x = 0; x < t.order(); ++x)
        for (int y = 0; y < t.order(); ++y)
          if (max_abs(all[x] * all[y] - all[t.mult[x][y]]) > tol) return;
      std::map<std::string, int> dec;
      int covered = 0;
      for (const auto& ir : group.irreps) {
        cplx s = 0;
        for (int g = 0; g < t.order(); ++g) s += all[g].trace() * std::conj(ir.matrices[g].trace());
        s /= static_cast<double>(t.order());
        const int n = static_cast<int>(std::lround(s.real()));
        if (n > 0) {
          dec[ir.label] = n;
          covered += n * ir.dim;
        }
      }
      if (covered == dim && std::find(out.begin(), out.end(), dec) == out.end()) out.push_back(dec);
      return;
    }
    for (size_t r = 0; r < options[k].size(); ++r) {
      pick[k] = static_cast<int>(r);
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

ParityReport check_parity(const SymmetricMps& mps, const Mat& w, const Mat& n, int alpha_p) {
  if (!mps.translation_invariant()) throw Error(ErrorCode::InvalidInput, "parity check needs a uniform chain");
  const auto& a = mps.tensors();
  if (w.rows() != static_cast<Eigen::Index>(a.size()) || n.rows() != a[0].rows())
    throw Error(ErrorCode::DimensionMismatch, "parity data shape");
  ParityReport rep;
  rep.beta_p = sign_of_symmetry(n, 1e-8);
  if (rep.beta_p == 0) throw Error(ErrorCode::NotSymmetricOrAntisymmetric, "N^T != +-N");
  const auto lhs = transposed(mps, w);
  const Mat ninv = n.inverse();
  for (size_t i = 0; i < a.size(); ++i)
    rep.residual = std::max(rep.residual, max_abs(lhs[i] - static_cast<double>(alpha_p) * ninv * a[i] * n));
  return rep;
}

ParitySolution solve_parity(const SymmetricMps& mps, const Mat& w) {
  const auto sol = solve_intertwiner(mps.tensors(), transposed(mps, w));
  ParitySolution out;
  out.n = sol.x;
  out.residual = sol.residual;
  if (std::abs(sol.scalar - 1.0) < 1e-8) out.alpha_p = 1;
  else if (std::abs(sol.scalar + 1.0) < 1e-8) out.alpha_p = -1;
  if (out.alpha_p == 0 || sol.residual > 1e-8)
    throw Error(ErrorCode::NoSolution, "no parity intertwiner (residual " + std::to_string(sol.residual) + ")");
  out.beta_p = sign_of_symmetry(out.n, 1e-8);
  if (out.beta_p == 0) throw Error(ErrorCode::NotSymmetricOrAntisymmetric, "solved N is neither symmetric nor antisymmetric");
  return out;
}

TimeReversalReport check_time_reversal(const SymmetricMps& mps, const Mat& v, const Mat& m) {
  if (!mps.translation_invariant()) throw Error(ErrorCode::InvalidInput, "time-reversal check needs a uniform chain");
  const auto& a = mps.tensors();
  if (v.rows() != static_cast<Eigen::Index>(a.size()) || m.rows() != a[0].rows())
    throw Error(ErrorCode::DimensionMismatch, "time-reversal data shape");
  const Mat mm = m * m.conjugate();
  const cplx lam = mm(0, 0);
  TimeReversalReport rep;
  const Mat id = Mat::Identity(m.rows(), m.cols());
  if (max_abs(mm - std::abs(lam) * id) < 1e-8 * std::abs(lam)) rep.beta_t = 1;
  else if (max_abs(mm + std::abs(lam) * id) < 1e-8 * std::abs(lam)) rep.beta_t = -1;
  else throw Error(ErrorCode::NotSymmetricOrAntisymmetric, "M M^* != +-1");
  const auto lhs = conjugated(mps, v);
  const Mat minv = m.inverse();
  for (size_t i = 0; i < a.size(); ++i) rep.residual = std::max(rep.residual, max_abs(lhs[i] - minv * a[i] * m));
  return rep;
}

TimeReversalSolution solve_time_reversal(const SymmetricMps& mps, const Mat& v) {
  const auto sol = solve_intertwiner(mps.tensors(), conjugated(mps, v));
  if (std::abs(sol.scalar - 1.0) > 1e-8 || sol.residual > 1e-8)
    throw Error(ErrorCode::NoSolution, "no time-reversal intertwiner (scalar " + std::to_string(std::abs(sol.scalar)) +
                                           ", residual " + std::to_string(sol.residual) + ")");
  TimeReversalSolution out;
  out.m = sol.x;
  out.residual = sol.residual;
  out.beta_t = check_time_reversal(mps, v, out.m).beta_t;
  return out;
}

double parity_time_commutation_defect(const Mat& m, const Mat& n) {
  const Mat p = m * n.adjoint() * m * n.adjoint();
  const cplx c = p(0, 0);
  const double scale = std::abs(c) > 0 ? std::abs(c) : 1.0;
  return std::max(max_abs(p - c * Mat::Identity(p.rows(), p.cols())) / scale, 0.0);
}

LGamma compute_lgamma(const GroupData& group, const std::vector<VirtualSector>& bond, const Irrep& gamma, double tol) {
  if (gamma.dim != 1) throw Error(ErrorCode::InvalidInput, "gamma must be a 1D irrep");
  const auto v = virtual_rep(group, bond);
  const auto dim = v[0].rows();
  CounterRng rng(0x4c47616d6d61ULL);
  const Mat seed = rng.unit_disk_matrix(dim, dim);
  Mat acc = Mat::Zero(dim, dim);
  for (size_t g = 0; g < v.size(); ++g) acc += gamma.matrices[g](0, 0) * v[g].conjugate() * seed * v[g].adjoint();
  acc /= static_cast<double>(v.size());
  Eigen::JacobiSVD<Mat> svd(acc, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0 || s(s.size() - 1) < 1e-8 * s(0))
    throw Error(ErrorCode::NoIntertwiner, "gamma V^* is not equivalent to V");
  LGamma out;
  out.l = svd.matrixU() * svd.matrixV().adjoint();  // polar factor
  fix_phase(out.l);
  const Mat linv = out.l.adjoint();
  for (size_t g = 0; g < v.size(); ++g)
    out.residual = std::max(out.residual, max_abs(gamma.matrices[g](0, 0) * v[g].conjugate() - out.l * v[g] * linv));
  if (out.residual > tol) throw Error(ErrorCode::NoIntertwiner, "residual " + std::to_string(out.residual));
  for (const auto& sa : bond) {
    const Irrep& a = group.irrep(sa.label);
    int target = -1;
    for (size_t b = 0; b < bond.size() && target < 0; ++b) {
      const Irrep& ib = group.irrep(bond[b].label);
      bool same = ib.dim == a.dim;
      for (int g = 0; g < group.table.order() && same; ++g)
        same = std::abs(ib.matrices[g].trace() - gamma.matrices[g](0, 0) * std::conj(a.matrices[g].trace())) < 1e-8;
      if (same) target = static_cast<int>(b);
    }
    if (target < 0) throw Error(ErrorCode::NoIntertwiner, "no block matches gamma x " + sa.label + "^*");
    out.permutation.push_back(target);
  }
  return out;
}

BlockFormReport check_block_form(const Mat& x, const Mat& l, const std::vector<VirtualSector>& bond, double tol) {
  if (x.rows() != l.rows() || x.cols() != l.cols()) throw Error(ErrorCode::DimensionMismatch, "X and L shapes");
  const Mat y = x * l;
  BlockFormReport rep;
  for (const auto& a : bond)
    for (const auto& b : bond) {
      const auto blk = y.block(a.offset, b.offset, a.degeneracy * a.irrep_dim, b.degeneracy * b.irrep_dim);
      if (&a != &b) {
        rep.residual = std::max(rep.residual, max_abs(blk));
        continue;
      }
      Mat xa = Mat::Zero(a.degeneracy, a.degeneracy);
      for (int d1 = 0; d1 < a.degeneracy; ++d1)
        for (int d2 = 0; d2 < a.degeneracy; ++d2)
          for (int m = 0; m < a.irrep_dim; ++m) xa(d1, d2) += blk(d1 * a.irrep_dim + m, d2 * a.irrep_dim + m);
      xa /= static_cast<double>(a.irrep_dim);
      rep.residual = std::max(rep.residual, max_abs(blk - kron(xa, Mat::Identity(a.irrep_dim, a.irrep_dim))));
      rep.blocks.push_back(std::move(xa));
    }
  rep.holds = rep.residual < tol;
  return rep;
}

Mat spin1_pi_rotation(int axis) {
  Mat r = -Mat::Identity(3, 3);
  r(axis - 1, axis - 1) = 1.0;
  return r;
}

Mat spin1_parity_action() {
  // w = -1 with alpha(P) = +1; equivalent to w = 1 with alpha(P) = -1
  return -Mat::Identity(3, 3);
}

Mat spin1_time_reversal_action() {
  // exp(-i pi S_y) K in the S_z basis (1, 0, -1), then moved to {x,y,z}
  const double s = 1.0 / std::sqrt(2.0);
  Mat t(3, 3);  // columns |x>, |y>, |z> in the S_z basis
  t << -s, kI * s, 0, 0, 0, 1, s, kI * s, 0;
  Mat rot = Mat::Zero(3, 3);  // exp(-i pi S_y): |m> -> (-1)^(1-m) |-m>
  rot(2, 0) = 1.0;
  rot(1, 1) = -1.0;
  rot(0, 2) = 1.0;
  return t.adjoint() * rot * t.conjugate();
}

}  // namespace sptkit
