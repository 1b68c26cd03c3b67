#include "sptkit/cg.hpp"

#include <cmath>

#include "sptkit/errors.hpp"
#include "sptkit/rng.hpp"

namespace sptkit {

Mat average_intertwiner(std::span<const Mat> dprime, std::span<const Mat> d, const Mat& seed) {
  if (dprime.size() != d.size() || dprime.empty())
    throw Error(ErrorCode::DimensionMismatch, "representations over different groups");
  if (seed.rows() != dprime[0].rows() || seed.cols() != d[0].rows())
    throw Error(ErrorCode::DimensionMismatch, "seed shape does not match the representations");
  Mat acc = Mat::Zero(seed.rows(), seed.cols());
  for (size_t r = 0; r < d.size(); ++r) acc.noalias() += dprime[r] * seed * d[r].adjoint();
  return acc;
}

void fix_phase(Mat& m, double tie_tol) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
  if (best == 0.0) return;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > best - tie_tol) {
        m *= std::conj(m(i, j)) / std::abs(m(i, j));
        return;
      }
}

std::vector<CgTensor> compute_cg(const GroupTable& table, const Irrep& i, const Irrep& alpha,
                                 std::span<const Irrep> irreps, std::uint64_t rng_seed) {
  const auto mults = fusion_multiplicities(table, i, alpha, irreps);
  const auto dprime = product_rep(i, alpha);
  const double order = table.order();
  std::vector<CgTensor> out;
  for (size_t b = 0; b < irreps.size(); ++b) {
    const Irrep& beta = irreps[b];
    auto it = mults.find(beta.label);
    if (it == mults.end()) continue;
    if (it->second > 2)
      throw Error(ErrorCode::MultiplicityTooHigh, i.label + " x " + alpha.label + " -> " + beta.label);
    std::vector<Mat> copies;
    for (int n = 0; n < it->second; ++n) {
      Mat block;
      bool found = false;
      for (int attempt = 0; attempt <= 5 && !found; ++attempt) {
        CounterRng rng(rng_seed, (static_cast<std::uint64_t>(b) << 16) | (static_cast<std::uint64_t>(n) << 8) |
                                     static_cast<std::uint64_t>(attempt));
        const Mat seed = rng.unit_disk_matrix(i.dim * alpha.dim, beta.dim);
        block = average_intertwiner(dprime, beta.matrices, seed) / order;
        for (const auto& prev : copies) block -= frob_inner(prev, block) / frob_inner(prev, prev) * prev;
        found = max_abs(block) >= 1e-8;
      }
      if (!found)
        throw Error(ErrorCode::DegenerateSeed, i.label + " x " + alpha.label + " -> " + beta.label);
      block /= std::sqrt(frob_inner(block, block).real() / beta.dim);
      fix_phase(block);
      copies.push_back(block);
    }
    for (int n = 0; n < static_cast<int>(copies.size()); ++n) {
      CgTensor t{i.label, alpha.label, beta.label, n + 1, copies[n]};
      const auto res = verify_cg(table, t, i, alpha, beta);
      if (!res.ok())
        throw Error(ErrorCode::CheckFailed, "CG block failed verification for " + beta.label);
      out.push_back(std::move(t));
    }
  }
  return out;
}

CgResidual verify_cg(const GroupTable& table, const CgTensor& cg, const Irrep& i, const Irrep& alpha,
                     const Irrep& beta) {
  if (cg.i_label != i.label || cg.alpha_label != alpha.label || cg.beta_label != beta.label)
    throw Error(ErrorCode::InvalidInput, "CG labels do not match the supplied irreps");
  CgResidual r;
  for (int g = 0; g < table.order(); ++g) {
    const Mat lhs = kron(i.matrices[g], alpha.matrices[g]) * cg.coeffs;
    r.intertwining = std::max(r.intertwining, max_abs(lhs - cg.coeffs * beta.matrices[g]));
  }
  r.orthonormality =
      max_abs(cg.coeffs.adjoint() * cg.coeffs - Mat::Identity(cg.coeffs.cols(), cg.coeffs.cols()));
  return r;
}

Mat stack_cg(std::span<const CgTensor> tensors) {
  if (tensors.empty()) return {};
  Eigen::Index cols = 0;
  for (const auto& t : tensors) cols += t.coeffs.cols();
  Mat u(tensors[0].coeffs.rows(), cols);
  Eigen::Index c = 0;
  for (const auto& t : tensors) {
    u.middleCols(c, t.coeffs.cols()) = t.coeffs;
    c += t.coeffs.cols();
  }
  return u;
}

}  // namespace sptkit
