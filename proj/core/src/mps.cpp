#include "sptkit/mps.hpp"

#include <algorithm>
#include <set>

#include "sptkit/errors.hpp"
#include "sptkit/rng.hpp"

namespace sptkit {
namespace {

const Irrep& trivial_irrep(const GroupData& group) {
  for (const auto& ir : group.irreps) {
    if (ir.dim != 1) continue;
    bool all_one = true;
    for (const auto& m : ir.matrices) all_one = all_one && std::abs(m(0, 0) - cplx(1.0)) < 1e-12;
    if (all_one) return ir;
  }
  throw Error(ErrorCode::InvalidInput, group.name + ": no trivial irrep listed");
}

Irrep conjugate(const Irrep& ir) {
  Irrep out = ir;
  for (auto& m : out.matrices) m = m.conjugate().eval();
  out.label = ir.label + "^*";
  return out;
}

struct Layout {
  std::vector<PhysicalSector> phys;
  std::vector<VirtualSector> bond;
  std::vector<Irrep> rephased;  // physical irreps times chi^*
  std::string chi_label;
};

Layout make_layout(const GroupData& group, const MpsBuildSpec& spec) {
  if (spec.omega != CohomologyClass::Nontrivial)
    throw Error(ErrorCode::InvalidInput, "omega must be the non-trivial class 'a'");
  if (spec.phys_irreps.empty() || spec.virtual_spec.empty())
    throw Error(ErrorCode::InvalidInput, "physical and virtual irreps are required");
  Layout lay;
  const Irrep& chi = spec.chi.empty() ? trivial_irrep(group) : group.irrep(spec.chi);
  if (chi.dim != 1) throw Error(ErrorCode::InvalidInput, "chi must be a 1D irrep");
  lay.chi_label = chi.label;
  const Irrep chi_conj = conjugate(chi);
  int off = 0;
  for (const auto& label : spec.phys_irreps) {
    const Irrep& p = group.irrep(label);
    lay.phys.push_back({label, p.dim, off});
    off += p.dim;
    lay.rephased.push_back(chi.label == trivial_irrep(group).label ? p : rephase(p, chi_conj));
  }
  off = 0;
  std::set<std::string> seen;
  for (const auto& [label, deg] : spec.virtual_spec) {
    const Irrep& a = group.irrep(label);
    if (a.cls != spec.omega)
      throw Error(ErrorCode::ClassMismatch, label + " is not in class " + std::string(class_tag(spec.omega)));
    if (deg < 1) throw Error(ErrorCode::InvalidInput, label + ": degeneracy must be positive");
    if (!seen.insert(label).second) throw Error(ErrorCode::InvalidInput, label + " listed twice");
    lay.bond.push_back({label, deg, a.dim, off});
    off += deg * a.dim;
  }
  return lay;
}

int sector_of(const std::vector<VirtualSector>& bond, const std::string& label) {
  for (size_t k = 0; k < bond.size(); ++k)
    if (bond[k].label == label) return static_cast<int>(k);
  return -1;
}

std::vector<CgTensor> cg_for(const GroupData& group, const Irrep& i, const Irrep& alpha, std::uint64_t seed) {
  try {
    return compute_cg(group.table, i, alpha, group.irreps, seed);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MultiplicityTooHigh) throw;
    throw Error(ErrorCode::MissingCG, i.label + " x " + alpha.label + ": " + e.what());
  }
}

// A^{(p,m)} block (alpha, beta) += B (x) C_n[m]
void assemble(const Layout& lay, const std::vector<std::vector<CgTensor>>& cg_by_pa, const BlockMap& blocks,
              std::vector<Mat>& tensors) {
  int dim = 0;
  for (const auto& s : lay.bond) dim += s.degeneracy * s.irrep_dim;
  int d = 0;
  for (const auto& p : lay.phys) d += p.dim;
  tensors.assign(d, Mat::Zero(dim, dim));
  const auto nb = lay.bond.size();
  for (size_t pi = 0; pi < lay.phys.size(); ++pi)
    for (size_t a = 0; a < nb; ++a)
      for (const auto& cg : cg_by_pa[pi * nb + a]) {
        const int b = sector_of(lay.bond, cg.beta_label);
        if (b < 0) continue;
        const auto& sa = lay.bond[a];
        const auto& sb = lay.bond[b];
        const Mat& bm = blocks.at({static_cast<int>(pi), static_cast<int>(a), b, cg.copy});
        for (int m = 0; m < lay.phys[pi].dim; ++m) {
          const Mat cm = cg.coeffs.middleRows(m * sa.irrep_dim, sa.irrep_dim);
          tensors[lay.phys[pi].offset + m].block(sa.offset, sb.offset, sa.degeneracy * sa.irrep_dim,
                                                 sb.degeneracy * sb.irrep_dim) += kron(bm, cm);
        }
      }
}

std::vector<std::vector<CgTensor>> all_cgs(const GroupData& group, const Layout& lay, std::uint64_t seed) {
  std::vector<std::vector<CgTensor>> out;
  for (const auto& ip : lay.rephased)
    for (const auto& s : lay.bond) out.push_back(cg_for(group, ip, group.irrep(s.label), seed));
  return out;
}

}  // namespace

Mat ProtectedSplit::to_split() const {
  const auto n = static_cast<Eigen::Index>(split_index.size());
  Mat s = Mat::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v) s(split_index[v], v) = 1.0;
  return s;
}

int SymmetricMps::phys_dim() const { return sites.empty() ? 0 : static_cast<int>(sites[0].size()); }

int SymmetricMps::bond_dim() const {
  return sites.empty() || sites[0].empty() ? 0 : static_cast<int>(sites[0][0].rows());
}

std::vector<std::pair<BlockKey, std::pair<int, int>>> required_blocks(const GroupData& group,
                                                                      const MpsBuildSpec& spec) {
  const Layout lay = make_layout(group, spec);
  std::vector<std::pair<BlockKey, std::pair<int, int>>> out;
  for (size_t pi = 0; pi < lay.phys.size(); ++pi)
    for (size_t a = 0; a < lay.bond.size(); ++a) {
      std::map<std::string, int> mult;
      try {
        mult = fusion_multiplicities(group.table, lay.rephased[pi], group.irrep(lay.bond[a].label), group.irreps);
      } catch (const Error& e) {
        throw Error(ErrorCode::MissingCG, e.what());
      }
      for (size_t b = 0; b < lay.bond.size(); ++b) {
        auto it = mult.find(lay.bond[b].label);
        if (it == mult.end()) continue;
        if (it->second > 2) throw Error(ErrorCode::MultiplicityTooHigh, lay.bond[b].label);
        for (int n = 1; n <= it->second; ++n)
          out.push_back({{static_cast<int>(pi), static_cast<int>(a), static_cast<int>(b), n},
                         {lay.bond[a].degeneracy, lay.bond[b].degeneracy}});
      }
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

SymmetricMps build_mps(const GroupData& group, const MpsBuildSpec& spec) {
  if (spec.sites < 1) throw Error(ErrorCode::InvalidInput, "sites must be >= 1");
  const Layout lay = make_layout(group, spec);
  const auto keys = required_blocks(group, spec);
  const auto cgs = all_cgs(group, lay, spec.cg_seed);

  SymmetricMps mps;
  mps.group = group.name;
  mps.phys = lay.phys;
  mps.bond = lay.bond;
  mps.chi_label = lay.chi_label;
  mps.basis_note = spec.basis_note;
  mps.cg_seed = spec.cg_seed;
  for (const auto& list : cgs)
    for (const auto& cg : list)
      if (sector_of(lay.bond, cg.beta_label) >= 0) mps.cgs.push_back(cg);

  for (int s = 0; s < spec.sites; ++s) {
    BlockMap blocks;
    if (spec.blocks) {
      for (const auto& [key, shape] : keys) {
        auto it = spec.blocks->find(key);
        if (it == spec.blocks->end())
          throw Error(ErrorCode::InvalidInput, "missing B block for " + lay.phys[key.phys].label + ", " +
                                                   lay.bond[key.alpha].label + " -> " + lay.bond[key.beta].label);
        if (it->second.rows() != shape.first || it->second.cols() != shape.second)
          throw Error(ErrorCode::DimensionMismatch, "B block has the wrong shape");
        blocks.emplace(key, it->second);
      }
    } else {
      CounterRng rng(spec.random_seed, static_cast<std::uint64_t>(s));
      for (const auto& [key, shape] : keys) blocks.emplace(key, rng.unit_disk_matrix(shape.first, shape.second));
    }
    std::vector<Mat> tensors;
    assemble(lay, cgs, blocks, tensors);
    mps.sites.push_back(std::move(tensors));
    mps.blocks.push_back(std::move(blocks));
  }
  mps.split = detect_protected_split(group, mps.bond);
  return mps;
}

double reconstruction_residual(const GroupData& group, const SymmetricMps& mps) {
  Layout lay;
  lay.phys = mps.phys;
  lay.bond = mps.bond;
  const auto nb = lay.bond.size();
  std::vector<std::vector<CgTensor>> by_pa(lay.phys.size() * nb);
  for (size_t pi = 0; pi < lay.phys.size(); ++pi)
    for (size_t a = 0; a < nb; ++a)
      for (const auto& cg : mps.cgs)
        if (cg.alpha_label == lay.bond[a].label &&
            (cg.i_label == lay.phys[pi].label || cg.i_label.rfind(lay.phys[pi].label + "*", 0) == 0))
          by_pa[pi * nb + a].push_back(cg);
  (void)group;
  double worst = 0.0;
  for (size_t s = 0; s < mps.sites.size(); ++s) {
    std::vector<Mat> rebuilt;
    assemble(lay, by_pa, mps.blocks[s], rebuilt);
    for (size_t i = 0; i < rebuilt.size(); ++i) worst = std::max(worst, max_abs(rebuilt[i] - mps.sites[s][i]));
  }
  return worst;
}

SymmetricMps raw_mps(std::vector<Mat> tensors, std::string basis_note) {
  if (tensors.empty()) throw Error(ErrorCode::InvalidInput, "no tensors");
  const auto dim = tensors[0].rows();
  for (const auto& t : tensors)
    if (t.rows() != dim || t.cols() != dim) throw Error(ErrorCode::DimensionMismatch, "tensors must be DxD");
  SymmetricMps mps;
  mps.group = "none";
  mps.phys = {{"raw", static_cast<int>(tensors.size()), 0}};
  mps.bond = {{"raw", static_cast<int>(dim), 1, 0}};
  mps.basis_note = std::move(basis_note);
  mps.sites.push_back(std::move(tensors));
  mps.blocks.emplace_back();
  return mps;
}

SymmetricMps aklt_mps() {
  const GroupData group = builtin_group("Z2xZ2");
  MpsBuildSpec spec;
  spec.group = group.name;
  spec.phys_irreps = {"1_(1,0)", "1_(1,1)", "1_(0,1)"};
  spec.virtual_spec = {{"2~", 1}};
  spec.basis_note = "{|x>,|y>,|z>}: |x>=(|-1>-|1>)/sqrt2, |y>=i(|-1>+|1>)/sqrt2, |z>=|0>";
  BlockMap ones;
  for (const auto& [key, shape] : required_blocks(group, spec)) ones.emplace(key, Mat::Ones(1, 1));
  spec.blocks = ones;
  const SymmetricMps unit = build_mps(group, spec);
  // rescale each B so that A^i is exactly sigma_i
  BlockMap exact;
  for (const auto& [key, b] : ones) {
    const Mat& a = unit.sites[0][key.phys];
    exact.emplace(key, Mat::Constant(1, 1, frob_inner(a, pauli(key.phys + 1)) / 2.0));
  }
  spec.blocks = exact;
  return build_mps(group, spec);
}

SymmetricMps cluster_mps() {
  Mat a0(2, 2), a1(2, 2);
  a0 << 1, 0, 1, 0;
  a1 << 0, 1, 0, -1;
  auto mps = raw_mps({a0, a1}, "{|0>,|1>} computational basis");
  mps.split = ProtectedSplit{"qubit", 1, 2, {0, 1}};
  return mps;
}

std::optional<ProtectedSplit> detect_protected_split(const GroupData& group, const std::vector<VirtualSector>& bond,
                                                     double tol) {
  for (const auto& p : group.irreps) {
    if (p.dim != 2 || p.cls != CohomologyClass::Nontrivial) continue;
    ProtectedSplit split;
    split.protected_label = p.label;
    int junk_off = 0;
    bool ok = true;
    for (const auto& s : bond) {
      const Irrep& a = group.irrep(s.label);
      if (a.dim % 2 != 0) { ok = false; break; }
      const Irrep* match = nullptr;
      for (const auto& j : group.irreps) {
        if (j.cls != CohomologyClass::Trivial || j.dim * 2 != a.dim) continue;
        bool same = true;
        for (int g = 0; g < group.table.order() && same; ++g)
          same = max_abs(a.matrices[g] - kron(j.matrices[g], p.matrices[g])) < tol;
        if (same) { match = &j; break; }
      }
      if (!match) { ok = false; break; }
      const int jd = match->dim;
      for (int d = 0; d < s.degeneracy; ++d)
        for (int j = 0; j < jd; ++j)
          for (int q = 0; q < 2; ++q) {
            const int v = s.offset + d * a.dim + j * 2 + q;
            if (static_cast<int>(split.split_index.size()) <= v) split.split_index.resize(v + 1);
            split.split_index[v] = (junk_off + d * jd + j) * 2 + q;
          }
      junk_off += s.degeneracy * jd;
    }
    if (!ok) continue;
    split.junk_dim = junk_off;
    return split;
  }
  return std::nullopt;
}

cplx evaluate_amplitude(const SymmetricMps& mps, const std::vector<int>& config, const Boundary& boundary) {
  if (config.empty()) throw Error(ErrorCode::LengthMismatch, "empty configuration");
  if (!mps.translation_invariant() && config.size() != mps.sites.size())
    throw Error(ErrorCode::LengthMismatch, "configuration length differs from the chain length");
  const int dim = mps.bond_dim();
  Mat prod = Mat::Identity(dim, dim);
  for (size_t k = 0; k < config.size(); ++k) {
    if (config[k] < 0 || config[k] >= mps.phys_dim())
      throw Error(ErrorCode::InvalidInput, "physical index out of range");
    prod = prod * mps.tensors(static_cast<int>(k))[config[k]];
  }
  if (std::holds_alternative<Periodic>(boundary)) return prod.trace();
  const auto& ob = std::get<OpenBoundary>(boundary);
  if (ob.left.size() != dim || ob.right.size() != dim)
    throw Error(ErrorCode::DimensionMismatch, "boundary vector size");
  return ob.left.dot(prod * ob.right);
}

namespace {
Mat realign(const Mat& m, int junk_dim, int p) {
  Mat r(junk_dim * junk_dim, p * p);
  for (int j1 = 0; j1 < junk_dim; ++j1)
    for (int j2 = 0; j2 < junk_dim; ++j2)
      for (int s1 = 0; s1 < p; ++s1)
        for (int s2 = 0; s2 < p; ++s2) r(j1 * junk_dim + j2, s1 * p + s2) = m(j1 * p + s1, j2 * p + s2);
  return r;
}
}  // namespace

RVec operator_schmidt_values(const Mat& m, int junk_dim, int protected_dim) {
  if (m.rows() != junk_dim * protected_dim) throw Error(ErrorCode::DimensionMismatch, "operator-Schmidt split");
  Eigen::JacobiSVD<Mat> svd(realign(m, junk_dim, protected_dim));
  return svd.singularValues();
}

int operator_schmidt_rank(const Mat& m, int junk_dim, int protected_dim, double rel_tol) {
  const RVec s = operator_schmidt_values(m, junk_dim, protected_dim);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * s(0)) ++r;
  return r;
}

SplitFactor split_factor(const Mat& m_split, int junk_dim, int p) {
  Eigen::JacobiSVD<Mat> svd(realign(m_split, junk_dim, p), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double sigma = svd.singularValues()(0);
  SplitFactor f;
  f.junk.resize(junk_dim, junk_dim);
  f.protected_.resize(p, p);
  for (int j1 = 0; j1 < junk_dim; ++j1)
    for (int j2 = 0; j2 < junk_dim; ++j2) f.junk(j1, j2) = svd.matrixU()(j1 * junk_dim + j2, 0);
  for (int s1 = 0; s1 < p; ++s1)
    for (int s2 = 0; s2 < p; ++s2) f.protected_(s1, s2) = std::conj(svd.matrixV()(s1 * p + s2, 0));
  const double qn = std::sqrt(static_cast<double>(p));
  const Mat before = f.protected_ * qn;
  f.protected_ = before;
  fix_phase(f.protected_);
  const cplx phase = frob_inner(before, f.protected_) / frob_inner(before, before);
  f.junk *= sigma / qn / phase;
  f.residual = max_abs(m_split - kron(f.junk, f.protected_));
  return f;
}

Factorization protected_factorization(const SymmetricMps& mps, int site) {
  if (!mps.split) throw Error(ErrorCode::InvalidInput, "bond space has no junk (x) protected split");
  const auto& sp = *mps.split;
  const Mat s = sp.to_split();
  Factorization f;
  for (const auto& a : mps.tensors(site)) {
    auto sf = split_factor(s * a * s.transpose(), sp.junk_dim, sp.protected_dim);
    f.residual = std::max(f.residual, sf.residual);
    f.junk.push_back(std::move(sf.junk));
    f.protected_.push_back(std::move(sf.protected_));
  }
  return f;
}

}  // namespace sptkit
