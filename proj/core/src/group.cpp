#include "sptkit/group.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "sptkit/errors.hpp"

namespace sptkit {
namespace {

// Entries rounded to 9 decimals; integer rounding folds -0 into 0.
std::string element_key(const Mat& m) {
  std::string key;
  key.reserve(static_cast<size_t>(m.size()) * 16);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto re = static_cast<long long>(std::llround(m(i, j).real() * 1e9));
      const auto im = static_cast<long long>(std::llround(m(i, j).imag() * 1e9));
      key.append(std::to_string(re)).push_back(',');
      key.append(std::to_string(im)).push_back(';');
    }
  return key;
}

cplx leading_ratio(const Mat& num, const Mat& den) {
  for (Eigen::Index j = 0; j < den.cols(); ++j)
    for (Eigen::Index i = 0; i < den.rows(); ++i)
      if (std::abs(den(i, j)) > 1e-6) return num(i, j) / den(i, j);
  return {0.0, 0.0};
}

}  // namespace

ElementId GroupTable::evaluate_word(std::span<const int> word) const {
  ElementId g = identity;
  for (int k : word) {
    if (k < 0 || k >= static_cast<int>(generators.size()))
      throw Error(ErrorCode::InvalidInput, "generator index out of range");
    g = mult[g][generators[k]];
  }
  return g;
}

std::string GroupTable::word_string(ElementId g) const {
  if (words[g].empty()) return "e";
  std::string s;
  for (size_t k = 0; k < words[g].size(); ++k) {
    if (k) s.push_back('.');
    s += generator_names[words[g][k]];
  }
  return s;
}

int GroupTable::generator_index(std::string_view name) const {
  for (size_t k = 0; k < generator_names.size(); ++k)
    if (generator_names[k] == name) return static_cast<int>(k);
  return -1;
}

GroupTable enumerate_group(std::span<const Mat> generators, int max_order,
                           std::vector<std::string> names, double tol) {
  if (generators.empty()) throw Error(ErrorCode::InvalidInput, "no generators");
  const Eigen::Index dim = generators[0].rows();
  for (const auto& g : generators) {
    if (g.rows() != dim || g.cols() != dim)
      throw Error(ErrorCode::DimensionMismatch, "generator matrices must be square and equal size");
    if (unitarity_defect(g) > tol)
      throw Error(ErrorCode::NonUnitaryGenerator, "generator is not unitary");
  }
  if (names.empty())
    for (size_t k = 0; k < generators.size(); ++k) names.push_back("g" + std::to_string(k));
  if (names.size() != generators.size())
    throw Error(ErrorCode::InvalidInput, "generator name count mismatch");

  GroupTable t;
  t.generator_names = std::move(names);
  std::unordered_map<std::string, ElementId> index;
  t.faithful.push_back(Mat::Identity(dim, dim));
  t.words.emplace_back();
  index.emplace(element_key(t.faithful[0]), 0);

  std::deque<ElementId> queue{0};
  while (!queue.empty()) {
    const ElementId cur = queue.front();
    queue.pop_front();
    for (size_t k = 0; k < generators.size(); ++k) {
      Mat next = t.faithful[cur] * generators[k];
      auto key = element_key(next);
      if (index.contains(key)) continue;
      if (static_cast<int>(t.faithful.size()) >= max_order)
        throw Error(ErrorCode::OrderExceeded,
                    "closure exceeds max_order " + std::to_string(max_order));
      const auto id = static_cast<ElementId>(t.faithful.size());
      index.emplace(std::move(key), id);
      t.faithful.push_back(std::move(next));
      auto w = t.words[cur];
      w.push_back(static_cast<int>(k));
      t.words.push_back(std::move(w));
      queue.push_back(id);
    }
  }

  const int n = static_cast<int>(t.faithful.size());
  t.mult.assign(n, std::vector<ElementId>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto it = index.find(element_key(t.faithful[a] * t.faithful[b]));
      if (it == index.end()) throw Error(ErrorCode::InvalidInput, "closure failed to close");
      t.mult[a][b] = it->second;
    }
  t.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t.mult[a][b] == 0) t.inverse[a] = b;
  for (size_t k = 0; k < generators.size(); ++k)
    t.generators.push_back(index.at(element_key(generators[k])));
  return t;
}

std::vector<int> parse_word(const GroupTable& table, std::string_view word) {
  std::vector<int> out;
  if (word.empty() || word == "e") return out;
  size_t start = 0;
  while (start <= word.size()) {
    const size_t dot = word.find('.', start);
    const auto token = word.substr(start, dot == std::string_view::npos ? word.npos : dot - start);
    const int k = table.generator_index(token);
    if (k < 0) throw Error(ErrorCode::ParseError, "unknown generator '" + std::string(token) + "'");
    out.push_back(k);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

std::string_view class_tag(CohomologyClass c) { return c == CohomologyClass::Trivial ? "e" : "a"; }

CohomologyClass parse_class_tag(std::string_view tag) {
  if (tag == "e") return CohomologyClass::Trivial;
  if (tag == "a") return CohomologyClass::Nontrivial;
  throw Error(ErrorCode::ParseError, "class tag must be 'e' or 'a'");
}

std::vector<cplx> Irrep::character() const {
  std::vector<cplx> chi;
  chi.reserve(matrices.size());
  for (const auto& m : matrices) chi.push_back(m.trace());
  return chi;
}

std::optional<std::vector<cplx>> Irrep::onedim_character() const {
  if (dim != 1) return std::nullopt;
  return character();
}

double projective_closure_residual(const GroupTable& table, std::span<const Mat> matrices) {
  double worst = 0.0;
  const int n = table.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Mat lhs = matrices[a] * matrices[b];
      const Mat& rhs = matrices[table.mult[a][b]];
      const cplx w = leading_ratio(lhs, rhs);
      worst = std::max(worst, std::abs(std::abs(w) - 1.0));
      worst = std::max(worst, max_abs(lhs - w * rhs));
    }
  return worst;
}

cplx character_inner(const GroupTable& table, const Irrep& a, const Irrep& b) {
  cplx s = 0;
  for (int g = 0; g < table.order(); ++g) s += a.matrices[g].trace() * std::conj(b.matrices[g].trace());
  return s / static_cast<double>(table.order());
}

double character_norm(const GroupTable& table, const Irrep& rep) {
  return character_inner(table, rep, rep).real();
}

Irrep materialize_irrep(const GroupTable& table, std::string label, CohomologyClass cls,
                        std::span<const Mat> generator_images, double tol) {
  if (generator_images.size() != table.generators.size())
    throw Error(ErrorCode::InvalidInput, label + ": one image per generator required");
  const Eigen::Index dim = generator_images[0].rows();
  for (const auto& g : generator_images) {
    if (g.rows() != dim || g.cols() != dim)
      throw Error(ErrorCode::DimensionMismatch, label + ": image shape mismatch");
    if (unitarity_defect(g) > tol) throw Error(ErrorCode::InvalidInput, label + ": image not unitary");
  }
  Irrep rep;
  rep.label = std::move(label);
  rep.dim = static_cast<int>(dim);
  rep.cls = cls;
  rep.matrices.reserve(table.order());
  for (const auto& w : table.words) {
    Mat m = Mat::Identity(dim, dim);
    for (int k : w) m = m * generator_images[k];
    rep.matrices.push_back(std::move(m));
  }
  if (projective_closure_residual(table, rep.matrices) > tol)
    throw Error(ErrorCode::InvalidInput, rep.label + ": images do not respect the group law");
  if (std::abs(character_norm(table, rep) - 1.0) > tol)
    throw Error(ErrorCode::InvalidInput, rep.label + ": representation is reducible");
  if (table.center_kernel && classify_irrep(table, rep, tol) != cls)
    throw Error(ErrorCode::ClassMismatch, rep.label + ": declared class disagrees with kernel sign");
  return rep;
}

double FactorSystem::cocycle_residual(const GroupTable& table) const {
  double worst = 0.0;
  const int n = table.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const cplx lhs = omega[a][table.mult[b][c]] * omega[b][c];
        const cplx rhs = omega[a][b] * omega[table.mult[a][b]][c];
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  return worst;
}

FactorSystem factor_system(const GroupTable& table, std::span<const Mat> matrices,
                           CohomologyClass cls) {
  const int n = table.order();
  FactorSystem fs;
  fs.cls = cls;
  fs.omega.assign(n, std::vector<cplx>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      fs.omega[a][b] = leading_ratio(matrices[a] * matrices[b], matrices[table.mult[a][b]]);
  return fs;
}

FactorSystem rephase_factor_system(const GroupTable& table, const FactorSystem& fs,
                                   std::span<const cplx> beta) {
  const int n = table.order();
  if (static_cast<int>(beta.size()) != n) throw Error(ErrorCode::DimensionMismatch, "beta size");
  for (const auto& b : beta)
    if (std::abs(std::abs(b) - 1.0) > 1e-10)
      throw Error(ErrorCode::InvalidInput, "beta must have unit modulus");
  FactorSystem out = fs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.omega[a][b] = fs.omega[a][b] * beta[a] * beta[b] / beta[table.mult[a][b]];
  return out;
}

CentralQuotient central_quotient(const GroupTable& cover) {
  if (!cover.center_kernel) throw Error(ErrorCode::InvalidInput, "center kernel not set");
  const ElementId z = *cover.center_kernel;
  CentralQuotient q;
  const int n = cover.order();
  q.coset_of.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    if (q.coset_of[g] >= 0) continue;
    const int id = static_cast<int>(q.section.size());
    q.section.push_back(g);
    q.coset_of[g] = id;
    q.coset_of[cover.mult[z][g]] = id;
  }
  const int m = static_cast<int>(q.section.size());
  auto& t = q.table;
  t.mult.assign(m, std::vector<ElementId>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t.mult[a][b] = q.coset_of[cover.mult[q.section[a]][q.section[b]]];
  t.inverse.assign(m, 0);
  for (int a = 0; a < m; ++a) t.inverse[a] = q.coset_of[cover.inverse[q.section[a]]];
  t.identity = 0;
  t.generator_names = cover.generator_names;
  for (auto g : cover.generators) t.generators.push_back(q.coset_of[g]);
  for (int a = 0; a < m; ++a) t.words.push_back(cover.words[q.section[a]]);
  return q;
}

FactorSystem projective_factor_system(const CentralQuotient& q, const Irrep& rep) {
  std::vector<Mat> mats;
  mats.reserve(q.section.size());
  for (auto g : q.section) mats.push_back(rep.matrices[g]);
  return factor_system(q.table, mats, rep.cls);
}

CohomologyClass classify_irrep(const GroupTable& table, const Irrep& rep, double tol) {
  if (!table.center_kernel) throw Error(ErrorCode::InvalidInput, "center kernel not set");
  const Mat ratio = rep.matrices[*table.center_kernel] * rep.matrices[table.identity].inverse();
  const Mat id = Mat::Identity(rep.dim, rep.dim);
  if (max_abs(ratio - id) < tol) return CohomologyClass::Trivial;
  if (max_abs(ratio + id) < tol) return CohomologyClass::Nontrivial;
  throw Error(ErrorCode::NotScalarOnKernel, rep.label + ": kernel element is not +-identity");
}

std::map<std::string, int> fusion_multiplicities(const GroupTable& table, const Irrep& i,
                                                 const Irrep& alpha,
                                                 std::span<const Irrep> irreps) {
  std::map<std::string, int> out;
  int total = 0;
  for (const auto& beta : irreps) {
    cplx s = 0;
    for (int g = 0; g < table.order(); ++g)
      s += i.matrices[g].trace() * alpha.matrices[g].trace() * std::conj(beta.matrices[g].trace());
    s /= static_cast<double>(table.order());
    const double r = std::round(s.real());
    if (std::abs(s - cplx(r, 0.0)) > 1e-6)
      throw Error(ErrorCode::NonIntegerMultiplicity,
                  i.label + " x " + alpha.label + " -> " + beta.label);
    if (r > 0) {
      out[beta.label] = static_cast<int>(r);
      total += static_cast<int>(r) * beta.dim;
    }
  }
  if (total != i.dim * alpha.dim)
    throw Error(ErrorCode::NonIntegerMultiplicity,
                i.label + " x " + alpha.label + ": irrep set does not cover the product");
  return out;
}

const Irrep& GroupData::irrep(std::string_view label) const {
  const int k = irrep_index(label);
  if (k < 0) throw Error(ErrorCode::UnknownIrrep, name + ": no irrep '" + std::string(label) + "'");
  return irreps[k];
}

int GroupData::irrep_index(std::string_view label) const {
  for (size_t k = 0; k < irreps.size(); ++k)
    if (irreps[k].label == label) return static_cast<int>(k);
  return -1;
}

std::vector<Mat> product_rep(const Irrep& a, const Irrep& b) {
  std::vector<Mat> out;
  out.reserve(a.matrices.size());
  for (size_t g = 0; g < a.matrices.size(); ++g) out.push_back(kron(a.matrices[g], b.matrices[g]));
  return out;
}

Irrep rephase(const Irrep& rep, const Irrep& chi) {
  if (chi.dim != 1) throw Error(ErrorCode::InvalidInput, "rephasing needs a 1D irrep");
  Irrep out = rep;
  for (size_t g = 0; g < out.matrices.size(); ++g) out.matrices[g] *= chi.matrices[g](0, 0);
  out.label = rep.label + "*" + chi.label;
  return out;
}

int find_equivalent(const GroupTable& table, std::span<const Irrep> irreps,
                    std::span<const cplx> character, double tol) {
  for (size_t k = 0; k < irreps.size(); ++k) {
    double d = 0.0;
    for (int g = 0; g < table.order(); ++g)
      d = std::max(d, std::abs(irreps[k].matrices[g].trace() - character[g]));
    if (d < tol) return static_cast<int>(k);
  }
  return -1;
}

GroupData dihedral_cover(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "dihedral cover needs n >= 2");
  const double eta = std::numbers::pi / n;
  auto rot = [](double phase) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = std::polar(1.0, -phase);
    m(1, 1) = std::polar(1.0, phase);
    return m;
  };
  const Mat y = pauli(2);
  const Mat gens[2] = {rot(eta), -kI * y};
  GroupData gd;
  gd.name = "D" + std::to_string(n);
  gd.table = enumerate_group(gens, 8 * n + 1, {"a", "x"});
  gd.table.center_kernel = gd.table.evaluate_word(std::vector<int>{1, 1});
  const Mat one = Mat::Identity(1, 1);
  // a -> s, x -> t with s^2 = 1, t^2 = s^n
  for (int p = 0; p < 2; ++p) {
    const cplx s = p ? -1.0 : 1.0;
    const bool square_negative = p == 1 && n % 2 == 1;
    const cplx t = square_negative ? kI : cplx(1.0);
    const auto cls = square_negative ? CohomologyClass::Nontrivial : CohomologyClass::Trivial;
    for (int q = 0; q < 2; ++q) {
      const Mat imgs[2] = {s * one, (q ? -t : t) * one};
      const int qlabel = square_negative ? 2 * q + 1 : 2 * q;
      gd.irreps.push_back(materialize_irrep(
          gd.table, "1_(" + std::to_string(p) + "," + std::to_string(square_negative ? qlabel : q) + ")",
          cls, imgs));
    }
  }
  for (int k = 1; k < n; ++k) {
    const Mat x = (k % 2 == 0) ? Mat(y) : Mat(-kI * y);
    const Mat imgs[2] = {rot(k * eta), x};
    const auto cls = (k % 2 == 0) ? CohomologyClass::Trivial : CohomologyClass::Nontrivial;
    const std::string label = (k % 2 == 0 ? "2_(" : "2~_(") + std::to_string(k) + ")";
    gd.irreps.push_back(materialize_irrep(gd.table, label, cls, imgs));
  }
  return gd;
}

}  // namespace sptkit
