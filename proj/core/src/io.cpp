#include "sptkit/io.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "json_util.hpp"
#include "sptkit/errors.hpp"

namespace sptkit {

using detail::complex_to_json;
using detail::dump17;
using detail::matrix_to_json;
using detail::ordered_json;

std::string canonical_json(std::string_view text, int indent) {
  try {
    return dump17(ordered_json::parse(text), indent);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string matrix_json(const Mat& m) { return dump17(matrix_to_json(m), -1); }

std::string group_info_json(const GroupData& g) {
  ordered_json j;
  j["name"] = g.name;
  j["order"] = g.table.order();
  j["generators"] = g.table.generator_names;
  j["center_kernel_word"] = g.table.center_kernel ? g.table.word_string(*g.table.center_kernel) : "";
  ordered_json elements = ordered_json::array();
  for (int e = 0; e < g.table.order(); ++e) elements.push_back(g.table.word_string(e));
  j["elements"] = elements;
  std::map<std::string, int> counts;
  ordered_json irreps = ordered_json::array();
  int dim2 = 0;
  for (const auto& r : g.irreps) {
    ordered_json ch = ordered_json::array();
    for (auto c : r.character()) ch.push_back(complex_to_json(c));
    irreps.push_back({{"label", r.label}, {"dim", r.dim}, {"class", std::string(class_tag(r.cls))}, {"character", ch}});
    ++counts[std::string(class_tag(r.cls))];
    dim2 += r.dim * r.dim;
  }
  j["irreps"] = irreps;
  ordered_json cls;
  for (const auto& [k, v] : counts) cls[k] = v;
  j["class_counts"] = cls;
  j["sum_dim_squared"] = dim2;
  return dump17(j);
}

std::string group_info_text(const GroupData& g) {
  std::ostringstream os;
  os << g.name << ": |G| = " << g.table.order() << ", " << g.irreps.size() << " irreps\n";
  char buf[64];
  for (const auto& r : g.irreps) {
    os << "  " << r.label << "  dim " << r.dim << "  class " << class_tag(r.cls) << "  chi:";
    for (auto c : r.character()) {
      if (std::abs(c.imag()) < 1e-12) std::snprintf(buf, sizeof buf, " %g", c.real() + 0.0);
      else std::snprintf(buf, sizeof buf, " %g%+gi", c.real() + 0.0, c.imag());
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::string cg_table_json(const Irrep& i, const Irrep& alpha, const std::vector<CgTensor>& tensors) {
  ordered_json j;
  j["i"] = i.label;
  j["alpha"] = alpha.label;
  j["phase_convention"] = tensors.empty() ? std::string(kCgPhaseConvention) : tensors.front().phase_convention;
  ordered_json blocks = ordered_json::array();
  for (const auto& t : tensors)
    blocks.push_back({{"beta", t.beta_label}, {"n", t.copy}, {"coeffs", matrix_to_json(t.coeffs)}});
  j["blocks"] = blocks;
  return dump17(j);
}

std::string mps_json(const SymmetricMps& mps) {
  ordered_json j;
  j["group"] = mps.group;
  j["basis_note"] = mps.basis_note;
  j["chi"] = mps.chi_label;
  ordered_json phys = ordered_json::array();
  for (const auto& p : mps.phys) phys.push_back({{"label", p.label}, {"dim", p.dim}, {"offset", p.offset}});
  j["physical"] = phys;
  ordered_json bond = ordered_json::array();
  for (const auto& b : mps.bond)
    bond.push_back({{"label", b.label}, {"degeneracy", b.degeneracy}, {"irrep_dim", b.irrep_dim}, {"offset", b.offset}});
  j["virtual"] = bond;
  ordered_json blocks = ordered_json::array();
  for (size_t s = 0; s < mps.blocks.size(); ++s)
    for (const auto& [k, m] : mps.blocks[s])
      blocks.push_back({{"site", s},
                        {"phys", mps.phys.at(k.phys).label},
                        {"alpha", mps.bond.at(k.alpha).label},
                        {"beta", mps.bond.at(k.beta).label},
                        {"n", k.copy},
                        {"B", matrix_to_json(m)}});
  j["blocks"] = blocks;
  ordered_json sites = ordered_json::array();
  for (const auto& site : mps.sites) {
    ordered_json a = ordered_json::array();
    for (const auto& m : site) a.push_back(matrix_to_json(m));
    sites.push_back(a);
  }
  j["tensors"] = sites;
  ordered_json gauge;
  gauge["cg_phase_convention"] = std::string(kCgPhaseConvention);
  gauge["cg_seed"] = mps.cg_seed;
  if (mps.split)
    gauge["split"] = {{"protected", mps.split->protected_label},
                      {"junk_dim", mps.split->junk_dim},
                      {"index", mps.split->split_index}};
  else
    gauge["split"] = nullptr;
  j["gauge"] = gauge;
  return dump17(j);
}

SymmetricMps parse_mps_json(std::string_view text) {
  try {
    const auto j = detail::json::parse(text);
    SymmetricMps mps;
    mps.group = j.value("group", "");
    mps.basis_note = j.value("basis_note", "");
    mps.chi_label = j.value("chi", "");
    for (const auto& p : j.at("physical")) mps.phys.push_back({p.at("label"), p.at("dim"), p.at("offset")});
    for (const auto& b : j.at("virtual"))
      mps.bond.push_back({b.at("label"), b.at("degeneracy"), b.at("irrep_dim"), b.at("offset")});
    for (const auto& site : j.at("tensors")) {
      std::vector<Mat> a;
      for (const auto& m : site) a.push_back(detail::matrix_from_json(m));
      mps.sites.push_back(std::move(a));
    }
    if (mps.sites.empty() || mps.sites.front().empty()) throw Error(ErrorCode::InvalidInput, "MPS has no tensors");
    return mps;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string operator_json(const TwoSiteOperator& op) {
  ordered_json j;
  j["label"] = op.label;
  j["basis"] = op.basis;
  j["matrix"] = matrix_to_json(op.matrix);
  return dump17(j);
}

std::string hamiltonian_json(const HamiltonianTerms& t) {
  ordered_json j;
  j["basis"] = "xyz";
  j["convention"] = t.convention;
  ordered_json terms = ordered_json::array();
  for (const auto* op : {&t.aklt, &t.quartic, &t.cubic})
    terms.push_back({{"label", op->label}, {"basis", op->basis}, {"matrix", matrix_to_json(op->matrix)}});
  j["terms"] = terms;
  return dump17(j);
}

std::string transcript_jsonl(const std::vector<MeasurementRecord>& transcript) {
  std::string out;
  for (const auto& r : transcript) {
    ordered_json j;
    j["site"] = r.site;
    j["basis"] = r.basis;
    j["outcome"] = r.outcome_label;
    j["p"] = r.p;
    j["byproduct_after"] = r.byproduct_after.word();
    out += dump17(j, -1);
    out += '\n';
  }
  return out;
}

}  // namespace sptkit
