#include "sptkit/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sptkit/defaults.hpp"
#include "sptkit/errors.hpp"
#include "sptkit/io.hpp"
#include "sptkit/mbqc.hpp"
#include "sptkit/scan.hpp"

namespace sptkit::cli {
namespace {

using ojson = nlohmann::ordered_json;

constexpr int kCheckFailed = 3;

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> chi;
  std::string out;
  std::string format;
  int jobs = 1;

  std::string group;
  std::string file;
  std::string input;

  std::string i_label;
  std::string alpha_label;
  std::optional<std::uint64_t> cg_seed;

  std::string model;
  std::vector<std::string> phys;
  std::vector<std::string> virt;
  std::string chi_irrep;
  std::string omega = "a";
  int sites = 1;
  std::string blocks_file;
  std::optional<int> degeneracy;

  std::string state = "aklt";
  std::string gates;
  std::optional<int> max_attempts;
  int idle = 0;
  std::optional<int> n_sites;
  std::optional<std::uint64_t> b_seed;

  double lambda = 0.0;
  double mu = 0.0;
  std::string schedule;

  std::string lambda_range;
  std::string mu_range;
  std::string plot;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  f << text;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) out << text;
  else write_text(o.out, text);
}

ojson parse(const std::string& text) { return ojson::parse(text); }

std::string document(const std::string& command, const ojson& config, const ojson& result) {
  ojson doc;
  doc["command"] = command;
  doc["config"] = config;
  doc["defaults"] = parse(defaults_json(-1));
  doc["result"] = result;
  return canonical_json(doc.dump()) + "\n";
}

void json_only(const Options& o) {
  if (!o.format.empty() && o.format != "json")
    throw Error(ErrorCode::InvalidInput, "--format " + o.format + " is not available for this command");
}

double tol_or(const Options& o, double fallback) {
  const double t = o.tol.value_or(fallback);
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidInput, "--tol must be positive");
  return t;
}

std::uint64_t seed_of(const Options& o) { return o.seed.value_or(defaults().seed); }

// ---- group ----

std::string group_source(const Options& o) {
  const std::string& name = o.file.empty() ? o.group : o.file;
  if (name.empty()) throw Error(ErrorCode::InvalidInput, "give a builtin group name or --file");
  return name;
}

int cmd_group_info(const Options& o, std::ostream& out) {
  if (!o.format.empty() && o.format != "json" && o.format != "text")
    throw Error(ErrorCode::InvalidInput, "--format must be json or text");
  const auto name = group_source(o);
  const auto g = resolve_group(name);
  const auto doc = document("group info", {{"group", name}}, parse(group_info_json(g)));
  if (o.format == "json") {
    emit(o, out, doc);
    return 0;
  }
  out << group_info_text(g);
  if (!o.out.empty()) write_text(o.out, doc);
  return 0;
}

int cmd_group_check(const Options& o, std::ostream& out) {
  json_only(o);
  const auto name = group_source(o);
  const double tol = tol_or(o, defaults().group_tol);
  const auto g = resolve_group(name);
  ojson irreps = ojson::array();
  bool ok = true;
  int dim2 = 0;
  for (const auto& r : g.irreps) {
    double unit = 0.0;
    for (const auto& m : r.matrices) unit = std::max(unit, unitarity_defect(m));
    const double closure = projective_closure_residual(g.table, r.matrices);
    const double norm = std::abs(character_norm(g.table, r) - 1.0);
    const auto cls = classify_irrep(g.table, r, tol);
    const bool good = unit < tol && closure < tol && norm < tol && cls == r.cls;
    ok = ok && good;
    dim2 += r.dim * r.dim;
    irreps.push_back({{"label", r.label},
                      {"declared_class", std::string(class_tag(r.cls))},
                      {"computed_class", std::string(class_tag(cls))},
                      {"unitarity", unit},
                      {"closure", closure},
                      {"character_norm_defect", norm},
                      {"ok", good}});
  }
  ok = ok && dim2 == g.table.order();
  ojson result = {{"order", g.table.order()}, {"sum_dim_squared", dim2}, {"irreps", irreps}, {"ok", ok}};
  emit(o, out, document("group check", {{"group", name}, {"tol", tol}}, result));
  return ok ? 0 : kCheckFailed;
}

// ---- cg ----

int cmd_cg_compute(const Options& o, std::ostream& out) {
  json_only(o);
  const auto g = resolve_group(group_source(o));
  const auto seed = o.cg_seed.value_or(o.seed.value_or(defaults().cg_seed));
  const auto& i = g.irrep(o.i_label);
  const auto& a = g.irrep(o.alpha_label);
  const auto mult = fusion_multiplicities(g.table, i, a, g.irreps);
  const auto tensors = compute_cg(g.table, i, a, g.irreps, seed);
  ojson m;
  for (const auto& [k, v] : mult) m[k] = v;
  ojson result = {{"multiplicities", m}, {"table", parse(cg_table_json(i, a, tensors))}};
  emit(o, out, document("cg compute", {{"group", group_source(o)}, {"i", o.i_label}, {"alpha", o.alpha_label}, {"cg_seed", seed}}, result));
  return 0;
}

Mat matrix_from(const ojson& j) {
  const auto rows = j.size();
  if (rows == 0) throw Error(ErrorCode::ParseError, "empty matrix");
  const auto cols = j.at(0).size();
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw Error(ErrorCode::ParseError, "ragged matrix");
    for (size_t c = 0; c < cols; ++c) {
      const auto& e = j.at(r).at(c);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          e.is_array() ? cplx(e.at(0).get<double>(), e.at(1).get<double>()) : cplx(e.get<double>(), 0.0);
    }
  }
  return m;
}

int cmd_cg_verify(const Options& o, std::ostream& out) {
  json_only(o);
  const double tol = tol_or(o, defaults().cg_tol);
  const auto g = resolve_group(group_source(o));
  std::vector<CgTensor> tensors;
  std::string i_label = o.i_label, alpha_label = o.alpha_label;
  std::uint64_t seed = o.cg_seed.value_or(o.seed.value_or(defaults().cg_seed));
  if (!o.input.empty()) {
    ojson j;
    try {
      j = parse(read_file(o.input));
      if (j.contains("result")) j = j["result"]["table"];
      i_label = j.at("i").get<std::string>();
      alpha_label = j.at("alpha").get<std::string>();
      for (const auto& b : j.at("blocks"))
        tensors.push_back({i_label, alpha_label, b.at("beta").get<std::string>(), b.at("n").get<int>(), matrix_from(b.at("coeffs"))});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }
  const auto& i = g.irrep(i_label);
  const auto& a = g.irrep(alpha_label);
  if (o.input.empty()) tensors = compute_cg(g.table, i, a, g.irreps, seed);
  ojson blocks = ojson::array();
  bool ok = true;
  for (const auto& t : tensors) {
    const auto r = verify_cg(g.table, t, i, a, g.irrep(t.beta_label));
    ok = ok && r.ok(tol);
    blocks.push_back({{"beta", t.beta_label}, {"n", t.copy}, {"intertwining", r.intertwining}, {"orthonormality", r.orthonormality}});
  }
  const Mat stack = stack_cg(tensors);
  const double stack_defect = stack.rows() == stack.cols() ? unitarity_defect(stack) : 1.0;
  ok = ok && stack_defect < tol;
  ojson result = {{"blocks", blocks}, {"stack_unitarity", stack_defect}, {"ok", ok}};
  ojson config = {{"group", group_source(o)}, {"i", i_label}, {"alpha", alpha_label}, {"tol", tol}};
  if (o.input.empty()) config["cg_seed"] = seed;
  else config["input"] = o.input;
  emit(o, out, document("cg verify", config, result));
  return ok ? 0 : kCheckFailed;
}

// ---- mps ----

std::pair<std::string, int> parse_virtual(const std::string& item) {
  const auto colon = item.rfind(':');
  if (colon == std::string::npos) return {item, 1};
  try {
    return {item.substr(0, colon), std::stoi(item.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "virtual sector '" + item + "' must be label:degeneracy");
  }
}

struct BuiltMps {
  SymmetricMps mps;
  ojson config;
};

BlockMap read_blocks(const std::string& path, const MpsBuildSpec& spec) {
  auto index_of = [](const auto& list, const std::string& label, const char* what) {
    for (size_t k = 0; k < list.size(); ++k)
      if (list[k] == label) return static_cast<int>(k);
    throw Error(ErrorCode::UnknownIrrep, std::string(what) + " '" + label + "' is not in the build");
  };
  std::vector<std::string> virt;
  for (const auto& [label, n] : spec.virtual_spec) virt.push_back(label);
  BlockMap blocks;
  try {
    auto j = parse(read_file(path));
    if (j.is_object() && j.contains("blocks")) j = j["blocks"];
    for (const auto& b : j) {
      BlockKey key{index_of(spec.phys_irreps, b.at("phys").get<std::string>(), "physical irrep"),
                   index_of(virt, b.at("alpha").get<std::string>(), "virtual irrep"),
                   index_of(virt, b.at("beta").get<std::string>(), "virtual irrep"), b.value("n", 1)};
      blocks[key] = matrix_from(b.at("B"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return blocks;
}

BuiltMps make_mps(const Options& o) {
  BuiltMps b;
  if (!o.input.empty()) {
    b.mps = parse_mps_json(read_file(o.input));
    b.config = {{"input", o.input}};
    return b;
  }
  if (o.model == "aklt" || o.model == "cluster") {
    b.mps = o.model == "aklt" ? aklt_mps() : cluster_mps();
    b.config = {{"model", o.model}};
    return b;
  }
  MpsBuildSpec spec;
  if (o.model == "spt") {
    if (o.group.empty()) throw Error(ErrorCode::InvalidInput, "--model spt needs --group");
    spec = protection_model(o.group, o.degeneracy.value_or(defaults().junk_degeneracy));
  } else if (!o.model.empty()) {
    throw Error(ErrorCode::InvalidInput, "--model must be aklt, cluster or spt");
  } else {
    if (o.group.empty() || o.phys.empty() || o.virt.empty())
      throw Error(ErrorCode::InvalidInput, "explicit builds need --group, --phys and --virtual");
    spec.group = o.group;
    spec.phys_irreps = o.phys;
    for (const auto& v : o.virt) spec.virtual_spec.push_back(parse_virtual(v));
    spec.chi = o.chi_irrep;
    spec.omega = parse_class_tag(o.omega);
  }
  if (o.sites < 1) throw Error(ErrorCode::InvalidInput, "--sites must be >= 1");
  spec.sites = o.sites;
  spec.random_seed = seed_of(o);
  spec.cg_seed = o.cg_seed.value_or(defaults().cg_seed);
  if (!o.blocks_file.empty()) spec.blocks = read_blocks(o.blocks_file, spec);
  const auto g = resolve_group(spec.group);
  b.mps = build_mps(g, spec);

  ojson virt = ojson::array();
  for (const auto& [label, n] : spec.virtual_spec) virt.push_back({{"label", label}, {"degeneracy", n}});
  b.config = {{"model", o.model.empty() ? "explicit" : o.model},
              {"group", spec.group},
              {"phys", spec.phys_irreps},
              {"omega", std::string(class_tag(spec.omega))},
              {"chi", spec.chi},
              {"virtual", virt},
              {"sites", spec.sites},
              {"cg_seed", spec.cg_seed}};
  if (spec.blocks) b.config["blocks"] = o.blocks_file;
  else b.config["seed"] = spec.random_seed;
  return b;
}

int cmd_mps_build(const Options& o, std::ostream& out) {
  json_only(o);
  const double tol = tol_or(o, defaults().mps_tol);
  auto b = make_mps(o);
  ojson result = parse(mps_json(b.mps));
  bool ok = true;
  if (!b.mps.blocks.empty()) {
    const double r = reconstruction_residual(resolve_group(b.mps.group), b.mps);
    result["reconstruction_residual"] = r;
    ok = r < tol;
  }
  b.config["tol"] = tol;
  emit(o, out, document("mps build", b.config, result));
  return ok ? 0 : kCheckFailed;
}

GroupData group_of(const SymmetricMps& mps) {
  if (mps.group.empty()) throw Error(ErrorCode::InvalidInput, "the state carries no group");
  return resolve_group(mps.group);
}

int cmd_mps_onsite(const Options& o, std::ostream& out) {
  json_only(o);
  const double tol = tol_or(o, defaults().mps_tol);
  auto b = make_mps(o);
  const auto g = group_of(b.mps);
  const auto sym = symmetry_action(g, b.mps);
  double worst = 0.0;
  for (int s = 0; s < static_cast<int>(b.mps.sites.size()); ++s)
    worst = std::max(worst, check_onsite_invariance(b.mps, sym, s));
  b.config["tol"] = tol;
  emit(o, out, document("mps check-onsite", b.config, {{"residual", worst}, {"ok", worst < tol}}));
  return worst < tol ? 0 : kCheckFailed;
}

Mat spin1_only(const SymmetricMps& mps, const Mat& spin1, const char* what) {
  if (mps.phys_dim() != 3) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is defined for spin-1 sites");
  return spin1;
}

int cmd_mps_parity(const Options& o, std::ostream& out) {
  json_only(o);
  const double tol = tol_or(o, defaults().extract_tol);
  auto b = make_mps(o);
  const Mat w = b.mps.phys_dim() == 3 ? spin1_parity_action() : Mat::Identity(b.mps.phys_dim(), b.mps.phys_dim());
  const auto sol = solve_parity(b.mps, w);
  b.config["tol"] = tol;
  ojson result = {{"w", parse(matrix_json(w))}, {"N", parse(matrix_json(sol.n))}, {"alpha_P", sol.alpha_p},
                  {"beta_P", sol.beta_p}, {"residual", sol.residual}, {"ok", sol.residual < tol}};
  emit(o, out, document("mps check-parity", b.config, result));
  return sol.residual < tol ? 0 : kCheckFailed;
}

int cmd_mps_time_reversal(const Options& o, std::ostream& out) {
  json_only(o);
  const double tol = tol_or(o, defaults().extract_tol);
  auto b = make_mps(o);
  const Mat v = spin1_only(b.mps, spin1_time_reversal_action(), "time reversal");
  const auto sol = solve_time_reversal(b.mps, v);
  b.config["tol"] = tol;
  ojson result = {{"v", parse(matrix_json(v))}, {"M", parse(matrix_json(sol.m))}, {"beta_T", sol.beta_t},
                  {"residual", sol.residual}, {"ok", sol.residual < tol}};
  emit(o, out, document("mps check-time-reversal", b.config, result));
  return sol.residual < tol ? 0 : kCheckFailed;
}

int cmd_mps_extract(const Options& o, std::ostream& out) {
  json_only(o);
  const double tol = tol_or(o, defaults().extract_tol);
  auto b = make_mps(o);
  const auto g = group_of(b.mps);
  const auto sym = symmetry_action(g, b.mps);
  const auto ex = extract_virtual_rep(b.mps, sym.u, tol);
  ojson gens = ojson::array();
  for (size_t k = 0; k < ex.v.size(); ++k)
    gens.push_back({{"generator", g.table.generator_names.at(k)},
                    {"chi", {ex.chi[k].real(), ex.chi[k].imag()}},
                    {"V", parse(matrix_json(ex.v[k]))}});
  ojson decomps = ojson::array();
  for (const auto& d : candidate_virtual_decompositions(g, ex.v)) {
    ojson m;
    for (const auto& [k, v] : d) m[k] = v;
    decomps.push_back(m);
  }
  b.config["tol"] = tol;
  ojson result = {{"generators", gens}, {"decompositions", decomps}, {"residual", ex.residual}, {"ok", ex.residual < tol}};
  emit(o, out, document("mps extract-sym", b.config, result));
  return ex.residual < tol ? 0 : kCheckFailed;
}

// ---- mbqc ----

ojson transcript_array(const std::vector<MeasurementRecord>& transcript) {
  ojson arr = ojson::array();
  std::istringstream lines(transcript_jsonl(transcript));
  for (std::string line; std::getline(lines, line);) arr.push_back(parse(line));
  return arr;
}

int cmd_mbqc_run(const Options& o, std::ostream& out) {
  json_only(o);
  const double tol = tol_or(o, 1e-10);
  if (o.gates.empty()) throw Error(ErrorCode::InvalidInput, "--gate needs at least one rotation");
  const auto kind = parse_resource_kind(o.state);
  const auto targets = parse_gate_list(o.gates);
  const int attempts = o.max_attempts.value_or(defaults().mbqc_max_attempts);
  if (attempts < 1) throw Error(ErrorCode::InvalidInput, "--max-attempts must be >= 1");
  const auto seed = seed_of(o);
  const auto res = compile_rotation(kind, targets, attempts, seed, o.idle);

  ojson config = {{"state", o.state}, {"gate", o.gates}, {"seed", seed}, {"max_attempts", attempts}, {"idle", o.idle}, {"tol", tol}};
  ojson header = {{"command", "mbqc run"}, {"config", config}, {"defaults", parse(defaults_json(-1))}};
  const bool ok = res.fidelity >= 1.0 - tol;
  ojson summary = {{"measurements", res.transcript.size()},
                   {"attempts", res.attempts},
                   {"byproduct", res.byproduct.word()},
                   {"raw_product", parse(matrix_json(res.raw_product))},
                   {"target", parse(matrix_json(res.target))},
                   {"fidelity", res.fidelity},
                   {"ok", ok}};
  const std::string jsonl = canonical_json(header.dump(), -1) + "\n" + transcript_jsonl(res.transcript);
  const std::string tail = canonical_json(ojson{{"summary", summary}}.dump(), -1) + "\n";
  if (o.out.empty()) {
    out << jsonl << tail;
  } else {
    write_text(o.out, jsonl);
    out << tail;
  }
  return ok ? 0 : kCheckFailed;
}

int cmd_mbqc_identity(const Options& o, std::ostream& out) {
  json_only(o);
  const double tol = tol_or(o, 1e-12);
  if (o.group.empty()) throw Error(ErrorCode::InvalidInput, "--group is required");
  const auto seed = seed_of(o);
  const auto b_seed = o.b_seed.value_or(seed);
  const int n = o.n_sites.value_or(defaults().mbqc_sites);
  const int k = o.degeneracy.value_or(defaults().junk_degeneracy);
  const auto rep = identity_protection_test(o.group, b_seed, n, seed, k);
  const bool ok = rep.protected_fidelity >= 1.0 - tol && rep.final_rank == 1;
  ojson result = {{"protected_fidelity", rep.protected_fidelity},
                  {"final_rank", rep.final_rank},
                  {"byproduct", rep.byproduct.word()},
                  {"negative_control_rank", rep.negative_control_rank},
                  {"negative_control_split_lost", rep.negative_control_split_lost},
                  {"transcript", transcript_array(rep.transcript)},
                  {"ok", ok}};
  ojson config = {{"group", o.group}, {"b_seed", b_seed}, {"seed", seed}, {"sites", n}, {"junk_degeneracy", k}, {"tol", tol}};
  emit(o, out, document("mbqc identity-test", config, result));
  return ok ? 0 : kCheckFailed;
}

// ---- ham ----

int cmd_ham_build(const Options& o, std::ostream& out) {
  json_only(o);
  const auto terms = build_terms();
  ojson result = parse(hamiltonian_json(terms));
  result["total"] = parse(operator_json(bond_hamiltonian(o.lambda, o.mu)));
  result["offset_total"] = parse(operator_json(offset_bond_hamiltonian(o.lambda, o.mu)));
  emit(o, out, document("ham build", {{"lambda", o.lambda}, {"mu", o.mu}}, result));
  return 0;
}

int cmd_ham_verify(const Options& o, std::ostream& out) {
  json_only(o);
  const double tol = tol_or(o, 1e-12);
  const auto terms = build_terms();
  const auto basis = spin_pair_basis();
  auto proj = [](const Vec& v) -> Mat { return v * v.adjoint() / v.squaredNorm(); };
  const Mat id = Mat::Identity(9, 9);
  Mat p2 = Mat::Zero(9, 9);
  for (int m = -2; m <= 2; ++m) p2 += proj(basis.ket(2, m));
  const Mat aklt_form = 2.0 * p2 - (2.0 / 3.0) * id;
  const Mat q_form = proj(basis.ket(2, 2) + basis.ket(2, -2)) + proj(basis.ket(2, 0)) + (2.0 / 3.0) * id;
  const Mat c_form = 2.0 * std::sqrt(3.0) * (proj(basis.phi_plus) - proj(basis.phi_minus));
  ojson rows = ojson::array();
  bool ok = basis.orthonormality_defect() < tol;
  const std::vector<std::pair<const TwoSiteOperator*, const Mat*>> items = {
      {&terms.aklt, &aklt_form}, {&terms.quartic, &q_form}, {&terms.cubic, &c_form}};
  for (const auto& [t, form] : items) {
    const double ident = max_abs(t->matrix - *form);
    const auto sym = verify_symmetry(*t, "A4");
    const double so3 = rotation_commutator(*t, 3, M_PI / 2);
    ok = ok && ident < tol && sym.group < tol && sym.swap < tol && t->hermiticity_defect() < tol;
    rows.push_back({{"label", t->label},
                    {"projector_identity", ident},
                    {"hermiticity", t->hermiticity_defect()},
                    {"a4_commutator", sym.group},
                    {"swap", sym.swap},
                    {"so3_rz_half_pi_commutator", so3}});
  }
  ojson result = {{"coupled_basis_orthonormality", basis.orthonormality_defect()}, {"terms", rows}, {"ok", ok}};
  emit(o, out, document("ham verify", {{"tol", tol}}, result));
  return ok ? 0 : kCheckFailed;
}

int cmd_ham_hmatrix(const Options& o, std::ostream& out) {
  json_only(o);
  const auto h = h_matrix(o.lambda, o.mu);
  const double w = 2.0 * std::sqrt(3.0) * o.lambda;
  ojson result = {{"h", parse(matrix_json(h.h))},
                  {"min_eig", h.min_eig},
                  {"aklt_region", aklt_region(o.lambda, o.mu)},
                  {"boundary_plus", o.mu + w + 2.0},
                  {"boundary_minus", o.mu - w + 2.0}};
  emit(o, out, document("ham h-matrix", {{"lambda", o.lambda}, {"mu", o.mu}}, result));
  return 0;
}

// ---- itebd / scan ----

Schedule parse_schedule(const std::string& text) {
  if (text.empty()) return defaults().itebd.schedule;
  Schedule s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(item);
      s.push_back({std::stod(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "schedule entry '" + item + "' must be dt:steps");
    }
  }
  return s;
}

ojson schedule_json(const Schedule& s) {
  ojson arr = ojson::array();
  for (const auto& st : s) arr.push_back({{"dt", st.dt}, {"steps", st.steps}});
  return arr;
}

int cmd_itebd(const Options& o, std::ostream& out) {
  json_only(o);
  ItebdOptions opt = defaults().itebd;
  opt.chi = o.chi.value_or(opt.chi);
  opt.schedule = parse_schedule(o.schedule);
  opt.seed = seed_of(o);
  const auto h = offset_bond_hamiltonian(o.lambda, o.mu);
  const auto st = itebd_ground_state(h, opt);
  const double e = energy_density(st, h);
  const auto f = fidelity_per_site(st, aklt_mps());
  ojson schmidt = ojson::array();
  for (Eigen::Index k = 0; k < st.lambda[0].size(); ++k) schmidt.push_back(st.lambda[0](k));
  ojson log = ojson::array();
  for (const auto& l : st.log)
    log.push_back({{"dt", l.dt}, {"steps", l.steps_taken}, {"energy", l.energy}, {"last_change", l.last_change}});
  ojson result = {{"energy_per_site", e},
                  {"fidelity_per_site", f.value},
                  {"fidelity_gap", f.gap},
                  {"degenerate", f.degenerate},
                  {"converged", st.converged},
                  {"canonical_residual", canonical_residual(st)},
                  {"schmidt_ab", schmidt},
                  {"log", log}};
  ojson config = {{"lambda", o.lambda}, {"mu", o.mu}, {"chi", opt.chi}, {"seed", opt.seed}, {"schedule", schedule_json(opt.schedule)}};
  emit(o, out, document("itebd run", config, result));
  return 0;
}

void parse_range(const std::string& text, double& lo, double& hi, int& n) {
  if (text.empty()) return;
  std::stringstream ss(text);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
    throw Error(ErrorCode::ParseError, "range '" + text + "' must be lo:hi:points");
  try {
    lo = std::stod(a);
    hi = std::stod(b);
    n = std::stoi(c);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "range '" + text + "' must be lo:hi:points");
  }
}

int cmd_scan(const Options& o, std::ostream& out) {
  if (!o.format.empty() && o.format != "csv" && o.format != "json")
    throw Error(ErrorCode::InvalidInput, "--format must be csv or json");
  ScanSpec spec = defaults().scan;
  parse_range(o.lambda_range, spec.lambda_min, spec.lambda_max, spec.lambda_points);
  parse_range(o.mu_range, spec.mu_min, spec.mu_max, spec.mu_points);
  spec.chi = o.chi.value_or(spec.chi);
  spec.schedule = parse_schedule(o.schedule);
  spec.seed = seed_of(o);
  spec.jobs = o.jobs;
  const auto rows = phase_scan(spec);

  ojson config = {{"lambda", {spec.lambda_min, spec.lambda_max, spec.lambda_points}},
                  {"mu", {spec.mu_min, spec.mu_max, spec.mu_points}},
                  {"chi", spec.chi},
                  {"seed", spec.seed},
                  {"schedule", schedule_json(spec.schedule)}};
  if (o.format == "json") {
    ojson arr = ojson::array();
    for (const auto& r : rows)
      arr.push_back({{"lambda", r.lambda}, {"mu", r.mu}, {"energy_per_site", r.energy_per_site},
                     {"fidelity_per_site", r.fidelity_per_site}, {"min_eig_h", r.min_eig_h},
                     {"in_region_analytic", r.in_region_analytic}, {"converged", r.converged},
                     {"degenerate", r.degenerate}, {"error", r.error}});
    emit(o, out, document("scan", config, arr));
  } else {
    std::ostringstream csv;
    write_scan_csv(csv, rows, {"sptkit scan", "config " + canonical_json(config.dump(), -1), "defaults " + defaults_json(-1)});
    emit(o, out, csv.str());
  }
  if (!o.plot.empty()) write_text(o.plot, scan_plot_script(o.out.empty() ? "scan.csv" : o.out, spec));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sptkit: symmetric MPS, MBQC and iTEBD toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::function<int(const Options&, std::ostream&)> action;

  app.add_option("--seed", o.seed, "base RNG seed");
  app.add_option("--tol", o.tol, "check tolerance");
  app.add_option("--chi", o.chi, "iTEBD bond dimension");
  app.add_option("--out", o.out, "output file (stdout when absent)");
  app.add_option("--format", o.format, "json | csv | text");
  app.add_option("--jobs", o.jobs, "worker threads for scan")->check(CLI::PositiveNumber);

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, auto fn) {
    auto* s = parent->add_subcommand(name, desc);
    s->callback([&action, fn] { action = fn; });
    return s;
  };
  auto group_opts = [&](CLI::App* s) {
    s->add_option("name", o.group, "builtin group or JSON file");
    s->add_option("--group", o.group, "builtin group or JSON file");
    s->add_option("--file", o.file, "group JSON file");
  };
  auto mps_opts = [&](CLI::App* s) {
    s->add_option("--input", o.input, "MPS JSON written by 'mps build'");
    s->add_option("--model", o.model, "aklt | cluster | spt");
    s->add_option("--group", o.group, "builtin group or JSON file");
    s->add_option("--phys", o.phys, "physical irreps")->delimiter(';');
    s->add_option("--virtual", o.virt, "virtual sectors label:degeneracy")->delimiter(';');
    s->add_option("--chi-irrep", o.chi_irrep, "1D irrep chi");
    s->add_option("--omega", o.omega, "class of the virtual irreps (e | a)");
    s->add_option("--sites", o.sites, "distinct sites in the unit cell");
    s->add_option("--blocks", o.blocks_file, "B blocks JSON instead of random");
    s->add_option("--degeneracy", o.degeneracy, "junk degeneracy for --model spt");
    s->add_option("--cg-seed", o.cg_seed, "CG seed");
  };

  auto* group = app.add_subcommand("group", "finite groups and irreps");
  group->require_subcommand(1);
  group_opts(leaf(group, "info", "irrep table", cmd_group_info));
  group_opts(leaf(group, "check", "irrep residuals and class labels", cmd_group_check));

  auto* cg = app.add_subcommand("cg", "Clebsch-Gordan tensors");
  cg->require_subcommand(1);
  for (auto [name, fn] : {std::pair{"compute", cmd_cg_compute}, std::pair{"verify", cmd_cg_verify}}) {
    auto* s = leaf(cg, name, std::string("CG tables: ") + name, fn);
    s->add_option("--group", o.group, "builtin group or JSON file")->required();
    s->add_option("--i", o.i_label, "physical irrep");
    s->add_option("--alpha", o.alpha_label, "virtual irrep");
    s->add_option("--cg-seed", o.cg_seed, "CG seed");
    if (std::string(name) == "verify") s->add_option("--input", o.input, "CG JSON to verify");
  }

  auto* mps = app.add_subcommand("mps", "symmetric matrix product states");
  mps->require_subcommand(1);
  mps_opts(leaf(mps, "build", "build and export", cmd_mps_build));
  mps_opts(leaf(mps, "check-onsite", "on-site symmetry residual", cmd_mps_onsite));
  mps_opts(leaf(mps, "check-parity", "bond-inversion action", cmd_mps_parity));
  mps_opts(leaf(mps, "check-time-reversal", "time-reversal action", cmd_mps_time_reversal));
  mps_opts(leaf(mps, "extract-sym", "virtual representation", cmd_mps_extract));

  auto* mbqc = app.add_subcommand("mbqc", "measurement-based computation");
  mbqc->require_subcommand(1);
  auto* mrun = leaf(mbqc, "run", "compile rotations", cmd_mbqc_run);
  mrun->add_option("--state", o.state, "aklt | cluster");
  mrun->add_option("--gate", o.gates, "rotations in application order, e.g. rz:0.785,rx:1.047");
  mrun->add_option("--max-attempts", o.max_attempts, "measurements allowed per rotation");
  mrun->add_option("--idle", o.idle, "identity-basis sites before the first rotation");
  auto* mid = leaf(mbqc, "identity-test", "protected identity gate", cmd_mbqc_identity);
  mid->add_option("--group", o.group, "Z2xZ2 | A4 | S4");
  mid->add_option("--sites", o.n_sites, "sites measured");
  mid->add_option("--b-seed", o.b_seed, "seed of the random B blocks");
  mid->add_option("--degeneracy", o.degeneracy, "junk degeneracy");

  auto* ham = app.add_subcommand("ham", "spin-1 Hamiltonian");
  ham->require_subcommand(1);
  for (auto* s : {leaf(ham, "build", "bond operators", cmd_ham_build), leaf(ham, "h-matrix", "3x3 criterion", cmd_ham_hmatrix)}) {
    s->add_option("--lambda", o.lambda, "cubic coupling");
    s->add_option("--mu", o.mu, "quartic coupling");
  }
  leaf(ham, "verify", "projector identities and symmetries", cmd_ham_verify);

  auto* itebd = app.add_subcommand("itebd", "infinite-chain ground states");
  itebd->require_subcommand(1);
  auto* irun = leaf(itebd, "run", "single (lambda, mu) point", cmd_itebd);
  irun->add_option("--lambda", o.lambda, "cubic coupling");
  irun->add_option("--mu", o.mu, "quartic coupling");
  irun->add_option("--schedule", o.schedule, "dt:steps,...");

  auto* scan = leaf(&app, "scan", "fidelity scan over (lambda, mu)", cmd_scan);
  scan->add_option("--lambda-range", o.lambda_range, "lo:hi:points");
  scan->add_option("--mu-range", o.mu_range, "lo:hi:points");
  scan->add_option("--schedule", o.schedule, "dt:steps,...");
  scan->add_option("--plot", o.plot, "gnuplot script path");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!action) {
    err << app.help();
    return 2;
  }
  try {
    return action(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace sptkit::cli
